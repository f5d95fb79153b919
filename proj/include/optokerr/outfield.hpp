#pragma once

#include "optokerr/linearized.hpp"
#include "optokerr/mechspectra.hpp"
#include "optokerr/types.hpp"

namespace optokerr {

/// da_out(w) = V1 xi(w) + V2 a_in(w) + V3 a_in^dag(w) at one frequency.
struct OutputTransfer {
  double omega = 0.0;
  Complex v1{0.0, 0.0};  ///< thermal-force channel
  Complex v2{0.0, 0.0};  ///< vacuum, same operator
  Complex v3{0.0, 0.0};  ///< vacuum, conjugate operator
  double residual = 0.0;  ///< max |(i w - M~) H - 1| of the resolvent used
};

/// Frequency-domain solve of the linearized system and a_out = sqrt(2 kappa) a - a_in.
/// Does not check stability.
OutputTransfer output_transfer(double omega, const DriftMatrix& m, const DerivedParams& d);

/// Transfer coefficients at +w and -w for every grid sample.
struct TransferTable {
  VectorX omega;
  std::vector<OutputTransfer> positive;
  std::vector<OutputTransfer> negative;
  double max_residual = 0.0;
};

/// Throws UnstableSystem.
TransferTable transfer_table(const VectorX& omega, const DriftMatrix& m, const DerivedParams& d);

/// Output intensity spectrum <a_out^dag a_out>(w); zero for vacuum.
SpectrumGrid intensity_spectrum(const TransferTable& t, const NoiseModel& noise);

/// Quadrature noise of the output field normalized to shot noise (vacuum = 1).
struct QuadratureSpectrum {
  VectorX omega;
  double phi = 0.0;  ///< homodyne phase; NaN for the optimized spectrum
  VectorXc c_aa;     ///< <a_out a_out>
  VectorX c_aad;     ///< <a_out a_out^dag>
  VectorX c_ada;     ///< <a_out^dag a_out>
  VectorX s_phi;     ///< S_phi, or S_opt for the optimized spectrum
  VectorX phi_opt;   ///< in [0, pi); NaN where undefined
};

QuadratureSpectrum quadrature_spectrum(const TransferTable& t, double phi, const NoiseModel& noise);
QuadratureSpectrum optimal_squeezing(const TransferTable& t, const NoiseModel& noise);

}  // namespace optokerr
