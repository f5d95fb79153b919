#include <doctest.h>

#include <random>

#include "draws.hpp"
#include "fixtures.hpp"
#include "optokerr/entangle.hpp"
#include "optokerr/error.hpp"
#include "optokerr/linalg/gaussian.hpp"
#include "oracles.hpp"

using namespace optokerr;

namespace {

CovarianceMatrix covariance(const DerivedParams& d, const SteadyState& ss) {
  return solve_lyapunov(nondimensionalize(drift_matrix(d, ss), d));
}

CovarianceMatrix covariance(const SystemParams& p) {
  const DerivedParams d = derive_params(p);
  return covariance(d, steady_state(d));
}

Matrix4 two_mode_squeezed(double r) {
  const double c = 0.5 * std::cosh(2.0 * r), s = 0.5 * std::sinh(2.0 * r);
  Matrix4 v = Matrix4::Zero();
  v.diagonal().setConstant(c);
  v(0, 2) = v(2, 0) = s;
  v(1, 3) = v(3, 1) = -s;
  return v;
}

Eigen::Matrix2d rotation(double a) {
  return (Eigen::Matrix2d() << std::cos(a), -std::sin(a), std::sin(a), std::cos(a)).finished();
}

}  // namespace

TEST_CASE("dimensionless system") {
  const DerivedParams d = derive_params(fixtures::fig9(0.01, 6e6, 1.0));
  const DriftMatrix m = drift_matrix(d, steady_state(d));
  const DimensionlessSystem s = nondimensionalize(m, d);
  const Vector4c a = Eigen::EigenSolver<Matrix4>(s.drift / s.time_scale).eigenvalues();
  const StabilityReport r = stability(m);
  for (int k = 0; k < 4; ++k) {
    double best = 1e300;
    for (int j = 0; j < 4; ++j) best = std::min(best, std::abs(a[j] * s.time_scale - r.eigenvalues[k]));
    CHECK(best <= 1e-10 * std::abs(r.eigenvalues[k]));
  }
  CHECK(s.diffusion.isDiagonal());
  CHECK(s.diffusion(1, 1) == doctest::Approx(d.gamma_m * (2.0 * d.nbar + 1.0)));
  CHECK(s.diffusion(2, 2) == d.input.kappa);

  auto cold = fixtures::fig9(0.0, 0.0, 1.0);
  cold.temperature = 0.0;
  const DerivedParams dc = derive_params(cold).with_coupling(0.0);
  const DimensionlessSystem sc = nondimensionalize(drift_matrix(dc, steady_state(dc)), dc);
  CHECK(sc.diffusion.isApprox(Vector4(0.0, dc.gamma_m, cold.kappa, cold.kappa).asDiagonal().toDenseMatrix()));
  CHECK(sc.drift.topLeftCorner<2, 2>().isApprox(
      (Eigen::Matrix2d() << 0.0, cold.omega_m, -cold.omega_m, -dc.gamma_m).finished(), 1e-14));
}

TEST_CASE("vacuum field without coupling") {
  auto p = fixtures::fig9(0.0, 0.0, 1.0);
  p.temperature = 0.0;
  const DerivedParams d = derive_params(p).with_coupling(0.0);
  const CovarianceMatrix cm = covariance(d, steady_state(d));
  CHECK((cm.field() - 0.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(cm.correlations().cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((cm.mirror() - 0.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-9);
  const EntanglementResult e = log_negativity(cm);
  CHECK(e.log_negativity == 0.0);
}

TEST_CASE("uncoupled system is separable at any temperature") {
  const DerivedParams d = derive_params(fixtures::fig9(0.01, 6e6, 1.0)).with_coupling(0.0);
  const CovarianceMatrix cm = covariance(d, steady_state(d));
  CHECK(cm.correlations().cwiseAbs().maxCoeff() == 0.0);
  CHECK(log_negativity(cm).log_negativity == 0.0);
}

TEST_CASE("Gaussian state oracles") {
  const EntanglementResult vac = log_negativity(Matrix4(0.5 * Matrix4::Identity()));
  CHECK(vac.eta_minus == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(vac.log_negativity == 0.0);
  for (double r : {0.05, 0.3, 1.0, 2.0}) {
    const EntanglementResult e = log_negativity(two_mode_squeezed(r));
    CHECK(e.eta_minus == doctest::Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-9));
    CHECK(e.log_negativity == doctest::Approx(2.0 * r).epsilon(1e-9));
    CHECK(e.seralian == doctest::Approx(std::cosh(4.0 * r) / 2.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(log_negativity(Matrix4(0.1 * Matrix4::Identity())), Error);
  Matrix4 bad = Matrix4::Identity();
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(log_negativity(bad), Error);
  CHECK(is_physical(two_mode_squeezed(1.0)));
  CHECK_FALSE(is_physical(Matrix4(0.4 * Matrix4::Identity())));
}

TEST_CASE("negativity is invariant under local rotations") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 6.283185307179586);
  for (const auto& p : {fixtures::fig9(0.0, 0.0, 0.88), fixtures::fig9(0.0, 6e6, 1.0), fixtures::fig9(0.01, 1e7, 0.19)}) {
    const CovarianceMatrix cm = covariance(p);
    const double base = log_negativity(cm).log_negativity;
    CHECK(base > 0.0);
    for (int k = 0; k < 10; ++k) {
      Matrix4 s = Matrix4::Identity();
      s.bottomRightCorner<2, 2>() = rotation(u(rng));
      s.topLeftCorner<2, 2>() = rotation(u(rng));
      const Matrix4 rotated = s * cm.v * s.transpose();
      CHECK(std::abs(log_negativity(rotated).log_negativity - base) <= 1e-9);
    }
  }
}

TEST_CASE("frozen negativities") {
  const EntanglementResult bare = log_negativity(covariance(fixtures::fig9(0.0, 0.0, 0.88)));
  CHECK(bare.log_negativity == doctest::Approx(0.14730983331029848).epsilon(1e-7));
  CHECK(bare.eta_minus == doctest::Approx(0.43151327080896727).epsilon(1e-7));
  const EntanglementResult g = log_negativity(covariance(fixtures::fig9(0.01, 1e7, 0.19)));
  CHECK(g.log_negativity == doctest::Approx(0.13237722367684704).epsilon(1e-7));
}

TEST_CASE("covariance matrix properties on the entanglement presets") {
  for (double x : {0.2, 0.5, 0.88, 1.2, 1.8})
    for (const auto& p : {fixtures::fig9(0.0, 0.0, x), fixtures::fig9(0.01, 0.0, x), fixtures::fig9(0.01, 1e7, x)}) {
      const DerivedParams d = derive_params(p);
      SteadyState ss;
      try {
        ss = steady_state(d);
      } catch (const Error&) {
        continue;
      }
      const CovarianceMatrix cm = covariance(d, ss);
      CHECK(cm.relative_residual() <= 1e-10);
      CHECK((cm.v - cm.v.transpose()).cwiseAbs().maxCoeff() == 0.0);
      CHECK(is_physical(cm.v));
      CHECK(Eigen::SelfAdjointEigenSolver<Matrix4>(cm.v).eigenvalues().minCoeff() > 0.0);
      const EntanglementResult e = log_negativity(cm);
      CHECK(e.eta_minus > 0.0);
      CHECK(e.log_negativity >= 0.0);
      CHECK((e.log_negativity > 0.0) == (e.eta_minus < 0.5));
    }
}

TEST_CASE("unstable drift is rejected") {
  auto p = fixtures::fig4(0.01, 1e6);
  p.detuning = -p.omega_m;
  const DerivedParams d = derive_params(p);
  const SteadyState ss = solve_branches(d).branches.front().state;
  CHECK_THROWS_AS(covariance(d, ss), Error);
}

TEST_CASE("Lyapunov solution equals the relaxed covariance on random stable draws") {
  std::mt19937_64 rng(99);
  int done = 0;
  while (done < 20) {
    const auto [d, ss] = draws::random_state(rng);
    const DriftMatrix m = drift_matrix(d, ss);
    if (!stability(m).stable) continue;
    const DimensionlessSystem s = nondimensionalize(m, d);
    const CovarianceMatrix cm = solve_lyapunov(s);
    const Matrix4 a = s.drift / s.time_scale, q = s.diffusion / s.time_scale;
    const double lam = std::abs(Eigen::EigenSolver<Matrix4>(a).eigenvalues().real().maxCoeff());
    const Matrix4 relaxed = oracle::relaxed_covariance(a, q, 20.0 / lam);
    CHECK((relaxed - cm.v).cwiseAbs().maxCoeff() <= 1e-6);
    ++done;
  }
}
