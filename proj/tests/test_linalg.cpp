#include <doctest.h>

#include <random>

#include "optokerr/linalg/balance.hpp"
#include "optokerr/linalg/gaussian.hpp"
#include "optokerr/linalg/lyapunov.hpp"
#include "optokerr/linalg/polynomial.hpp"
#include "optokerr/linalg/routh_hurwitz.hpp"
#include "optokerr/types.hpp"

using namespace optokerr;
using linalg::Polynomial;

namespace {

Polynomial<double> from_roots(const std::vector<Complex>& roots) {
  Eigen::VectorXcd p = Eigen::VectorXcd::Ones(1);
  for (const Complex& r : roots) {
    Eigen::VectorXcd q = Eigen::VectorXcd::Zero(p.size() + 1);
    q.tail(p.size()) += p;
    q.head(p.size()) -= r * p;
    p = q;
  }
  return p.real();
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const Polynomial<double> a = (Polynomial<double>(3) << 1.0, 2.0, 3.0).finished();
  const Polynomial<double> b = (Polynomial<double>(2) << -1.0, 1.0).finished();
  const Polynomial<double> ab = linalg::poly_multiply(a, b);
  CHECK(ab.size() == 4);
  for (double x : {-2.0, 0.3, 5.0})
    CHECK(linalg::poly_evaluate(ab, x) == doctest::Approx(linalg::poly_evaluate(a, x) * linalg::poly_evaluate(b, x)));
  CHECK(linalg::poly_derivative(a) == (Polynomial<double>(2) << 2.0, 6.0).finished());
  CHECK(linalg::poly_add(a, b) == (Polynomial<double>(3) << 0.0, 3.0, 3.0).finished());
  CHECK(linalg::trim_zeros((Polynomial<double>(3) << 1.0, 2.0, 0.0).finished()).size() == 2);
  const Polynomial<double> s = linalg::poly_rescale_argument(a, 2.0);
  CHECK(linalg::poly_evaluate(s, 1.5) == doctest::Approx(linalg::poly_evaluate(a, 3.0)));
}

TEST_CASE("companion roots") {
  const std::vector<Complex> roots = {{1.0, 0.0}, {-2.0, 0.0}, {0.5, 3.0}, {0.5, -3.0}, {1e3, 0.0}};
  const Eigen::VectorXcd r = linalg::companion_roots(from_roots(roots));
  REQUIRE(r.size() == 5);
  for (const Complex& want : roots) {
    double best = 1e300;
    for (int k = 0; k < r.size(); ++k) best = std::min(best, std::abs(r[k] - want));
    CHECK(best <= 1e-9 * std::max(1.0, std::abs(want)));
  }
  for (const Complex& z : roots) CHECK(std::abs(z) <= linalg::fujiwara_root_bound(from_roots(roots)));
}

TEST_CASE("balancing is an exact similarity") {
  Eigen::Matrix4d a;
  a << 0, 1e8, 0, 0, -1e-8, -1e-3, 1e4, 2e4, -3e-4, 0, -0.5, 1, 5e-5, 0, -1, -0.5;
  const auto b = linalg::balance(a);
  const Eigen::Matrix4d back = b.scaling.asDiagonal() * b.matrix * b.scaling.cwiseInverse().asDiagonal();
  CHECK((back - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK(b.matrix.cwiseAbs().maxCoeff() < a.cwiseAbs().maxCoeff());
  const Eigen::Vector4cd e1 = Eigen::EigenSolver<Eigen::Matrix4d>(a).eigenvalues();
  const Eigen::Vector4cd e2 = Eigen::EigenSolver<Eigen::Matrix4d>(b.matrix).eigenvalues();
  CHECK(std::abs(e1.sum() - e2.sum()) <= 1e-12 * a.cwiseAbs().maxCoeff());
}

TEST_CASE("Routh-Hurwitz") {
  SUBCASE("known polynomials") {
    CHECK(linalg::routh_hurwitz(from_roots({{-1, 0}, {-2, 0}, {-0.1, 5}, {-0.1, -5}})).stable);
    const auto r = linalg::routh_hurwitz(from_roots({{1, 0}, {-2, 0}, {0.1, 5}, {0.1, -5}}));
    CHECK_FALSE(r.stable);
    CHECK(r.sign_changes == 3);
    CHECK(linalg::routh_hurwitz(from_roots({{0, 1}, {0, -1}, {-1, 0}, {-1, 0}})).degenerate);
  }
  SUBCASE("random degree-4 polynomials") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
      std::vector<Complex> roots;
      const Complex z1(n(rng), n(rng)), z2(n(rng), n(rng));
      roots = {z1, std::conj(z1), z2, std::conj(z2)};
      const auto r = linalg::routh_hurwitz(from_roots(roots));
      const bool expect = z1.real() < 0 && z2.real() < 0;
      CHECK(r.stable == expect);
      if (!r.degenerate) CHECK(r.sign_changes == 2 * int(z1.real() > 0) + 2 * int(z2.real() > 0));
    }
  }
}

TEST_CASE("Faddeev-LeVerrier") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    Eigen::Matrix4d a;
    for (int i = 0; i < 16; ++i) a.data()[i] = n(rng);
    const Eigen::VectorXd c = linalg::characteristic_polynomial(a);
    CHECK(c[4] == 1.0);
    CHECK(c[3] == doctest::Approx(-a.trace()));
    CHECK(c[0] == doctest::Approx(a.determinant()));
    const Eigen::Vector4cd ev = Eigen::EigenSolver<Eigen::Matrix4d>(a).eigenvalues();
    for (int j = 0; j < 4; ++j) CHECK(std::abs(linalg::poly_evaluate(c, ev[j])) <= 1e-9 * (1.0 + c.cwiseAbs().sum()));
  }
}

TEST_CASE("Lyapunov solver") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Eigen::Matrix4d a;
    for (int i = 0; i < 16; ++i) a.data()[i] = n(rng);
    const double shift = Eigen::EigenSolver<Eigen::Matrix4d>(a).eigenvalues().real().maxCoeff() + 0.1;
    a -= shift * Eigen::Matrix4d::Identity();
    Eigen::Matrix4d b;
    for (int i = 0; i < 16; ++i) b.data()[i] = n(rng);
    const Eigen::Matrix4d q = b * b.transpose();
    const Eigen::Matrix4d x = linalg::solve_lyapunov_kronecker(a, q);
    CHECK(linalg::lyapunov_residual(a, x, q) <= 1e-10 * q.cwiseAbs().maxCoeff());
    CHECK((x - x.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * x.cwiseAbs().maxCoeff());
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(0.5 * (x + x.transpose())).eigenvalues().minCoeff() >= -1e-9);
  }
  SUBCASE("scalar damped oscillator") {
    Eigen::Matrix2d a;
    a << 0, 1, -1, -0.2;
    const Eigen::Matrix2d q = Eigen::Vector2d(0.0, 0.2 * 3.0).asDiagonal();
    const Eigen::Matrix2d x = linalg::solve_lyapunov_kronecker(a, q);
    CHECK(x(0, 0) == doctest::Approx(1.5));
    CHECK(x(1, 1) == doctest::Approx(1.5));
    CHECK(std::abs(x(0, 1)) <= 1e-12);
  }
}

TEST_CASE("Gaussian state functions") {
  const Eigen::Matrix4d vac = 0.5 * Eigen::Matrix4d::Identity();
  CHECK(linalg::uncertainty_margin(vac) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(linalg::seralian(vac) == doctest::Approx(0.5));
  CHECK(linalg::uncertainty_margin(Eigen::Matrix4d(0.2 * Eigen::Matrix4d::Identity())) < 0.0);
  const Eigen::Matrix4d j = linalg::symplectic_form<double>();
  CHECK((j + j.transpose()).isZero());
  CHECK((j * j + Eigen::Matrix4d::Identity()).isZero());
}
