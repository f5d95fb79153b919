#include "optokerr/steadystate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "optokerr/constants.hpp"
#include "optokerr/error.hpp"
#include "optokerr/linearized.hpp"

namespace optokerr {

namespace {

using Poly = linalg::Polynomial<double>;

constexpr double kTrimTolerance = 1e-14;
constexpr double kRealTolerance = 1e-9;
constexpr double kRealConfirmTolerance = 1e-5;
constexpr double kDedupTolerance = 1e-8;

long double eval_ld(const Poly& p, long double x) {
  long double acc = 0.0L;
  for (Eigen::Index k = p.size() - 1; k >= 0; --k) acc = acc * x + static_cast<long double>(p[k]);
  return acc;
}

long double eval_derivative_ld(const Poly& p, long double x) {
  long double acc = 0.0L;
  for (Eigen::Index k = p.size() - 1; k >= 1; --k) acc = acc * x + static_cast<long double>(k) * p[k];
  return acc;
}

int sign_of(long double v) { return (v > 0.0L) - (v < 0.0L); }

// Newton with bisection fallback on a sign-changing bracket.
double safeguarded_newton(const Poly& p, double lo, double hi) {
  long double a = lo, b = hi;
  long double fa = eval_ld(p, a);
  if (fa == 0.0L) return lo;
  long double x = 0.5L * (a + b);
  for (int it = 0; it < 200; ++it) {
    const long double fx = eval_ld(p, x);
    if (fx == 0.0L) break;
    if (sign_of(fx) == sign_of(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    const long double dfx = eval_derivative_ld(p, x);
    long double next = dfx != 0.0L ? x - fx / dfx : 0.5L * (a + b);
    if (!(next > a && next < b)) next = 0.5L * (a + b);
    if (std::fabs(static_cast<double>(b - a)) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(static_cast<double>(next)))
      return static_cast<double>(next);
    x = next;
  }
  return static_cast<double>(x);
}

double newton_only(const Poly& p, double x0) {
  long double x = x0;
  for (int it = 0; it < 50; ++it) {
    const long double df = eval_derivative_ld(p, x);
    if (df == 0.0L) break;
    const long double step = eval_ld(p, x) / df;
    x -= step;
    if (std::fabs(static_cast<double>(step)) <= 1e-16 * std::fabs(static_cast<double>(x))) break;
  }
  return static_cast<double>(x);
}

// Real nonnegative roots of a polynomial whose argument has been scaled to
// order one. Returns an empty vector for constants.
std::vector<double> scaled_real_roots(const Poly& p) {
  std::vector<double> out;
  if (p.size() < 2) return out;
  const VectorXc z = linalg::companion_roots(p);
  double rho = 0.0;
  for (Eigen::Index k = 0; k < z.size(); ++k) rho = std::max(rho, std::abs(z[k]));
  if (rho == 0.0) rho = 1.0;

  for (Eigen::Index k = 0; k < z.size(); ++k) {
    const double im = std::abs(z[k].imag());
    if (im > kRealConfirmTolerance * rho) continue;
    if (z[k].real() < -kRealTolerance * rho) continue;
    const double x0 = std::max(z[k].real(), 0.0);

    bool bracketed = false;
    double root = x0;
    for (double h = 1e-13; h <= 1e-4 * 1.0001; h *= 10.0) {
      const double w = h * std::max(rho, x0);
      const double lo = std::max(0.0, x0 - w);
      const double hi = x0 + w;
      const long double flo = eval_ld(p, lo), fhi = eval_ld(p, hi);
      if (flo == 0.0L) {
        root = lo;
        bracketed = true;
        break;
      }
      if (sign_of(flo) != sign_of(fhi)) {
        root = safeguarded_newton(p, lo, hi);
        bracketed = true;
        break;
      }
    }
    if (!bracketed) {
      // tangent (even multiplicity) root or a complex pair near the axis
      if (im > kRealTolerance * rho) continue;
      root = std::max(newton_only(p, x0), 0.0);
    }
    out.push_back(root);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double poly_scale_at(const Poly& p, double x) {
  double s = 0.0, xk = 1.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    s += std::abs(p[k]) * xk;
    xk *= x;
  }
  return s;
}

// Self-consistency and its derivative evaluated from the parameters in long
// double, free of the rounding in the expanded coefficients.
struct DirectForm {
  long double d0, s, k2, g4, a2, sn, eps2;
  explicit DirectForm(const DerivedParams& d) {
    const SystemParams& p = d.input;
    d0 = p.detuning;
    s = d.detuning_slope();
    k2 = static_cast<long double>(p.kappa) * p.kappa;
    g4 = 4.0L * p.gain * p.gain;
    const long double a = p.kappa + 2.0L * p.gain * std::cos(static_cast<long double>(p.theta));
    a2 = a * a;
    sn = 2.0L * p.gain * std::sin(static_cast<long double>(p.theta));
    eps2 = static_cast<long double>(d.drive) * d.drive;
  }
  long double value(long double x) const {
    const long double dp = d0 + s * x;
    const long double q = k2 + dp * dp - g4;
    const long double b = dp - sn;
    return x * q * q - eps2 * (a2 + b * b);
  }
  long double derivative(long double x) const {
    const long double dp = d0 + s * x;
    const long double q = k2 + dp * dp - g4;
    return q * q + 4.0L * x * q * dp * s - 2.0L * eps2 * (dp - sn) * s;
  }
};

// Refines a root already located on the polynomial against the direct form.
// Roots without a nearby sign change are left as they are.
double polish_direct(const DirectForm& f, double x0) {
  if (x0 <= 0.0) return x0;
  for (double h = 1e-14; h <= 1e-6 * 1.0001; h *= 10.0) {
    long double a = x0 * (1.0 - h), b = x0 * (1.0 + h);
    long double fa = f.value(a);
    const long double fb = f.value(b);
    if (fa == 0.0L) return static_cast<double>(a);
    if (fb == 0.0L) return static_cast<double>(b);
    if (sign_of(fa) == sign_of(fb)) continue;
    long double x = x0;
    for (int it = 0; it < 200 && b - a > 1e-19L * x; ++it) {
      const long double fx = f.value(x);
      if (fx == 0.0L) break;
      if (sign_of(fx) == sign_of(fa)) {
        a = x;
        fa = fx;
      } else {
        b = x;
      }
      const long double dfx = f.derivative(x);
      long double next = dfx != 0.0L ? x - fx / dfx : 0.5L * (a + b);
      if (!(next > a && next < b)) next = 0.5L * (a + b);
      x = next;
    }
    return static_cast<double>(x);
  }
  return x0;
}

}  // namespace

Poly intensity_polynomial(const DerivedParams& d) {
  const SystemParams& p = d.input;
  const double s = d.detuning_slope();
  const double d0 = p.detuning;
  const double kap = p.kappa;
  const double g = p.gain;
  const double eps2 = d.drive * d.drive;
  const double cs = 2.0 * g * std::cos(p.theta);
  const double sn = 2.0 * g * std::sin(p.theta);

  Poly q(3);
  q << d0 * d0 + kap * kap - 4.0 * g * g, 2.0 * s * d0, s * s;
  Poly x(2);
  x << 0.0, 1.0;
  const Poly lhs = linalg::poly_multiply(x, linalg::poly_multiply(q, q));

  const double shifted = d0 - sn;
  Poly v(3);
  v << shifted * shifted + (kap + cs) * (kap + cs), 2.0 * s * shifted, s * s;
  return linalg::poly_add<double>(lhs, -eps2 * v);
}

double self_consistency_residual(const DerivedParams& d, double intensity) {
  const SystemParams& p = d.input;
  const double dp = p.detuning + d.detuning_slope() * intensity;
  const double den = p.kappa * p.kappa + dp * dp - 4.0 * p.gain * p.gain;
  const double a = p.kappa + 2.0 * p.gain * std::cos(p.theta);
  const double b = dp - 2.0 * p.gain * std::sin(p.theta);
  return intensity * den * den - d.drive * d.drive * (a * a + b * b);
}

SteadyState state_at_intensity(const DerivedParams& d, double intensity) {
  const SystemParams& p = d.input;
  SteadyState ss;
  ss.intensity = intensity;
  ss.detuning_eff = p.detuning + d.detuning_slope() * intensity;
  const double den = ss.detuning_eff * ss.detuning_eff + p.kappa * p.kappa - 4.0 * p.gain * p.gain;
  ss.usable = den > 0.0;
  const Complex num = Complex(p.kappa, -ss.detuning_eff) + 2.0 * p.gain * std::polar(1.0, p.theta);
  ss.amplitude = d.drive == 0.0 ? Complex(0.0, 0.0) : d.drive * num / den;
  ss.position = constants::hbar * d.g_m * intensity / (p.mass * p.omega_m * p.omega_m);
  ss.momentum = 0.0;
  ss.detuning_rp = ss.detuning_eff - 2.0 * p.eta * intensity;
  ss.detuning_kerr = ss.detuning_rp + 4.0 * p.eta * intensity;
  return ss;
}

double fixed_point_residual(const DerivedParams& d, const Complex& amplitude) {
  const SystemParams& p = d.input;
  const double dp = p.detuning + d.detuning_slope() * std::norm(amplitude);
  const Complex lhs = Complex(p.kappa, dp) * amplitude -
                      2.0 * p.gain * std::polar(1.0, p.theta) * std::conj(amplitude);
  return std::abs(lhs - d.drive);
}

BranchSet solve_branches(const DerivedParams& d) {
  BranchSet set;
  set.polynomial = intensity_polynomial(d);

  std::vector<double> roots;
  if (d.drive == 0.0) {
    roots.push_back(0.0);
  } else {
    Poly p = linalg::trim_zeros(set.polynomial);
    while (p.size() > 1 && p[0] == 0.0) {
      roots.push_back(0.0);
      p = p.tail(p.size() - 1).eval();
    }
    double sigma = 1.0;
    Poly scaled = p;
    while (p.size() > 1) {
      const auto n = static_cast<double>(p.size() - 1);
      sigma = std::pow(std::abs(p[0]) / std::abs(p[p.size() - 1]), 1.0 / n);
      scaled = linalg::poly_rescale_argument(p, sigma);
      const Poly trimmed = linalg::trim_relative(scaled, kTrimTolerance);
      if (trimmed.size() == scaled.size()) break;
      p = p.head(trimmed.size()).eval();
    }
    if (p.size() > 1)
      for (double z : scaled_real_roots(scaled)) roots.push_back(z * sigma);
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (!unique.empty() && std::abs(r - unique.back()) <= kDedupTolerance * std::max(std::abs(r), std::abs(unique.back())))
      continue;
    unique.push_back(r);
  }

  const DirectForm direct(d);
  for (double& r : unique) r = polish_direct(direct, r);

  for (std::size_t k = 0; k < unique.size(); ++k) {
    Branch b;
    b.intensity = unique[k];
    const double scale = poly_scale_at(set.polynomial, b.intensity);
    b.poly_residual = scale > 0.0 ? std::abs(linalg::poly_evaluate(set.polynomial, b.intensity)) / scale : 0.0;
    b.state = state_at_intensity(d, b.intensity);
    b.state.branch = k;
    b.fixed_point_residual = d.drive > 0.0 ? fixed_point_residual(d, b.state.amplitude) / d.drive : 0.0;
    if (b.state.usable) b.state.stable = stability(drift_matrix(d, b.state)).stable;
    set.branches.push_back(b);
  }
  return set;
}

SteadyState steady_state(const BranchSet& set, BranchSelection policy) {
  if (set.empty()) throw Error(ErrorKind::NoStableBranch, "no nonnegative intensity root");
  auto require_usable = [](const SteadyState& s) {
    if (!s.usable)
      throw Error(ErrorKind::AboveThreshold,
                  "selected branch lies above the parametric threshold (kappa^2 + Delta'^2 <= 4 G^2)");
    return s;
  };
  switch (policy.policy) {
    case BranchPolicy::LowestStable:
      for (const Branch& b : set.branches)
        if (b.state.usable && b.state.stable) return b.state;
      {
        const bool any_usable = std::any_of(set.branches.begin(), set.branches.end(),
                                            [](const Branch& b) { return b.state.usable; });
        if (!any_usable)
          throw Error(ErrorKind::AboveThreshold, "every branch lies above the parametric threshold");
      }
      throw Error(ErrorKind::NoStableBranch, "no linearly stable steady-state branch");
    case BranchPolicy::Lowest:
      return require_usable(set.branches.front().state);
    case BranchPolicy::Highest:
      return require_usable(set.branches.back().state);
    case BranchPolicy::Index:
      if (policy.index >= set.size())
        throw Error(ErrorKind::InvalidParameter, "branch index " + std::to_string(policy.index) + " out of range (" +
                                                     std::to_string(set.size()) + " branches)");
      return require_usable(set.branches[policy.index].state);
  }
  throw Error(ErrorKind::InvalidParameter, "unknown branch policy");
}

SteadyState steady_state(const DerivedParams& d, BranchSelection policy) {
  return steady_state(solve_branches(d), policy);
}

std::string BranchSet::to_csv() const {
  std::string out = "intensity,re_amplitude,im_amplitude,detuning_eff,stable\n";
  char buf[160];
  for (const Branch& b : branches) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d\n", b.intensity, b.state.amplitude.real(),
                  b.state.amplitude.imag(), b.state.detuning_eff, b.state.stable ? 1 : 0);
    out += buf;
  }
  return out;
}

BranchSelection BranchSelection::parse(const std::string& text) {
  BranchSelection s;
  if (text == "lowest_stable") {
    s.policy = BranchPolicy::LowestStable;
  } else if (text == "lowest") {
    s.policy = BranchPolicy::Lowest;
  } else if (text == "highest") {
    s.policy = BranchPolicy::Highest;
  } else if (text.rfind("index:", 0) == 0) {
    s.policy = BranchPolicy::Index;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(text.substr(6), &used);
      if (used != text.size() - 6) throw std::invalid_argument("trailing");
      s.index = v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::Config, "branch_policy: bad index in '" + text + "'");
    }
  } else {
    throw Error(ErrorKind::Config, "branch_policy: expected lowest_stable, lowest, highest or index:<n>, got '" +
                                       text + "'");
  }
  return s;
}

std::string BranchSelection::to_string() const {
  switch (policy) {
    case BranchPolicy::LowestStable: return "lowest_stable";
    case BranchPolicy::Lowest: return "lowest";
    case BranchPolicy::Highest: return "highest";
    case BranchPolicy::Index: return "index:" + std::to_string(index);
  }
  return "";
}

}  // namespace optokerr
