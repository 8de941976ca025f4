#pragma once

// Infima and suprema of the first eigenvalue over the classes of potentials
// with integral +1 / -1, together with the potentials attaining them.
//
// Every report carries two independent numbers: `value`, obtained from the
// closed-form characterization (transcendental root or explicit formula),
// and `cross_check`, the first eigenvalue of q_star recomputed by the
// shooting eigensolver.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "robinsl/eigensolver.hpp"
#include "robinsl/errors.hpp"
#include "robinsl/potential.hpp"

namespace robinsl {

enum class ExtremumKind { M1plus, M1minus, m1plus, m1minus };

inline const char* to_string(ExtremumKind k) {
  switch (k) {
    case ExtremumKind::M1plus: return "M1plus";
    case ExtremumKind::M1minus: return "M1minus";
    case ExtremumKind::m1plus: return "m1plus";
    case ExtremumKind::m1minus: return "m1minus";
  }
  return "?";
}

struct ExtremumReport {
  ExtremumKind kind = ExtremumKind::M1plus;
  double value = 0.0;
  Potential q_star;
  std::string branch;
  double cross_check = 0.0;
};

/// Root tolerance for all transcendental equations.
inline constexpr double kRootTol = 1e-12;
/// Eigensolver tolerance used for cross checks.
inline constexpr double kCrossCheckTol = 1e-12;

/// sqrt(x) cot sqrt(x) for x > 0, 1 at 0, sqrt|x| coth sqrt|x| for x < 0.
inline double psi(double x) {
  if (x == 0.0) return 1.0;
  if (x < 0.0) {
    const double t = std::sqrt(-x);
    return t / std::tanh(t);
  }
  const double s = std::sqrt(x);
  const double k = std::round(s / std::numbers::pi);
  if (k >= 1.0) {
    const double pole = k * std::numbers::pi;
    if (std::abs(x - pole * pole) < 1e-12) throw PolePoint(x);
  }
  return s / std::tan(s);
}

namespace detail {

// Shrinks [lo, hi] around a sign change of f (f(lo) < 0 < f(hi)).
template <class Fn>
double bisect_root(Fn&& f, double lo, double hi, double tol) {
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Solution of -y'' = lambda y with y(0) = 1, y'(0) = a, evaluated in closed
// form at x = length. Returns whether y > 0 on [0, length] and the sign of
// y'(length) + b*y(length).
inline bool free_below_first(double lambda, double a, double b, double length) {
  if (lambda > 0.0) {
    const double s = std::sqrt(lambda);
    // y = R cos(s x - phi), phi in (-pi/2, pi/2)
    const double phi = std::atan(a / s);
    if (!(s * length - phi < std::numbers::pi / 2)) return false;
    const double c = std::cos(s * length);
    const double sn = std::sin(s * length);
    const double y = c + a * sn / s;
    const double yp = -s * sn + a * c;
    return yp + b * y > 0.0;
  }
  if (lambda == 0.0) {
    const double y = 1.0 + a * length;
    return y > 0.0 && a + b * y > 0.0;
  }
  const double t = std::sqrt(-lambda);
  // multiply through by 2 exp(-t L) to stay finite
  const double e = std::exp(-2.0 * t * length);
  const double y = (1.0 + e) + a * (1.0 - e) / t;
  const double yp = t * (1.0 - e) + a * (1.0 + e);
  return y > 0.0 && yp + b * y > 0.0;
}

}  // namespace detail

/// First eigenvalue of -y'' = lambda y on [0, length] with
/// y'(0) - a y(0) = 0, y'(length) + b y(length) = 0, from the closed-form
/// solution (no numerical propagation).
inline double robin_free_lambda1(double a, double b, double length = 1.0, double tol = kRootTol) {
  if (!(length > 0.0)) throw InvalidArgument("interval length must be positive");
  double lo = -1.0;
  while (!detail::free_below_first(lo, a, b, length)) lo *= 2.0;
  double hi = lo + 1.0;
  double step = 1.0;
  while (detail::free_below_first(hi, a, b, length)) {
    lo = hi;
    step *= 2.0;
    hi = lo + step;
  }
  return detail::bisect_root(
      [&](double lam) { return detail::free_below_first(lam, a, b, length) ? -1.0 : 1.0; }, lo,
      hi, tol);
}

inline ExtremumReport M1_plus(const RobinBC& bc, double tol = kRootTol) {
  // 1 - alpha_mu - beta_mu - 1/mu is increasing in mu > 0
  const auto h = [&](double mu) {
    const double s = std::sqrt(mu);
    return 1.0 - std::atan(bc.k0sq / s) / s - std::atan(bc.k1sq / s) / s - 1.0 / mu;
  };
  double lo = 1.0;
  while (h(lo) >= 0.0) lo *= 0.5;
  double hi = 1.0;
  while (h(hi) <= 0.0) hi *= 2.0;
  const double mu = detail::bisect_root(h, lo, hi, tol);
  const double s = std::sqrt(mu);
  const double alpha = std::atan(bc.k0sq / s) / s;
  const double beta = std::atan(bc.k1sq / s) / s;

  ExtremumReport r;
  r.kind = ExtremumKind::M1plus;
  r.value = mu;
  r.q_star = Potential({{alpha, 1.0 - beta, mu}}, {});
  r.branch = "M1plus/plateau [alpha,1-beta]";
  r.cross_check = lambda1_value(r.q_star, bc, kCrossCheckTol);
  return r;
}

inline ExtremumReport M1_minus(const RobinBC& bc, double tol = kRootTol) {
  const double k0 = bc.k0sq;
  const double k1 = bc.k1sq;
  ExtremumReport r;
  r.kind = ExtremumKind::M1minus;
  std::vector<DeltaAtom> atoms;
  std::vector<Segment> segments;
  if (k0 + k1 <= 1.0) {
    r.value = k0 + k1 - 1.0;
    r.branch = "M1minus/case k0sq+k1sq<=1";
    if (k0 != 0.0) atoms.push_back({0.0, -k0});
    if (k1 != 0.0) atoms.push_back({1.0, -k1});
    if (k0 + k1 < 1.0) segments.push_back({0.0, 1.0, -(1.0 - k0 - k1)});
  } else if (k1 - k0 <= 1.0) {
    const double c = 0.5 * (k0 + k1 - 1.0);
    r.value = robin_free_lambda1(c, c, 1.0, tol);
    r.branch = "M1minus/case k0sq+k1sq>=1,k1sq-k0sq<=1";
    const double w0 = -0.5 * (1.0 + k0 - k1);
    const double w1 = -0.5 * (1.0 - k0 + k1);
    if (w0 != 0.0) atoms.push_back({0.0, w0});
    if (w1 != 0.0) atoms.push_back({1.0, w1});
  } else {
    r.value = robin_free_lambda1(k0, k1 - 1.0, 1.0, tol);
    r.branch = "M1minus/case k1sq-k0sq>=1";
    atoms.push_back({1.0, -1.0});
  }
  r.q_star = Potential(std::move(segments), std::move(atoms));
  r.cross_check = lambda1_value(r.q_star, bc, kCrossCheckTol);
  return r;
}

/// Residual of the endpoint-delta secular equation for +delta_1:
/// (lambda - k0sq*k1sq - k0sq) - (k0sq + k1sq + 1) * psi(lambda).
inline double m1_plus_secular(double lambda, const RobinBC& bc) {
  return (lambda - bc.k0sq * bc.k1sq - bc.k0sq) - (bc.k0sq + bc.k1sq + 1.0) * psi(lambda);
}

inline ExtremumReport m1_plus(const RobinBC& bc, double tol = kRootTol) {
  // the residual increases from negative at 0+ to +inf at pi^2-
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double lambda = detail::bisect_root(
      [&](double x) { return x <= 0.0 ? -1.0 : m1_plus_secular(x, bc); }, 0.0, pi2 - 1e-9, tol);
  ExtremumReport r;
  r.kind = ExtremumKind::m1plus;
  r.value = lambda;
  r.q_star = Potential::atom(1.0, 1.0);
  r.branch = "m1plus/delta_1";
  r.cross_check = lambda1_value(r.q_star, bc, kCrossCheckTol);
  return r;
}

/// Smallest eigenvalue of -y'' = lambda y on [0, zeta] with
/// y'(0) - k0sq y(0) = 0 and 2y'(zeta) - y(zeta) = 0.
inline double mu0(double zeta, const RobinBC& bc, double tol = kRootTol) {
  if (!(zeta > 0.0 && zeta <= 1.0)) throw InvalidArgument("mu0 needs zeta in (0,1]");
  return lambda1_free_interval(zeta, bc.k0sq, -0.5, tol, 1e-14);
}

/// Smallest eigenvalue of -y'' = lambda y on [zeta, 1] with
/// 2y'(zeta) + y(zeta) = 0 and y'(1) + k1sq y(1) = 0.
inline double mu1(double zeta, const RobinBC& bc, double tol = kRootTol) {
  if (!(zeta >= 0.0 && zeta < 1.0)) throw InvalidArgument("mu1 needs zeta in [0,1)");
  return lambda1_free_interval(1.0 - zeta, -0.5, bc.k1sq, tol, 1e-14);
}

inline constexpr double kZetaBracketMargin = 1e-6;

inline ExtremumReport m1_minus(const RobinBC& bc, double tol = kRootTol) {
  const double k0 = bc.k0sq;
  const double k1 = bc.k1sq;
  ExtremumReport r;
  r.kind = ExtremumKind::m1minus;
  const bool both_half = std::abs(k0 - 0.5) < 1e-12 && std::abs(k1 - 0.5) < 1e-12;
  if (both_half) {
    r.value = -0.25;
    r.branch = "m1minus/interior k0sq=k1sq=1/2 (zeta=1/2)";
    r.q_star = Potential::atom(0.5, -1.0);
  } else if (k0 > 0.5) {
    // mu0 decreases from +inf, mu1 increases (or is constant): single crossing
    const auto diff = [&](double z) { return mu1(z, bc, tol) - mu0(z, bc, tol); };
    double lo = kZetaBracketMargin;
    double hi = 1.0 - kZetaBracketMargin;
    if (!(diff(lo) < 0.0 && diff(hi) > 0.0)) throw NoCrossing();
    const double zeta = detail::bisect_root(diff, lo, hi, tol);
    r.value = mu0(zeta, bc, tol);
    if (r.value < -k0 * k0 - 1e-9) throw NoCrossing();
    r.branch = "m1minus/interior mu0(zeta)=mu1(zeta)";
    r.q_star = Potential::atom(zeta, -1.0);
  } else {
    r.value = robin_free_lambda1(k0 - 1.0, k1, 1.0, tol);
    r.branch = "m1minus/delta_0";
    r.q_star = Potential::atom(0.0, -1.0);
  }
  r.cross_check = lambda1_value(r.q_star, bc, kCrossCheckTol);
  return r;
}

inline ExtremumReport compute_extremum(ExtremumKind kind, const RobinBC& bc,
                                       double tol = kRootTol) {
  switch (kind) {
    case ExtremumKind::M1plus: return M1_plus(bc, tol);
    case ExtremumKind::M1minus: return M1_minus(bc, tol);
    case ExtremumKind::m1plus: return m1_plus(bc, tol);
    case ExtremumKind::m1minus: return m1_minus(bc, tol);
  }
  throw InvalidArgument("unknown extremum kind");
}

inline std::array<ExtremumReport, 4> compute_all_extrema(const RobinBC& bc,
                                                          double tol = kRootTol) {
  return {M1_plus(bc, tol), M1_minus(bc, tol), m1_plus(bc, tol), m1_minus(bc, tol)};
}

}  // namespace robinsl
