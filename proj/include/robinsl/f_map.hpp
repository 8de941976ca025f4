#pragma once

// Closed forms for F(mu, zeta): the delta strength a for which the first
// eigenvalue of a*delta_zeta equals mu, together with dF/dzeta.

#include <cmath>
#include <limits>
#include <numbers>

#include "robinsl/errors.hpp"
#include "robinsl/potential.hpp"

namespace robinsl {

enum class Regime { positive, zero, negative };

/// Branch of a logarithmic offset for mu < 0: sqrt|mu| < k^2 gives the
/// coth/sinh branch, sqrt|mu| > k^2 the tanh/cosh branch.
enum class LogBranch { none, below_k, above_k };

struct PhaseOffsets {
  double alpha_mu = 0.0;
  double beta_mu = 0.0;
  Regime regime = Regime::positive;
  LogBranch alpha_branch = LogBranch::none;
  LogBranch beta_branch = LogBranch::none;
};

struct FPoint {
  double mu = 0.0;
  double zeta = 0.0;
  double value = 0.0;
  bool in_domain = false;
};

/// Band around nu == kappa treated as the exact middle branch.
inline constexpr double kBranchBand = 1e-12;
/// Margin kept from the tangent poles when testing the open domain.
inline constexpr double kDomainMargin = 1e-12;
/// |mu| below this is evaluated by a first-order expansion around mu = 0.
inline constexpr double kNearZeroMu = 1e-8;
inline constexpr double kRichardsonStep = 1e-6;

namespace detail {

inline void check_kappa(double kappa) {
  if (kappa < 0.0) throw InvalidArgument("negative Robin coefficient in the mu<0 closed form");
}

// 0.5*ln((nu+k)/(nu-k)) or 0.5*ln((k+nu)/(k-nu)) written as atanh of the
// smaller ratio, which is accurate for small arguments.
inline double log_offset(double nu, double kappa) {
  return nu > kappa ? std::atanh(kappa / nu) : std::atanh(nu / kappa);
}

inline double offset_angle(double s, double k, double x) {
  // theta with tan(s*(x - alpha)) = -cot(theta), i.e. theta = s*(x - alpha) + pi/2
  const double base = k > 0.0 ? std::atan(s / k) : std::numbers::pi / 2 - std::atan(k / s);
  return s * x + base;
}

}  // namespace detail

inline PhaseOffsets phase_offsets(double mu, const RobinBC& bc) {
  PhaseOffsets p;
  if (mu > 0.0) {
    const double s = std::sqrt(mu);
    p.regime = Regime::positive;
    p.alpha_mu = std::atan(bc.k0sq / s) / s;
    p.beta_mu = std::atan(bc.k1sq / s) / s;
    return p;
  }
  if (mu == 0.0) throw InvalidArgument("phase offsets are undefined at mu = 0");
  const double nu = std::sqrt(-mu);
  detail::check_kappa(bc.k0sq);
  detail::check_kappa(bc.k1sq);
  if (std::abs(nu - bc.k0sq) < kBranchBand || std::abs(nu - bc.k1sq) < kBranchBand)
    throw BranchUndefined();
  p.regime = Regime::negative;
  p.alpha_mu = detail::log_offset(nu, bc.k0sq);
  p.beta_mu = detail::log_offset(nu, bc.k1sq);
  p.alpha_branch = nu < bc.k0sq ? LogBranch::below_k : LogBranch::above_k;
  p.beta_branch = nu < bc.k1sq ? LogBranch::below_k : LogBranch::above_k;
  return p;
}

/// tanh / 1 / coth kernel: log-derivative of g(nu, kappa, .) divided by nu.
inline double G(double nu, double kappa, double x) {
  detail::check_kappa(kappa);
  if (std::abs(nu - kappa) < kBranchBand) return 1.0;
  const double arg = nu * x + detail::log_offset(nu, kappa);
  return nu > kappa ? std::tanh(arg) : 1.0 / std::tanh(arg);
}

/// cosh / exp / sinh kernel of the eigenfunction for mu < 0.
inline double g(double nu, double kappa, double x) {
  detail::check_kappa(kappa);
  if (std::abs(nu - kappa) < kBranchBand) return std::exp(nu * x);
  const double arg = nu * x + detail::log_offset(nu, kappa);
  return nu > kappa ? std::cosh(arg) : std::sinh(arg);
}

/// d/dx G(nu, kappa, x).
inline double G_prime(double nu, double kappa, double x) {
  detail::check_kappa(kappa);
  if (std::abs(nu - kappa) < kBranchBand) return 0.0;
  const double arg = nu * x + detail::log_offset(nu, kappa);
  if (nu > kappa) {
    const double c = std::cosh(arg);
    return nu / (c * c);
  }
  const double s = std::sinh(arg);
  return -nu / (s * s);
}

namespace detail {

inline double F_zero(double zeta, const RobinBC& bc) {
  return -bc.k0sq / (1.0 + bc.k0sq * zeta) - bc.k1sq / (1.0 + bc.k1sq * (1.0 - zeta));
}

inline double dF_zero(double zeta, const RobinBC& bc) {
  const double a = 1.0 + bc.k0sq * zeta;
  const double b = 1.0 + bc.k1sq * (1.0 - zeta);
  return bc.k0sq * bc.k0sq / (a * a) - bc.k1sq * bc.k1sq / (b * b);
}

// Exact closed forms away from mu = 0 (mu == 0 uses the rational form).
inline FPoint F_exact(double mu, double zeta, const RobinBC& bc) {
  FPoint p{mu, zeta, 0.0, true};
  if (mu > 0.0) {
    const double s = std::sqrt(mu);
    const double t0 = offset_angle(s, bc.k0sq, zeta);
    const double t1 = offset_angle(s, bc.k1sq, 1.0 - zeta);
    const double pi = std::numbers::pi;
    if (!(t0 > kDomainMargin && t0 < pi - kDomainMargin && t1 > kDomainMargin &&
          t1 < pi - kDomainMargin)) {
      p.in_domain = false;
      p.value = std::numeric_limits<double>::quiet_NaN();
      return p;
    }
    // tan(theta - pi/2) = -cot(theta)
    p.value = -s * (1.0 / std::tan(t0) + 1.0 / std::tan(t1));
  } else if (mu == 0.0) {
    p.value = F_zero(zeta, bc);
  } else {
    const double nu = std::sqrt(-mu);
    p.value = -nu * (G(nu, bc.k0sq, zeta) + G(nu, bc.k1sq, 1.0 - zeta));
  }
  return p;
}

inline double dF_exact(double mu, double zeta, const RobinBC& bc) {
  if (mu > 0.0) {
    const double s = std::sqrt(mu);
    const double s0 = std::sin(offset_angle(s, bc.k0sq, zeta));
    const double s1 = std::sin(offset_angle(s, bc.k1sq, 1.0 - zeta));
    // mu * (sec^2 of the left phase - sec^2 of the right phase)
    return mu * (1.0 / (s0 * s0) - 1.0 / (s1 * s1));
  }
  if (mu == 0.0) return dF_zero(zeta, bc);
  const double nu = std::sqrt(-mu);
  return -nu * (G_prime(nu, bc.k0sq, zeta) - G_prime(nu, bc.k1sq, 1.0 - zeta));
}

}  // namespace detail

/// F(mu, zeta). Outside the domain (only possible for mu > 0) the point is
/// returned with in_domain = false and a NaN value.
inline FPoint F(double mu, double zeta, const RobinBC& bc) {
  if (zeta < 0.0 || zeta > 1.0) throw InvalidArgument("zeta outside [0,1]");
  if (mu != 0.0 && std::abs(mu) < kNearZeroMu) {
    const double slope = (detail::F_exact(kRichardsonStep, zeta, bc).value -
                          detail::F_exact(-kRichardsonStep, zeta, bc).value) /
                         (2.0 * kRichardsonStep);
    return {mu, zeta, detail::F_zero(zeta, bc) + mu * slope, true};
  }
  return detail::F_exact(mu, zeta, bc);
}

inline double dF_dzeta(double mu, double zeta, const RobinBC& bc) {
  if (zeta < 0.0 || zeta > 1.0) throw InvalidArgument("zeta outside [0,1]");
  if (mu != 0.0 && std::abs(mu) < kNearZeroMu) {
    const double slope = (detail::dF_exact(kRichardsonStep, zeta, bc) -
                          detail::dF_exact(-kRichardsonStep, zeta, bc)) /
                         (2.0 * kRichardsonStep);
    return detail::dF_zero(zeta, bc) + mu * slope;
  }
  return detail::dF_exact(mu, zeta, bc);
}

}  // namespace robinsl
