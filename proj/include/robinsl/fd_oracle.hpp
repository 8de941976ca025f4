#pragma once

// Independent check on the shooting eigensolver: a lumped-mass finite
// difference (P1) discretization of the energy form on a uniform grid refined
// with the breakpoints and atom positions of the potential.

#include <algorithm>
#include <cmath>
#include <vector>

#include "robinsl/errors.hpp"
#include "robinsl/potential.hpp"

namespace robinsl {

namespace detail {

// Symmetric tridiagonal matrix: diag[0..n], off[i] couples i and i+1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

// Number of eigenvalues strictly below sigma (Sturm count via LDL^T pivots).
inline int sturm_count(const Tridiagonal& t, double sigma) {
  int count = 0;
  double pivot = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double coupling = (i == 0) ? 0.0 : t.off[i - 1] * t.off[i - 1] / pivot;
    pivot = t.diag[i] - sigma - coupling;
    if (pivot == 0.0) pivot = -1e-300;
    if (pivot < 0.0) ++count;
  }
  return count;
}

// Solves (T - sigma I) x = rhs with the Thomas algorithm.
inline std::vector<double> solve_shifted(const Tridiagonal& t, double sigma,
                                         const std::vector<double>& rhs) {
  const std::size_t n = t.diag.size();
  std::vector<double> c(n, 0.0);
  std::vector<double> x(n, 0.0);
  double denom = t.diag[0] - sigma;
  c[0] = (n > 1) ? t.off[0] / denom : 0.0;
  x[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = t.diag[i] - sigma - t.off[i - 1] * c[i - 1];
    if (i + 1 < n) c[i] = t.off[i] / denom;
    x[i] = (rhs[i] - t.off[i - 1] * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

inline double rayleigh(const Tridiagonal& t, const std::vector<double>& v) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double av = t.diag[i] * v[i];
    if (i > 0) av += t.off[i - 1] * v[i - 1];
    if (i + 1 < v.size()) av += t.off[i] * v[i + 1];
    num += v[i] * av;
    den += v[i] * v[i];
  }
  return num / den;
}

// Integral of the regular part of q over [a, b].
inline double integrate_segments(const Potential& q, double a, double b) {
  double sum = 0.0;
  for (const Segment& s : q.segments()) {
    const double l = std::max(a, s.left);
    const double r = std::min(b, s.right);
    if (r > l) sum += s.value * (r - l);
  }
  return sum;
}

// Grid nodes: n uniform intervals plus every breakpoint and atom position;
// uniform nodes closer than h/4 to an inserted node are dropped.
inline std::vector<double> fd_nodes(const Potential& q, int n) {
  const double h = 1.0 / n;
  std::vector<double> pinned = q.breakpoints();
  for (const DeltaAtom& a : q.atoms()) pinned.push_back(a.position);
  std::sort(pinned.begin(), pinned.end());
  std::vector<double> nodes = pinned;
  for (int i = 1; i < n; ++i) {
    const double x = static_cast<double>(i) * h;
    const auto it = std::lower_bound(pinned.begin(), pinned.end(), x);
    const double gap_right = it == pinned.end() ? 1.0 : *it - x;
    const double gap_left = it == pinned.begin() ? 1.0 : x - *(it - 1);
    if (std::min(gap_left, gap_right) > 0.25 * h) nodes.push_back(x);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [](double a, double b) { return b - a < kAtomMergeDistance; }),
              nodes.end());
  return nodes;
}

// Assembles W^{-1/2} K W^{-1/2} where K is the P1 stiffness + lumped
// potential + boundary matrix and W the lumped mass.
inline Tridiagonal assemble_fd(const Potential& q, const RobinBC& bc, int n) {
  const std::vector<double> x = fd_nodes(q, n);
  const std::size_t m = x.size();
  std::vector<double> k(m, 0.0);
  std::vector<double> w(m, 0.0);
  std::vector<double> off(m - 1, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double h = x[i + 1] - x[i];
    k[i] += 1.0 / h;
    k[i + 1] += 1.0 / h;
    off[i] = -1.0 / h;
    w[i] += 0.5 * h;
    w[i + 1] += 0.5 * h;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double a = i == 0 ? 0.0 : 0.5 * (x[i - 1] + x[i]);
    const double b = i + 1 == m ? 1.0 : 0.5 * (x[i] + x[i + 1]);
    k[i] += integrate_segments(q, a, b);
  }
  k.front() += bc.k0sq;
  k.back() += bc.k1sq;
  for (const DeltaAtom& a : q.atoms()) {
    const auto it = std::min_element(x.begin(), x.end(), [&](double u, double v) {
      return std::abs(u - a.position) < std::abs(v - a.position);
    });
    k[static_cast<std::size_t>(it - x.begin())] += a.weight;
  }
  Tridiagonal t;
  t.diag.resize(m);
  t.off.resize(m - 1);
  for (std::size_t i = 0; i < m; ++i) t.diag[i] = k[i] / w[i];
  for (std::size_t i = 0; i + 1 < m; ++i) t.off[i] = off[i] / std::sqrt(w[i] * w[i + 1]);
  return t;
}

}  // namespace detail

inline constexpr int kFdMaxIterations = 10000;

/// Smallest eigenvalue of the finite difference problem on n uniform
/// intervals plus the potential's breakpoints and atoms.
///
/// A Sturm-count bisection from the Gershgorin floor locates a shift just
/// below the lowest eigenvalue; inverse iteration with that shift then runs
/// until successive Rayleigh quotients agree to 1e-12 (relative for large
/// magnitudes) plus the roundoff floor of the matrix norm.
inline double fd_oracle_lambda1(const Potential& q, const RobinBC& bc, int n) {
  if (n < 100) throw InvalidArgument("fd oracle needs n >= 100");
  const detail::Tridiagonal t = detail::assemble_fd(q, bc, n);
  const std::size_t m = t.diag.size();

  double lo = t.diag[0] - std::abs(t.off[0]);
  double hi = t.diag[0] + std::abs(t.off[0]);
  for (std::size_t i = 1; i < m; ++i) {
    const double r = std::abs(t.off[i - 1]) + (i + 1 < m ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  lo -= 1.0;
  // shrink [lo, hi] around the lowest eigenvalue
  const double width_goal = 1e-6 * std::max(1.0, std::abs(lo));
  while (hi - lo > width_goal) {
    const double mid = 0.5 * (lo + hi);
    if (detail::sturm_count(t, mid) == 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double shift = lo - width_goal;
  // the Rayleigh quotient carries roundoff of order eps * ||T||
  const double noise = 1e-14 * std::max(std::abs(hi), std::abs(lo));

  std::vector<double> v(m, 1.0);
  double previous = detail::rayleigh(t, v);
  for (int it = 0; it < kFdMaxIterations; ++it) {
    v = detail::solve_shifted(t, shift, v);
    double norm = 0.0;
    for (double e : v) norm = std::max(norm, std::abs(e));
    for (double& e : v) e /= norm;
    const double current = detail::rayleigh(t, v);
    if (std::abs(current - previous) < 1e-12 * std::max(1.0, std::abs(current)) + noise)
      return current;
    previous = current;
  }
  throw NoConvergence("fd oracle inverse iteration did not converge");
}

}  // namespace robinsl
