#pragma once

// First eigenvalue of -y'' + (q - lambda) y = 0 with Robin conditions,
// computed by exact piecewise propagation of (y, y') and bisection on the
// "solution is still positive and has not yet bent over" predicate.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "robinsl/errors.hpp"
#include "robinsl/potential.hpp"

namespace robinsl {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::size_t kDefaultEigenGrid = 2001;
inline constexpr int kMaxBisection = 200;

struct ShootState {
  double x = 0.0;
  double y = 1.0;
  double yp = 0.0;
  int zero_count = 0;  // sign changes of y on (0, x]
};

struct ShootResult {
  double residual = 0.0;
  int zero_count = 0;
};

struct Sample {
  double x = 0.0;
  double y = 0.0;
};

struct EigenResult {
  double lambda1 = 0.0;
  std::vector<Sample> eigenfunction;  // normalized to max y = 1
  double residual = 0.0;              // y'(1) + k1sq*y(1) at lambda1, max-norm scaled
  double bracket_width = 0.0;
};

/// Advances (y, y') over [x, x+length] for y'' = (qval - lambda) y using the
/// exact fundamental solution. Zeros on the half-open interval (x, x+length]
/// are added to zero_count.
inline ShootState propagate_interval(ShootState s, double length, double qval, double lambda) {
  if (length < 0.0) throw InvalidArgument("negative propagation length");
  if (length == 0.0) return s;
  const double d = lambda - qval;
  const double y0 = s.y;
  const double yp0 = s.yp;
  if (d > 0.0) {
    const double w = std::sqrt(d);
    const double c = std::cos(w * length);
    const double sn = std::sin(w * length);
    s.y = y0 * c + yp0 * sn / w;
    s.yp = -y0 * w * sn + yp0 * c;
    // y(t) = A sin(w t + theta), zeros where w t + theta = k pi
    const double theta = std::atan2(y0, yp0 / w);
    const double pi = std::numbers::pi;
    s.zero_count += static_cast<int>(std::floor((theta + w * length) / pi) - std::floor(theta / pi));
  } else {
    if (d == 0.0) {
      s.y = y0 + yp0 * length;
    } else {
      const double k = std::sqrt(-d);
      const double ch = std::cosh(k * length);
      const double sh = std::sinh(k * length);
      s.y = y0 * ch + yp0 * sh / k;
      s.yp = y0 * k * sh + yp0 * ch;
    }
    // at most one zero for exponential/linear solutions
    if (y0 != 0.0 && (s.y == 0.0 || std::signbit(s.y) != std::signbit(y0))) ++s.zero_count;
  }
  s.x += length;
  return s;
}

inline ShootState apply_delta(ShootState s, double weight) {
  s.yp += weight * s.y;
  return s;
}

namespace detail {

// Flattened potential: constant-q pieces with the atom weight that acts at
// each piece's right end. atom_at_start carries an atom at x = 0.
struct Piece {
  double length;
  double qval;
  double atom_after;
};

struct Layout {
  double atom_at_start = 0.0;
  std::vector<Piece> pieces;
  std::vector<double> knots;  // knots[i] is the left end of pieces[i]; back() is the right end
};

inline Layout make_layout(const Potential& q) {
  Layout out;
  const std::vector<double> pts = q.breakpoints();
  out.knots = pts;
  const auto atom_weight_at = [&](double x) {
    double w = 0.0;
    for (const DeltaAtom& a : q.atoms())
      if (a.position == x) w += a.weight;
    return w;
  };
  out.atom_at_start = atom_weight_at(0.0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double mid = 0.5 * (pts[i] + pts[i + 1]);
    out.pieces.push_back({pts[i + 1] - pts[i], q.value_at(mid), atom_weight_at(pts[i + 1])});
  }
  return out;
}

inline Layout free_layout(double length) {
  Layout out;
  out.pieces.push_back({length, 0.0, 0.0});
  out.knots = {0.0, length};
  return out;
}

// Largest exponent growth allowed inside one propagation step.
inline constexpr double kMaxGrowth = 30.0;

inline ShootState rescale(ShootState s, double* log_scale = nullptr) {
  const double m = std::max(std::abs(s.y), std::abs(s.yp));
  if (m > 0.0 && std::isfinite(m)) {
    s.y /= m;
    s.yp /= m;
    if (log_scale) *log_scale += std::log(m);
  }
  return s;
}

// Propagates through a constant piece, splitting it so that exponential
// growth per step stays bounded, rescaling between steps.
inline ShootState propagate_piece(ShootState s, double length, double qval, double lambda,
                                  double* log_scale = nullptr) {
  const double d = qval - lambda;
  int steps = 1;
  if (d > 0.0) {
    const double growth = std::sqrt(d) * length;
    steps = std::max(1, static_cast<int>(std::ceil(growth / kMaxGrowth)));
  }
  const double h = length / steps;
  for (int i = 0; i < steps; ++i) {
    s = propagate_interval(s, h, qval, lambda);
    s = rescale(s, log_scale);
  }
  return s;
}

inline ShootResult shoot_layout(const Layout& layout, double k0, double k1, double lambda) {
  ShootState s{0.0, 1.0, k0, 0};
  s = apply_delta(s, layout.atom_at_start);
  for (const Piece& p : layout.pieces) {
    s = propagate_piece(s, p.length, p.qval, lambda);
    s = apply_delta(s, p.atom_after);
    s = rescale(s);
    if (!std::isfinite(s.y) || !std::isfinite(s.yp)) throw NonFiniteState(s.x);
  }
  return {s.yp + k1 * s.y, s.zero_count};
}

inline bool below_first(const ShootResult& r) { return r.zero_count == 0 && r.residual > 0.0; }

struct Bracket {
  double lo;
  double hi;
};

// Bisection on the monotone predicate below(lambda) <=> lambda < lambda_1.
// Stops once hi - lo <= tol + rel_tol*max(|lo|,|hi|); a bracket that can no
// longer be halved in floating point raises ToleranceNotReached.
template <class Below>
Bracket bisect_first(Below&& below, double start_floor, double tol, double rel_tol = 0.0) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  double lo = std::min(start_floor, 0.0) - 1.0;
  while (!below(lo)) {
    lo *= 2.0;
    if (lo < -1e300) throw NoConvergence("no lower bracket for the first eigenvalue");
  }
  double step = 1.0;
  double hi = lo + step;
  while (below(hi)) {
    lo = hi;
    step *= 2.0;
    hi = lo + step;
    if (hi > 1e300) throw NoConvergence("no upper bracket for the first eigenvalue");
  }
  const auto wide = [&] {
    return hi - lo > tol + rel_tol * std::max(std::abs(lo), std::abs(hi));
  };
  for (int it = 0; wide(); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (it >= kMaxBisection || mid <= lo || mid >= hi) throw ToleranceNotReached(hi - lo);
    (below(mid) ? lo : hi) = mid;
  }
  return {lo, hi};
}

inline double absolute_mass(const Potential& q) {
  double m = 0.0;
  for (const Segment& s : q.segments()) m += std::abs(s.value) * s.length();
  for (const DeltaAtom& a : q.atoms()) m += std::abs(a.weight);
  return m;
}

inline Bracket first_eigen_bracket(const Layout& layout, double k0, double k1, double floor_hint,
                                   double tol, double rel_tol = 0.0) {
  return bisect_first(
      [&](double lam) { return below_first(shoot_layout(layout, k0, k1, lam)); }, floor_hint, tol,
      rel_tol);
}

// Samples the solution at the given sorted abscissae (must lie inside the
// layout range), normalized so that the largest sample is 1.
inline std::vector<Sample> sample_solution(const Layout& layout, double k0, double lambda,
                                           std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> log_mag(xs.size());
  std::vector<double> sign(xs.size());

  ShootState s{0.0, 1.0, k0, 0};
  double log_scale = 0.0;
  std::size_t next = 0;
  const auto record = [&](const ShootState& st) {
    log_mag[next] = (st.y == 0.0) ? -std::numeric_limits<double>::infinity()
                                  : std::log(std::abs(st.y)) + log_scale;
    sign[next] = st.y < 0.0 ? -1.0 : 1.0;
    ++next;
  };
  while (next < xs.size() && xs[next] <= 0.0) record(s);
  s = apply_delta(s, layout.atom_at_start);
  for (std::size_t i = 0; i < layout.pieces.size(); ++i) {
    const Piece& p = layout.pieces[i];
    const double end = layout.knots[i + 1];
    while (next < xs.size() && xs[next] <= end) {
      s = propagate_piece(s, std::max(0.0, xs[next] - s.x), p.qval, lambda, &log_scale);
      s.x = xs[next];
      record(s);
    }
    s = propagate_piece(s, std::max(0.0, end - s.x), p.qval, lambda, &log_scale);
    s.x = end;
    s = apply_delta(s, p.atom_after);
    s = rescale(s, &log_scale);
  }
  const double top = *std::max_element(log_mag.begin(), log_mag.end());
  std::vector<Sample> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out[i] = {xs[i], sign[i] * std::exp(log_mag[i] - top)};
  return out;
}

inline std::vector<double> uniform_grid(double length, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = length * static_cast<double>(i) / static_cast<double>(n - 1);
  xs.back() = length;
  return xs;
}

}  // namespace detail

/// Shoots from x=0 with y(0)=1, y'(0)=k0sq and returns the terminal defect
/// y'(1) + k1sq*y(1) together with the number of sign changes of y. Atoms at
/// the endpoints are applied in place, which is equivalent to folding them
/// into the boundary coefficients.
inline ShootResult shoot(const Potential& q, const RobinBC& bc, double lambda) {
  return detail::shoot_layout(detail::make_layout(q), bc.k0sq, bc.k1sq, lambda);
}

/// First eigenvalue only (no eigenfunction sampling).
inline double lambda1_value(const Potential& q, const RobinBC& bc, double tol = kDefaultTol) {
  const detail::Layout layout = detail::make_layout(q);
  const detail::Bracket b =
      detail::first_eigen_bracket(layout, bc.k0sq, bc.k1sq, -detail::absolute_mass(q), tol);
  return 0.5 * (b.lo + b.hi);
}

/// First eigenvalue with the positive eigenfunction sampled on `grid_points`
/// uniform points plus every breakpoint of q.
inline EigenResult lambda1(const Potential& q, const RobinBC& bc, double tol = kDefaultTol,
                           std::size_t grid_points = kDefaultEigenGrid) {
  if (grid_points < 1001) throw InvalidArgument("eigenfunction grid needs at least 1001 points");
  const detail::Layout layout = detail::make_layout(q);
  const detail::Bracket b =
      detail::first_eigen_bracket(layout, bc.k0sq, bc.k1sq, -detail::absolute_mass(q), tol);
  EigenResult r;
  r.lambda1 = 0.5 * (b.lo + b.hi);
  r.bracket_width = b.hi - b.lo;
  r.residual = detail::shoot_layout(layout, bc.k0sq, bc.k1sq, r.lambda1).residual;
  std::vector<double> xs = detail::uniform_grid(1.0, grid_points);
  xs.insert(xs.end(), layout.knots.begin(), layout.knots.end());
  r.eigenfunction = detail::sample_solution(layout, bc.k0sq, r.lambda1, std::move(xs));
  return r;
}

/// First eigenvalue of -y'' = lambda y on [0, length] with
/// y'(0) - left*y(0) = 0 and y'(length) + right*y(length) = 0.
inline double lambda1_free_interval(double length, double left, double right,
                                    double tol = kDefaultTol, double rel_tol = 0.0) {
  if (!(length > 0.0)) throw InvalidArgument("interval length must be positive");
  const detail::Layout layout = detail::free_layout(length);
  const double floor_hint = -(std::abs(left) + std::abs(right)) / length;
  const detail::Bracket b =
      detail::first_eigen_bracket(layout, left, right, floor_hint, tol, rel_tol);
  return 0.5 * (b.lo + b.hi);
}

/// Energy functional of the pencil at (q, lambda) evaluated on a sampled y:
///   int (y')^2 + (q - lambda) y^2 dx + k0sq y(0)^2 + k1sq y(1)^2 + sum_a w_a y(z_a)^2.
/// y' uses central differences inside each smooth region of q and
/// second-order one-sided differences at region ends; integrals use the
/// trapezoid rule per cell.
inline double quadratic_form(const Potential& q, const RobinBC& bc, double lambda,
                             std::span<const Sample> y) {
  const std::size_t n = y.size();
  if (n < 11) throw GridTooCoarse(n);
  for (std::size_t i = 1; i < n; ++i)
    if (!(y[i].x > y[i - 1].x)) throw InvalidArgument("grid must be strictly increasing");

  // region starts: indices of grid nodes that sit on a breakpoint of q
  const std::vector<double> bps = q.breakpoints();
  std::vector<std::size_t> cuts{0};
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (std::binary_search(bps.begin(), bps.end(), y[i].x)) cuts.push_back(i);
  cuts.push_back(n - 1);

  double total = 0.0;
  std::vector<double> d;
  for (std::size_t r = 0; r + 1 < cuts.size(); ++r) {
    const std::size_t a = cuts[r];
    const std::size_t b = cuts[r + 1];
    const std::size_t m = b - a + 1;
    d.assign(m, 0.0);
    const auto X = [&](std::size_t j) { return y[a + j].x; };
    const auto Y = [&](std::size_t j) { return y[a + j].y; };
    if (m == 2) {
      d[0] = d[1] = (Y(1) - Y(0)) / (X(1) - X(0));
    } else {
      for (std::size_t j = 1; j + 1 < m; ++j) {
        const double h0 = X(j) - X(j - 1);
        const double h1 = X(j + 1) - X(j);
        d[j] = -h1 / (h0 * (h0 + h1)) * Y(j - 1) + (h1 - h0) / (h0 * h1) * Y(j) +
               h0 / (h1 * (h0 + h1)) * Y(j + 1);
      }
      {
        const double h0 = X(1) - X(0);
        const double h1 = X(2) - X(1);
        d[0] = -(2 * h0 + h1) / (h0 * (h0 + h1)) * Y(0) + (h0 + h1) / (h0 * h1) * Y(1) -
               h0 / (h1 * (h0 + h1)) * Y(2);
      }
      {
        const double h0 = X(m - 2) - X(m - 3);
        const double h1 = X(m - 1) - X(m - 2);
        d[m - 1] = h1 / (h0 * (h0 + h1)) * Y(m - 3) - (h0 + h1) / (h0 * h1) * Y(m - 2) +
                   (2 * h1 + h0) / (h1 * (h0 + h1)) * Y(m - 1);
      }
    }
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const double h = X(j + 1) - X(j);
      const double qv = q.value_at(0.5 * (X(j) + X(j + 1))) - lambda;
      total += 0.5 * h * (d[j] * d[j] + d[j + 1] * d[j + 1]);
      total += 0.5 * h * qv * (Y(j) * Y(j) + Y(j + 1) * Y(j + 1));
    }
  }
  total += bc.k0sq * y.front().y * y.front().y + bc.k1sq * y.back().y * y.back().y;

  for (const DeltaAtom& atom : q.atoms()) {
    auto it = std::lower_bound(y.begin(), y.end(), atom.position,
                               [](const Sample& s, double x) { return s.x < x; });
    double ya;
    if (it == y.end()) {
      ya = y.back().y;
    } else if (it->x == atom.position || it == y.begin()) {
      ya = it->y;
    } else {
      const Sample& r = *it;
      const Sample& l = *(it - 1);
      ya = l.y + (r.y - l.y) * (atom.position - l.x) / (r.x - l.x);
    }
    total += atom.weight * ya * ya;
  }
  return total;
}

}  // namespace robinsl
