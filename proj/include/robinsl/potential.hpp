#pragma once

// Boundary coefficients and sign-definite potentials on [0,1] made of
// piecewise-constant segments plus weighted Dirac atoms.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "robinsl/errors.hpp"

namespace robinsl {

/// Robin coefficients of y'(0) - k0sq*y(0) = 0 and y'(1) + k1sq*y(1) = 0.
///
/// The solver accepts any real pair (the extremal problems shift the
/// coefficients by the endpoint atom weights, which can make them negative).
/// `validate()` enforces the user-facing ordering 0 <= k0sq <= k1sq.
struct RobinBC {
  double k0sq = 0.0;
  double k1sq = 0.0;

  void validate() const {
    if (!std::isfinite(k0sq) || !std::isfinite(k1sq))
      throw InvalidArgument("boundary coefficients must be finite");
    if (k0sq < 0.0) throw InvalidArgument("k0sq must be non-negative");
    if (k1sq < k0sq) throw InvalidArgument("k1sq must be >= k0sq");
  }

  friend bool operator==(const RobinBC&, const RobinBC&) = default;
};

struct Segment {
  double left = 0.0;
  double right = 1.0;
  double value = 0.0;

  double length() const { return right - left; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct DeltaAtom {
  double position = 0.0;
  double weight = 0.0;

  friend bool operator==(const DeltaAtom&, const DeltaAtom&) = default;
};

/// Atoms closer than this are merged by adding their weights.
inline constexpr double kAtomMergeDistance = 1e-12;

/// A potential q = sum of segments + sum of atoms on [0,1]. Points not covered
/// by a segment carry the value 0.
///
/// Construction sorts segments by left endpoint,
/// rejects overlapping interiors and merges colliding atoms. The class is an
/// immutable value type after construction.
class Potential {
 public:
  Potential() = default;

  Potential(std::vector<Segment> segments, std::vector<DeltaAtom> atoms) {
    for (const Segment& s : segments) {
      if (!std::isfinite(s.left) || !std::isfinite(s.right) || !std::isfinite(s.value))
        throw InvalidArgument("segment fields must be finite");
      if (s.left < 0.0 || s.right > 1.0) throw InvalidArgument("segment outside [0,1]");
      if (!(s.left < s.right)) throw InvalidArgument("segment needs left < right");
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& a, const Segment& b) { return a.left < b.left; });
    for (std::size_t i = 1; i < segments.size(); ++i) {
      if (segments[i].left < segments[i - 1].right)
        throw InvalidArgument("segments overlap");
    }
    segments_ = std::move(segments);

    for (const DeltaAtom& a : atoms) {
      if (!std::isfinite(a.position) || !std::isfinite(a.weight))
        throw InvalidArgument("atom fields must be finite");
      if (a.position < 0.0 || a.position > 1.0) throw InvalidArgument("atom outside [0,1]");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const DeltaAtom& a, const DeltaAtom& b) { return a.position < b.position; });
    for (const DeltaAtom& a : atoms) {
      if (!atoms_.empty() && a.position - atoms_.back().position < kAtomMergeDistance) {
        atoms_.back().weight += a.weight;
      } else {
        atoms_.push_back(a);
      }
    }
  }

  static Potential zero() { return {}; }
  static Potential constant(double value) { return Potential({{0.0, 1.0, value}}, {}); }
  static Potential atom(double position, double weight) {
    return Potential({}, {{position, weight}});
  }

  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<DeltaAtom>& atoms() const { return atoms_; }

  /// Value of the regular part at x (the right-continuous reading at
  /// segment boundaries does not matter for integrals).
  double value_at(double x) const {
    for (const Segment& s : segments_) {
      if (x >= s.left && x < s.right) return s.value;
      if (x == 1.0 && s.right == 1.0) return s.value;
    }
    return 0.0;
  }

  /// Sorted breakpoints including 0 and 1: segment ends and atom positions.
  std::vector<double> breakpoints() const {
    std::vector<double> pts{0.0, 1.0};
    for (const Segment& s : segments_) {
      pts.push_back(s.left);
      pts.push_back(s.right);
    }
    for (const DeltaAtom& a : atoms_) pts.push_back(a.position);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  friend bool operator==(const Potential&, const Potential&) = default;

 private:
  std::vector<Segment> segments_;
  std::vector<DeltaAtom> atoms_;
};

inline double total_integral(const Potential& q) {
  double sum = 0.0;
  for (const Segment& s : q.segments()) sum += s.value * s.length();
  for (const DeltaAtom& a : q.atoms()) sum += a.weight;
  return sum;
}

/// Pointwise sum of two potentials. Overlapping segments are split at every
/// breakpoint of either operand; coinciding atoms merge.
inline Potential superpose(const Potential& a, const Potential& b) {
  std::vector<double> cuts = a.breakpoints();
  const std::vector<double> more = b.breakpoints();
  cuts.insert(cuts.end(), more.begin(), more.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> segments;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const double v = a.value_at(mid) + b.value_at(mid);
    if (v == 0.0) continue;
    if (!segments.empty() && segments.back().right == cuts[i] && segments.back().value == v) {
      segments.back().right = cuts[i + 1];
    } else {
      segments.push_back({cuts[i], cuts[i + 1], v});
    }
  }
  std::vector<DeltaAtom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return Potential(std::move(segments), std::move(atoms));
}

/// Rescales a sign-definite potential so that its total integral equals
/// `sign` (+1 or -1). Throws MixedSign / ZeroMass.
inline Potential normalize_to_class(const Potential& q_raw, int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
  bool has_pos = false;
  bool has_neg = false;
  for (const Segment& s : q_raw.segments()) {
    has_pos |= s.value > 0.0;
    has_neg |= s.value < 0.0;
  }
  for (const DeltaAtom& a : q_raw.atoms()) {
    has_pos |= a.weight > 0.0;
    has_neg |= a.weight < 0.0;
  }
  if (has_pos && has_neg) throw MixedSign();
  const double mass = total_integral(q_raw);
  if (mass == 0.0) throw ZeroMass();
  if ((mass > 0.0) != (sign > 0)) throw MixedSign();

  const double scale = static_cast<double>(sign) / mass;
  std::vector<Segment> segments = q_raw.segments();
  for (Segment& s : segments) s.value *= scale;
  std::vector<DeltaAtom> atoms = q_raw.atoms();
  for (DeltaAtom& a : atoms) a.weight *= scale;
  return Potential(std::move(segments), std::move(atoms));
}

/// L1 approximant of weight*delta_zeta: a box of width 1/n and height
/// n*weight containing zeta, shifted inward at the endpoints.
inline Potential delta_approx(double zeta, int n, double weight) {
  if (n < 1) throw InvalidArgument("delta_approx needs n >= 1");
  if (zeta < 0.0 || zeta > 1.0) throw InvalidArgument("zeta outside [0,1]");
  const double width = 1.0 / n;
  double left = zeta - 0.5 * width;
  double right = zeta + 0.5 * width;
  if (left < 0.0) {
    left = 0.0;
    right = width;
  } else if (right > 1.0) {
    right = 1.0;
    left = 1.0 - width;
  }
  if (weight == 0.0) return Potential::zero();
  return Potential({{left, right, n * weight}}, {});
}

/// Moves atoms sitting at x=0 / x=1 into the Robin coefficients.
inline std::pair<Potential, RobinBC> fold_endpoint_atoms(const Potential& q, RobinBC bc) {
  std::vector<DeltaAtom> interior;
  for (const DeltaAtom& a : q.atoms()) {
    if (a.position == 0.0) {
      bc.k0sq += a.weight;
    } else if (a.position == 1.0) {
      bc.k1sq += a.weight;
    } else {
      interior.push_back(a);
    }
  }
  return {Potential(q.segments(), std::move(interior)), bc};
}

}  // namespace robinsl
