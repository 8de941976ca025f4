#pragma once

// Randomized verification of the extremal bounds: sample potentials from the
// classes with integral +1 / -1, check that their first eigenvalues stay in
// [m1, M1], and track how delta-approximating sequences approach each bound.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "robinsl/eigensolver.hpp"
#include "robinsl/extremals.hpp"
#include "robinsl/potential.hpp"

namespace robinsl {

/// splitmix64 (Steele, Lea, Flood). Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>((*this)() % span);
  }

  /// Standard normal by Box-Muller; implemented here so that streams are
  /// identical across standard libraries.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

/// Seed of the i-th sample of a run; independent of thread scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
  return g();
}

inline constexpr int kMaxPieces = 64;

namespace detail {

// Draws `pieces` consecutive segments on [lo, hi] with |N(0,1)| heights.
inline Potential draw_pieces(SplitMix64& rng, int pieces, double lo, double hi, int sign) {
  std::vector<double> cuts(static_cast<std::size_t>(pieces) + 1);
  for (double& c : cuts) c = lo + (hi - lo) * rng.uniform();
  std::sort(cuts.begin(), cuts.end());
  std::vector<Segment> segs;
  for (int i = 0; i < pieces; ++i) {
    const double h = std::abs(rng.normal());
    if (cuts[i + 1] > cuts[i] && h > 0.0) segs.push_back({cuts[i], cuts[i + 1], sign * h});
  }
  if (segs.empty()) segs.push_back({lo, hi, static_cast<double>(sign)});
  return Potential(std::move(segs), {});
}

}  // namespace detail

/// Random member of the class with integral `sign`: pieces+1 uniform cut
/// points on [0,1], |N(0,1)| heights on the pieces between them, zero
/// outside, then normalized.
inline Potential sample_A1(int pieces, std::uint64_t seed, int sign) {
  if (pieces < 1 || pieces > kMaxPieces) throw InvalidArgument("pieces must be in [1, 64]");
  SplitMix64 rng(seed);
  return normalize_to_class(detail::draw_pieces(rng, pieces, 0.0, 1.0, sign), sign);
}

/// Same as sample_A1 but the support is confined to a random window of width
/// 1/pieces, so mass concentrates as pieces grows.
inline Potential sample_A1_concentrated(int pieces, std::uint64_t seed, int sign) {
  if (pieces < 1 || pieces > kMaxPieces) throw InvalidArgument("pieces must be in [1, 64]");
  SplitMix64 rng(seed);
  const double width = 1.0 / pieces;
  const double left = (1.0 - width) * rng.uniform();
  return normalize_to_class(detail::draw_pieces(rng, pieces, left, left + width, sign), sign);
}

struct Violation {
  Potential q;
  int sign = 1;
  double lambda1 = 0.0;
  std::string bound;  // "lower" or "upper"
  double gap = 0.0;   // distance past the bound
};

struct SampleReport {
  std::uint64_t seed = 0;
  int n_samples = 0;
  RobinBC bc;
  std::vector<Violation> violations;
  // per class, index 0 = integral -1, index 1 = integral +1
  std::array<int, 2> counts{0, 0};
  std::array<double, 2> min_seen{std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity()};
  std::array<double, 2> max_seen{-std::numeric_limits<double>::infinity(),
                                 -std::numeric_limits<double>::infinity()};
  std::array<double, 2> lower_bound{0.0, 0.0};
  std::array<double, 2> upper_bound{0.0, 0.0};
  // best |lambda1(q_n) - extremum| over the extremal approach sequences;
  // NaN when no approach was requested
  std::array<double, 4> extremum_gaps{std::numeric_limits<double>::quiet_NaN(),
                                      std::numeric_limits<double>::quiet_NaN(),
                                      std::numeric_limits<double>::quiet_NaN(),
                                      std::numeric_limits<double>::quiet_NaN()};
};

inline constexpr double kViolationTol = 1e-7;

struct CheckOptions {
  int class_sign = 0;         // +1 / -1 restricts sampling to one class; 0 picks at random
  bool concentrated = false;  // mix in window-confined samples
  int jobs = 1;
  int approach_depth = 0;  // 0 skips the extremal approach sequences
  double tol = kDefaultTol;
};

struct ApproachPoint {
  int n = 0;
  double lambda1 = 0.0;
  double gap = 0.0;
};

/// Replaces every atom of q_star by its box approximant of width 1/n while
/// keeping the regular part; the class integral is preserved.
inline Potential approximate_atoms(const Potential& q_star, int n) {
  Potential out(q_star.segments(), {});
  for (const DeltaAtom& a : q_star.atoms()) out = superpose(out, delta_approx(a.position, n, a.weight));
  return out;
}

/// lambda1 of L1 approximants of the extremal potential for n = 2^k,
/// k = 2..depth, and their distance to the extremum.
inline std::vector<ApproachPoint> extremal_approach(const RobinBC& bc, ExtremumKind kind, int depth,
                                                    double tol = kDefaultTol) {
  if (depth > 14) throw InvalidArgument("depth must be <= 14");
  const ExtremumReport ext = compute_extremum(kind, bc);
  std::vector<ApproachPoint> out;
  for (int k = 2; k <= depth; ++k) {
    const int n = 1 << k;
    const Potential qn = approximate_atoms(ext.q_star, n);
    const double lam = lambda1_value(qn, bc, tol);
    out.push_back({n, lam, std::abs(lam - ext.value)});
  }
  return out;
}

/// Samples n potentials (random class unless restricted, random piece count
/// in [1, pieces_max]) and records every first eigenvalue outside
/// [m1 - 1e-7, M1 + 1e-7] of its class.
inline SampleReport check_bounds(const RobinBC& bc, int n, int pieces_max, std::uint64_t seed,
                                 const CheckOptions& opt = {}) {
  if (pieces_max < 1 || pieces_max > kMaxPieces) throw InvalidArgument("pieces_max must be in [1, 64]");
  SampleReport rep;
  rep.seed = seed;
  rep.n_samples = std::max(n, 0);
  rep.bc = bc;
  if (n <= 0) return rep;

  const auto ext = compute_all_extrema(bc);
  rep.lower_bound = {ext[3].value, ext[2].value};  // m1-, m1+
  rep.upper_bound = {ext[1].value, ext[0].value};  // M1-, M1+

  struct Local {
    std::vector<std::pair<int, Violation>> violations;
    std::array<int, 2> counts{0, 0};
    std::array<double, 2> min_seen{std::numeric_limits<double>::infinity(),
                                   std::numeric_limits<double>::infinity()};
    std::array<double, 2> max_seen{-std::numeric_limits<double>::infinity(),
                                   -std::numeric_limits<double>::infinity()};
  };
  const int jobs = std::max(1, std::min(opt.jobs, n));
  std::vector<Local> locals(static_cast<std::size_t>(jobs));

  const auto work = [&](int job) {
    Local& loc = locals[static_cast<std::size_t>(job)];
    for (int i = job; i < n; i += jobs) {
      SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
      const int sign = opt.class_sign != 0 ? opt.class_sign : ((rng() & 1ULL) ? 1 : -1);
      const int pieces = rng.uniform_int(1, pieces_max);
      const bool concentrate = opt.concentrated && (rng() & 1ULL);
      const std::uint64_t sub = rng();
      Potential q = concentrate ? sample_A1_concentrated(pieces, sub, sign)
                                : sample_A1(pieces, sub, sign);
      const double lam = lambda1_value(q, bc, opt.tol);
      const int c = sign > 0 ? 1 : 0;
      ++loc.counts[c];
      loc.min_seen[c] = std::min(loc.min_seen[c], lam);
      loc.max_seen[c] = std::max(loc.max_seen[c], lam);
      if (lam < rep.lower_bound[c] - kViolationTol) {
        loc.violations.push_back({i, {q, sign, lam, "lower", rep.lower_bound[c] - lam}});
      } else if (lam > rep.upper_bound[c] + kViolationTol) {
        loc.violations.push_back({i, {q, sign, lam, "upper", lam - rep.upper_bound[c]}});
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (std::thread& t : pool) t.join();
  }

  std::vector<std::pair<int, Violation>> all;
  for (Local& loc : locals) {
    for (int c = 0; c < 2; ++c) {
      rep.counts[c] += loc.counts[c];
      rep.min_seen[c] = std::min(rep.min_seen[c], loc.min_seen[c]);
      rep.max_seen[c] = std::max(rep.max_seen[c], loc.max_seen[c]);
    }
    all.insert(all.end(), loc.violations.begin(), loc.violations.end());
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& v : all) rep.violations.push_back(std::move(v.second));

  if (opt.approach_depth >= 2) {
    const std::array kinds{ExtremumKind::M1plus, ExtremumKind::M1minus, ExtremumKind::m1plus,
                           ExtremumKind::m1minus};
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      double best = std::numeric_limits<double>::infinity();
      for (const ApproachPoint& p : extremal_approach(bc, kinds[k], opt.approach_depth, opt.tol))
        best = std::min(best, p.gap);
      rep.extremum_gaps[k] = best;
    }
  }
  return rep;
}

}  // namespace robinsl
