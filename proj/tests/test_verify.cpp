#include <gtest/gtest.h>

#include <cmath>

#include "robinsl/verify.hpp"

using namespace robinsl;

TEST(Sampler, SinglePieceIsConstantOnSubinterval) {
  for (int sign : {1, -1}) {
    const Potential q = sample_A1(1, 42, sign);
    ASSERT_EQ(q.segments().size(), 1u);
    EXPECT_TRUE(q.atoms().empty());
    EXPECT_NEAR(total_integral(q), sign, 1e-14);
  }
}

TEST(Sampler, HitsClassAndIsReproducible) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int pieces = 1 + static_cast<int>(seed % kMaxPieces);
    for (int sign : {1, -1}) {
      const Potential a = sample_A1(pieces, seed, sign);
      EXPECT_NEAR(total_integral(a), sign, 1e-12);
      EXPECT_EQ(a, sample_A1(pieces, seed, sign));
      const Potential c = sample_A1_concentrated(pieces, seed, sign);
      EXPECT_NEAR(total_integral(c), sign, 1e-12);
    }
  }
  EXPECT_NE(sample_A1(8, 1, 1), sample_A1(8, 2, 1));
}

TEST(SplitMix, KnownFirstOutput) {
  // reference value of the splitmix64 generator seeded with 0
  SplitMix64 g(0);
  EXPECT_EQ(g(), 0xe220a8397b1dcdafULL);
}

TEST(CheckBounds, EmptyRun) {
  const SampleReport rep = check_bounds({0, 0}, 0, 8, 1);
  EXPECT_EQ(rep.n_samples, 0);
  EXPECT_TRUE(rep.violations.empty());
}

TEST(CheckBounds, NeumannClassesStayInside) {
  for (int sign : {1, -1}) {
    CheckOptions opt;
    opt.class_sign = sign;
    const SampleReport rep = check_bounds({0, 0}, 500, 16, 9, opt);
    EXPECT_TRUE(rep.violations.empty());
    const int c = sign > 0 ? 1 : 0;
    EXPECT_EQ(rep.counts[c], 500);
    if (sign > 0) {
      EXPECT_GE(rep.min_seen[c], 0.740173);
      EXPECT_LE(rep.max_seen[c], 1.0000001);
    } else {
      EXPECT_LE(rep.max_seen[c], -1.0 + 1e-7);
      EXPECT_GE(rep.min_seen[c], m1_minus({0, 0}).value - 1e-7);
    }
  }
}

TEST(CheckBounds, IndependentOfJobCount) {
  CheckOptions one;
  CheckOptions four;
  four.jobs = 4;
  const SampleReport a = check_bounds({0.25, 0.5}, 300, 12, 77, one);
  const SampleReport b = check_bounds({0.25, 0.5}, 300, 12, 77, four);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.min_seen, b.min_seen);
  EXPECT_EQ(a.max_seen, b.max_seen);
}

TEST(CheckBounds, ConcentratedSamplingGetsCloserToBounds) {
  CheckOptions plain;
  plain.class_sign = 1;
  CheckOptions conc = plain;
  conc.concentrated = true;
  const SampleReport a = check_bounds({0, 0}, 400, 32, 5, plain);
  const SampleReport b = check_bounds({0, 0}, 400, 32, 5, conc);
  EXPECT_TRUE(b.violations.empty());
  EXPECT_GT(a.min_seen[1] - a.lower_bound[1], 0.0);
  EXPECT_GT(b.min_seen[1] - b.lower_bound[1], 0.0);
  EXPECT_LT(b.min_seen[1] - b.lower_bound[1], a.min_seen[1] - a.lower_bound[1]);
}

TEST(Approach, PlateauExtremumIsExact) {
  for (const auto& p : extremal_approach({0.25, 0.5}, ExtremumKind::M1plus, 6))
    EXPECT_LT(p.gap, 1e-9);
}

TEST(Approach, EndpointDeltaConverges) {
  const auto pts = extremal_approach({0, 0}, ExtremumKind::m1plus, 12);
  ASSERT_EQ(pts.size(), 11u);
  EXPECT_EQ(pts.back().n, 4096);
  EXPECT_LT(pts.back().gap, 1e-3);
  for (const auto& p : pts) EXPECT_GT(p.gap, 0.0);
  for (std::size_t i = pts.size() - 5; i < pts.size(); ++i) EXPECT_LT(pts[i].gap, pts[i - 1].gap);
}

TEST(Approach, CentralNegativeDeltaConverges) {
  const auto pts = extremal_approach({0.5, 0.5}, ExtremumKind::m1minus, 12);
  EXPECT_NEAR(pts.back().lambda1, -0.25, 1e-3);
  for (std::size_t i = pts.size() - 5; i < pts.size(); ++i) EXPECT_LT(pts[i].gap, pts[i - 1].gap);
}

TEST(Approach, EndpointAtomsWithSegment) {
  // M1- case (a): boxes overlap the uniform part and must superpose
  const auto pts = extremal_approach({0.2, 0.3}, ExtremumKind::M1minus, 10);
  for (std::size_t i = pts.size() - 5; i < pts.size(); ++i) EXPECT_LT(pts[i].gap, pts[i - 1].gap);
  EXPECT_THROW(extremal_approach({0, 0}, ExtremumKind::m1plus, 15), InvalidArgument);
}

TEST(CheckBounds, GapsOnlyWhenRequested) {
  const SampleReport plain = check_bounds({0, 0}, 5, 4, 3);
  for (double g : plain.extremum_gaps) EXPECT_TRUE(std::isnan(g));
  CheckOptions opt;
  opt.approach_depth = 8;
  const SampleReport deep = check_bounds({0, 0}, 5, 4, 3, opt);
  EXPECT_LT(deep.extremum_gaps[0], 1e-9);
  EXPECT_GT(deep.extremum_gaps[2], 0.0);
  EXPECT_LT(deep.extremum_gaps[2], 1e-2);
}
