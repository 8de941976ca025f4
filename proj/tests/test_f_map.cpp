#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "robinsl/eigensolver.hpp"
#include "robinsl/extremals.hpp"
#include "robinsl/f_map.hpp"

using namespace robinsl;

namespace {

const RobinBC kGridBc[] = {{0, 0}, {0.25, 0.5}, {1, 1}, {0, 2}};

// five-point central difference of F in zeta
double central_dF(double mu, double z, const RobinBC& bc, double h, bool* ok) {
  const FPoint a = F(mu, z - 2 * h, bc), b = F(mu, z - h, bc);
  const FPoint c = F(mu, z + h, bc), d = F(mu, z + 2 * h, bc);
  *ok = a.in_domain && b.in_domain && c.in_domain && d.in_domain;
  return (8.0 * (c.value - b.value) - (d.value - a.value)) / (12.0 * h);
}

}  // namespace

TEST(PhaseOffsets, PositiveRegime) {
  const PhaseOffsets p = phase_offsets(1.0, {0, 0});
  EXPECT_EQ(p.regime, Regime::positive);
  EXPECT_DOUBLE_EQ(p.alpha_mu, 0.0);
  EXPECT_DOUBLE_EQ(p.beta_mu, 0.0);
  const PhaseOffsets q = phase_offsets(1.0, {1, 1});
  EXPECT_DOUBLE_EQ(q.alpha_mu, std::numbers::pi / 4);
  EXPECT_DOUBLE_EQ(q.beta_mu, std::numbers::pi / 4);
}

TEST(PhaseOffsets, NegativeRegimeLogBranch) {
  const PhaseOffsets p = phase_offsets(-1.0 / 16.0, {0.5, 0.5});
  EXPECT_EQ(p.regime, Regime::negative);
  EXPECT_EQ(p.alpha_branch, LogBranch::below_k);
  EXPECT_NEAR(p.alpha_mu, 0.5 * std::log(3.0), 1e-15);
  EXPECT_NEAR(p.beta_mu, 0.54930614433405489, 1e-15);
}

TEST(PhaseOffsets, Errors) {
  EXPECT_THROW(phase_offsets(-0.25, {0.5, 1.0}), BranchUndefined);
  EXPECT_THROW(phase_offsets(0.0, {0.5, 1.0}), InvalidArgument);
}

TEST(Kernels, MiddleBranches) {
  for (double x : {0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(G(0.7, 0.7, x), 1.0);
  EXPECT_NEAR(g(1.0, 1.0, 0.5), 1.6487213, 1e-7);
  EXPECT_NEAR(G(2.0, 1.0, 0.0), 0.5, 1e-15);
}

TEST(Kernels, GPrimeMatchesDifference) {
  for (const auto& [nu, kappa] : {std::pair{2.0, 1.0}, std::pair{0.5, 1.5}, std::pair{1.0, 0.0}}) {
    for (double x : {0.1, 0.5, 0.9}) {
      const double h = 1e-5;
      const double fd = (G(nu, kappa, x + h) - G(nu, kappa, x - h)) / (2 * h);
      EXPECT_NEAR(G_prime(nu, kappa, x), fd, 1e-8);
    }
  }
}

TEST(FMap, ZeroMuNeumann) {
  for (int i = 0; i <= 10; ++i) EXPECT_DOUBLE_EQ(F(0.0, i / 10.0, {0, 0}).value, 0.0);
}

TEST(FMap, PlateauAtHalfRobin) {
  for (int i = 0; i <= 100; ++i) {
    const FPoint p = F(-0.25, i / 100.0, {0.5, 0.5});
    ASSERT_TRUE(p.in_domain);
    EXPECT_NEAR(p.value, -1.0, 1e-12);
  }
}

TEST(FMap, InvertsEndpointExtremal) {
  const double mu_star = m1_plus({0, 0}).value;
  EXPECT_NEAR(mu_star, 0.740174, 1e-6);
  EXPECT_NEAR(F(mu_star, 1.0, {0, 0}).value, 1.0, 1e-10);
}

TEST(FMap, OutOfDomainIsFlagged) {
  // sqrt(mu) > pi leaves no admissible zeta for Neumann ends
  const FPoint p = F(12.0, 0.5, {0, 0});
  EXPECT_FALSE(p.in_domain);
  EXPECT_TRUE(std::isnan(p.value));
}

TEST(DFMap, SymmetricCenterIsStationary) {
  for (double c : {0.0, 0.5, 2.0}) {
    for (double mu : {-1.0, -0.1, 0.0, 0.5, 2.0}) {
      if (!F(mu, 0.5, {c, c}).in_domain) continue;
      EXPECT_NEAR(dF_dzeta(mu, 0.5, {c, c}), 0.0, 1e-12) << "c=" << c << " mu=" << mu;
    }
  }
}

TEST(DFMap, RationalCase) {
  for (double z : {0.0, 0.25, 0.8}) EXPECT_NEAR(dF_dzeta(0.0, z, {1, 0}), 1.0 / ((1 + z) * (1 + z)), 1e-15);
}

TEST(DFMap, MatchesCentralDifferences) {
  const double h = 1e-4;
  int checked = 0;
  for (const RobinBC& bc : kGridBc) {
    for (int i = 0; i < 20; ++i) {
      const double mu = -2.0 + 5.0 * i / 19.0;
      for (int j = 0; j < 20; ++j) {
        const double z = 0.025 + 0.95 * j / 19.0;
        bool ok = false;
        const double fd = central_dF(mu, z, bc, h, &ok);
        if (!ok) continue;
        const double an = dF_dzeta(mu, z, bc);
        EXPECT_LE(std::abs(fd - an), 1e-6 * std::max(1.0, std::abs(an))) << "mu=" << mu << " z=" << z;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 800);
}

TEST(DFMap, NegativeBetweenQuarticCutoffs) {
  // k1sq > k0sq and -k1sq^2 <= mu <= -k0sq^2: F decreases in zeta
  const RobinBC bc{0.5, 1.5};
  for (double mu : {-0.3, -1.0, -2.0})
    for (double z : {0.1, 0.5, 0.9}) EXPECT_LT(dF_dzeta(mu, z, bc), 0.0);
}

// Properties

TEST(FMapProperty, DefiningIdentity) {
  for (const RobinBC& bc : kGridBc) {
    for (double mu : {-2.0, -0.5, -0.1, 0.0, 0.3, 1.0, 3.0}) {
      for (int i = 0; i <= 10; ++i) {
        const double z = i / 10.0;
        const FPoint p = F(mu, z, bc);
        if (!p.in_domain) continue;
        EXPECT_NEAR(lambda1_value(Potential::atom(z, p.value), bc, 1e-11), mu, 1e-8)
            << "mu=" << mu << " z=" << z;
      }
    }
  }
}

TEST(FMapProperty, IncreasingInMu) {
  for (const RobinBC& bc : kGridBc) {
    for (double z : {0.0, 0.3, 0.5, 1.0}) {
      double prev = -INFINITY;
      for (int i = 0; i <= 60; ++i) {
        const FPoint p = F(-3.0 + 0.1 * i, z, bc);
        if (!p.in_domain) continue;
        EXPECT_GT(p.value, prev) << "mu=" << p.mu << " z=" << z;
        prev = p.value;
      }
    }
  }
}

TEST(FMapProperty, MatchesAcrossZeroMu) {
  for (const RobinBC& bc : kGridBc) {
    for (double z : {0.0, 0.4, 1.0}) {
      const double f0 = F(0.0, z, bc).value;
      EXPECT_NEAR(F(1e-8, z, bc).value, f0, 1e-6);
      EXPECT_NEAR(F(-1e-8, z, bc).value, f0, 1e-6);
      // the exact forms on either side of the near-zero band agree too
      EXPECT_NEAR(F(2e-8, z, bc).value, F(-2e-8, z, bc).value, 1e-6);
    }
  }
}

TEST(FMapProperty, NoJumpsOnFineGrid) {
  for (const RobinBC& bc : kGridBc) {
    for (double z : {0.2, 0.7}) {
      double prev = F(-1.0, z, bc).value;
      for (int i = 1; i <= 2000; ++i) {
        const FPoint p = F(-1.0 + 1e-3 * i, z, bc);
        if (!p.in_domain) break;
        EXPECT_LT(std::abs(p.value - prev), 0.05) << "mu=" << p.mu;
        prev = p.value;
      }
    }
  }
}
