#include <gtest/gtest.h>

#include "robinsl/eigensolver.hpp"
#include "robinsl/fd_oracle.hpp"

using namespace robinsl;

TEST(FdOracle, NeumannLaplacian) {
  EXPECT_NEAR(fd_oracle_lambda1(Potential::zero(), {0, 0}, 1000), 0.0, 1e-8);
}

TEST(FdOracle, ConstantShift) {
  EXPECT_NEAR(fd_oracle_lambda1(Potential::constant(1.0), {0, 0}, 1000), 1.0, 1e-6);
}

TEST(FdOracle, EndpointAtom) {
  EXPECT_NEAR(fd_oracle_lambda1(Potential::atom(1.0, 1.0), {0, 0}, 2000), 0.740174, 5e-4);
}

TEST(FdOracle, RejectsCoarseGrid) {
  EXPECT_THROW(fd_oracle_lambda1(Potential::zero(), {0, 0}, 10), InvalidArgument);
}

TEST(FdOracle, SecondOrderConvergence) {
  const Potential q({{0.0, 0.37, -4.0}, {0.37, 0.87, 1.2}}, {{0.378, -5.0}, {0.48, 1.7}});
  const RobinBC bc{0.44, 1.16};
  const double exact = lambda1_value(q, bc, 1e-13);
  const double e1 = std::abs(fd_oracle_lambda1(q, bc, 500) - exact);
  const double e2 = std::abs(fd_oracle_lambda1(q, bc, 1000) - exact);
  EXPECT_LT(e2, e1);
  EXPECT_LT(e2, 1e-4);
}

TEST(FdOracle, AgreesWithShootingOnMixedPotentials) {
  const std::vector<std::pair<Potential, RobinBC>> cases = {
      {Potential({{0.0, 0.5, 3.0}}, {{0.75, -1.0}}), {0.0, 0.0}},
      {Potential({{0.2, 0.4, -6.0}, {0.4, 1.0, 2.0}}, {}), {1.0, 1.0}},
      {Potential({}, {{0.0, -1.0}, {0.5, 2.0}, {1.0, 0.5}}), {0.25, 0.5}},
      {Potential::constant(-3.0), {0.0, 2.0}},
  };
  for (const auto& [q, bc] : cases) {
    EXPECT_NEAR(fd_oracle_lambda1(q, bc, 2000), lambda1_value(q, bc), 1e-4);
  }
}
