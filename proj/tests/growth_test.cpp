#include <gtest/gtest.h>

#include <cmath>

#include "orlicz/growth.hpp"

using namespace orlicz;

namespace {

ProbeOptions coarse() {
  ProbeOptions o;
  o.range.points_per_decade = 64;
  return o;
}

}  // namespace

TEST(Growth, Delta2PowerConstant) {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto v = delta2_probe(YoungFunction::power_abs(p), coarse());
    ASSERT_TRUE(v.holds()) << p;
    EXPECT_NEAR(v.constant, std::pow(2.0, p), 1e-9) << p;
  }
}

TEST(Growth, Delta2AbsIsTwo) {
  const auto v = delta2_probe(YoungFunction::abs_value(), coarse());
  ASSERT_TRUE(v.holds());
  EXPECT_NEAR(v.constant, 2.0, 1e-12);
}

TEST(Growth, Delta2FailsForExponential) {
  const auto v = delta2_probe(YoungFunction::exp_minus_one(), coarse());
  EXPECT_EQ(v.kind, GrowthVerdict::Kind::ViolatedAt);
  EXPECT_GT(v.witness, 0.0);
}

TEST(Growth, ReportsGridUsed) {
  const auto v = delta2_probe(YoungFunction::power_abs(2.0), coarse());
  EXPECT_EQ(v.range.points_per_decade, 64);
  EXPECT_GT(v.grid_points, 0u);
}

TEST(Growth, DeltaPrimeAndNablaPrimeForPowers) {
  const auto d = delta_prime_probe(YoungFunction::power_abs(2.0), coarse());
  ASSERT_TRUE(d.holds());
  EXPECT_NEAR(d.constant, 1.0, 1e-9);
  const auto b = nabla_prime_probe(YoungFunction::power_abs(2.0), coarse());
  ASSERT_TRUE(b.holds());
  EXPECT_NEAR(b.constant, 1.0, 1e-9);
}

TEST(Growth, DeltaPrimeFailsForExponential) {
  EXPECT_FALSE(delta_prime_probe(YoungFunction::exp_minus_one(), coarse()).holds());
}

TEST(Growth, NFunction) {
  EXPECT_TRUE(n_function_probe(YoungFunction::power_over_p(2.0), coarse()).holds());
  EXPECT_EQ(n_function_probe(YoungFunction::abs_value(), coarse()).kind,
            GrowthVerdict::Kind::ViolatedAt);
}

TEST(Growth, SumBoundsForSquare) {
  const auto s = sum_bound_constants(YoungFunction::power_abs(2.0), coarse());
  ASSERT_TRUE(s.K.holds());
  ASSERT_TRUE(s.L.holds());
  EXPECT_NEAR(s.K.constant, 2.0, 1e-6);
  EXPECT_NEAR(s.L.constant, std::sqrt(2.0), 1e-6);
  EXPECT_TRUE(s.reverse_directions_hold);
}

TEST(Growth, SumBoundsForAbs) {
  const auto s = sum_bound_constants(YoungFunction::abs_value(), coarse());
  ASSERT_TRUE(s.K.holds());
  ASSERT_TRUE(s.L.holds());
  EXPECT_NEAR(s.K.constant, 1.0, 1e-9);
  EXPECT_NEAR(s.L.constant, 1.0, 1e-9);
}
