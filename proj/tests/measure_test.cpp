#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "orlicz/extended.hpp"
#include "orlicz/measure.hpp"

using namespace orlicz;

namespace {

struct RandomMap {
  std::vector<double> mu;
  std::vector<long long> targets;
  std::vector<double> f;
};

RandomMap random_map(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 30);
  std::uniform_real_distribution<double> logw(std::log(1e-3), std::log(1e3)), val(-10, 10);
  RandomMap r;
  const int n = size(rng);
  std::uniform_int_distribution<long long> pick(1, n);
  for (int i = 0; i < n; ++i) {
    r.mu.push_back(std::exp(logw(rng)));
    r.targets.push_back(pick(rng));
    r.f.push_back(val(rng));
  }
  return r;
}

}  // namespace

TEST(Measure, FiniteWeightsAndIds) {
  const auto X = MeasureSpace::finite({{"a", 4.0}, {"b", 1.0}});
  EXPECT_EQ(X.depth(), 2);
  EXPECT_DOUBLE_EQ(X.weight(1), 4.0);
  EXPECT_EQ(X.find_atom("b"), 2);
  EXPECT_FALSE(X.find_atom("c").has_value());
  EXPECT_DOUBLE_EQ(X.total_mass(), 5.0);
}

TEST(Measure, RadonNikodymMatchesFiberSums) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = random_map(rng);
    const auto X = MeasureSpace::finite(r.mu);
    const auto h = radon_nikodym(Transformation(X, r.targets));
    const auto ref = oracle::radon_nikodym(r.mu, r.targets);
    for (std::size_t i = 0; i < ref.size(); ++i)
      EXPECT_NEAR(h.at(static_cast<Atom>(i + 1)), ref[i], 1e-12 * std::max(1.0, ref[i]));
  }
}

TEST(Measure, RadonNikodymIdentityIsOne) {
  const auto X = MeasureSpace::finite(std::vector<double>{0.5, 2.0, 3.0});
  const auto h = radon_nikodym(Transformation::identity(X));
  for (Atom n = 1; n <= 3; ++n) EXPECT_DOUBLE_EQ(h.at(n), 1.0);
}

TEST(Measure, ConditionalExpectationIsFiberAverage) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = random_map(rng);
    const auto X = MeasureSpace::finite(r.mu);
    const Transformation phi(X, r.targets);
    const auto E = conditional_expectation(X, SimpleFunction::of(r.f), fiber_partition(phi));
    const auto ref = oracle::fiber_average(r.mu, r.targets, r.f);
    for (std::size_t i = 0; i < ref.size(); ++i)
      EXPECT_NEAR(E.at(static_cast<Atom>(i + 1)), ref[i], 1e-10 * std::max(1.0, std::abs(ref[i])));
  }
}

TEST(Measure, ConditionalExpectationPreservesIntegral) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_map(rng);
    const auto X = MeasureSpace::finite(r.mu);
    const auto E = conditional_expectation(X, SimpleFunction::of(r.f),
                                           fiber_partition(Transformation(X, r.targets)));
    double a = 0.0, b = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < r.f.size(); ++i) {
      a += r.f[i] * r.mu[i];
      b += E.at(static_cast<Atom>(i + 1)) * r.mu[i];
      scale += std::abs(r.f[i]) * r.mu[i];
    }
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, scale));
  }
}

TEST(Measure, InverseRnOfBijectionIsReciprocalComposition) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 2.0, 4.0});
  const Transformation phi(X, {2, 3, 1});
  const auto h = radon_nikodym(phi);
  const auto hinv = inverse_rn(phi);
  for (Atom n = 1; n <= 3; ++n) EXPECT_NEAR(h.at(phi.at(n)) * hinv.at(n), 1.0, 1e-15);
}

TEST(Measure, EmptyFiberGivesZeroDensity) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 1.0, 1.0});
  const auto h = radon_nikodym(Transformation(X, {1, 1, 1}));
  EXPECT_DOUBLE_EQ(h.at(1), 3.0);
  EXPECT_DOUBLE_EQ(h.at(2), 0.0);
}

TEST(Measure, GeometricShiftDensity) {
  // mu(n) = 2^-n, phi(n) = n + 1: h(1) = 0, h(n) = mu(n-1) / mu(n) = 2.
  const auto X = MeasureSpace::countable({WeightLaw::Geometric{0.5, 0.5}}, 16);
  const Transformation phi(X, {}, MapLaw{MapLaw::Affine{1, 1}});
  const auto h = radon_nikodym(phi);
  ASSERT_TRUE(h.resolved());
  EXPECT_DOUBLE_EQ(h.at(1), 0.0);
  for (Atom n : {2, 5, 40, 1000}) EXPECT_NEAR(h.at(n), 2.0, 1e-12) << n;
}

TEST(Measure, ConstantCollapseIsInfiniteAtTarget) {
  const auto X = MeasureSpace::countable({WeightLaw::Geometric{0.5, 0.5}}, 16);
  const Transformation phi(X, {}, MapLaw{MapLaw::Constant{1}});
  const auto h = radon_nikodym(phi);
  EXPECT_NEAR(h.at(1), 2.0, 1e-12);
  const auto Xc = MeasureSpace::countable({WeightLaw::Constant{1.0}}, 16);
  const auto hc = radon_nikodym(Transformation(Xc, {}, MapLaw{MapLaw::Constant{1}}));
  EXPECT_TRUE(is_inf(hc.at(1)));
  EXPECT_EQ(sigma_finite_check(Transformation(Xc, {}, MapLaw{MapLaw::Constant{1}})).status,
            Status::Fails);
}

TEST(Measure, TailIntegralOfGeometric) {
  const auto X = MeasureSpace::countable({WeightLaw::Geometric{0.5, 0.5}}, 8);
  const auto s = tail_integral(X, TailLaw::constant(1.0), 0);
  ASSERT_TRUE(s.finite());
  EXPECT_NEAR(s.as_double(), 1.0, 1e-12);
}

TEST(Measure, ExhaustionSetsGrow) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 1.0, 1.0});
  const auto E = exhaustion(X, SimpleFunction::of({0.5, 2.5, 10.0}));
  EXPECT_EQ(E.set(1).atoms, (std::vector<Atom>{1}));
  EXPECT_EQ(E.set(4).atoms, (std::vector<Atom>{1, 2}));
  EXPECT_EQ(E.set(16).atoms, (std::vector<Atom>{1, 2, 3}));
}
