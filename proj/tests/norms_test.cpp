#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "orlicz/extended.hpp"
#include "orlicz/norms.hpp"

using namespace orlicz;

namespace {

struct Sample {
  std::vector<double> mu, f;
};

Sample random_sample(std::mt19937_64& rng, int max_atoms = 20) {
  std::uniform_int_distribution<int> size(1, max_atoms);
  std::uniform_real_distribution<double> logw(std::log(1e-2), std::log(1e2)), val(-10, 10);
  Sample s;
  const int n = size(rng);
  for (int i = 0; i < n; ++i) {
    s.mu.push_back(std::exp(logw(rng)));
    s.f.push_back(val(rng));
  }
  return s;
}

oracle::Fn fn(const YoungFunction& phi) {
  return [phi](double x) { return phi(x); };
}

std::vector<YoungFunction> families() {
  return {YoungFunction::power_abs(1.5), YoungFunction::power_abs(2.0),
          YoungFunction::power_over_p(3.0), YoungFunction::abs_value(),
          YoungFunction::exp_minus_one()};
}

}  // namespace

TEST(Norms, ModularOfIndicator) {
  const auto X = MeasureSpace::finite({{"a", 4.0}, {"b", 1.0}});
  const auto m = modular(YoungFunction::power_abs(2.0), X, SimpleFunction::of({1.0, 0.0}));
  EXPECT_TRUE(m.exact());
  EXPECT_DOUBLE_EQ(m.value, 4.0);
}

TEST(Norms, IndicatorLuxemburgNorm) {
  // chi_A with mu(A) = 4: N = 1 / Phi^-1(1 / 4) = 2 for Phi = x^2.
  const auto X = MeasureSpace::finite({{"a", 4.0}, {"b", 1.0}});
  const auto n = luxemburg_norm(YoungFunction::power_abs(2.0), X, SimpleFunction::of({1.0, 0.0}));
  EXPECT_NEAR(n.value, 2.0, 1e-9);
}

TEST(Norms, LuxemburgMatchesBisectionOracle) {
  std::mt19937_64 rng(3);
  for (const auto& phi : families()) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto s = random_sample(rng);
      const auto X = MeasureSpace::finite(s.mu);
      const double got = luxemburg_norm(phi, X, SimpleFunction::of(s.f)).value;
      const double ref = oracle::luxemburg(fn(phi), s.f, s.mu);
      EXPECT_NEAR(got, ref, 1e-9 * std::max(1.0, ref)) << phi.name();
    }
  }
}

TEST(Norms, ForcedBisectionMatchesClosedForm) {
  std::mt19937_64 rng(5);
  const auto phi = YoungFunction::power_abs(3.0);
  NormOptions forced;
  forced.force_bisection = true;
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_sample(rng);
    const auto X = MeasureSpace::finite(s.mu);
    const auto f = SimpleFunction::of(s.f);
    const double a = luxemburg_norm(phi, X, f).value;
    EXPECT_NEAR(luxemburg_norm(phi, X, f, forced).value, a, 1e-10 * std::max(1.0, a));
  }
}

TEST(Norms, OrliczMatchesAmemiyaOracle) {
  std::mt19937_64 rng(9);
  for (const auto& phi : families()) {
    if (std::holds_alternative<YoungFunction::AbsValue>(phi.family())) continue;
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = random_sample(rng, 8);
      const auto X = MeasureSpace::finite(s.mu);
      const double got = orlicz_norm(phi, X, SimpleFunction::of(s.f)).value;
      const double ref = oracle::amemiya(fn(phi), s.f, s.mu);
      EXPECT_NEAR(got, ref, 1e-6 * std::max(1.0, ref)) << phi.name();
    }
  }
}

TEST(Norms, OrliczForAbsIsSupNorm) {
  // Psi is the indicator of [0, 1], so the dual ball is {|g| <= 1}: norm = sum |f| mu.
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 2.0, 0.5});
  const auto n = orlicz_norm(YoungFunction::abs_value(), X, SimpleFunction::of({1.0, -2.0, 4.0}));
  EXPECT_NEAR(n.value, 7.0, 1e-9);
}

TEST(Norms, SandwichLuxemburgOrlicz) {
  std::mt19937_64 rng(17);
  for (const auto& phi : families()) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = random_sample(rng, 10);
      const auto X = MeasureSpace::finite(s.mu);
      const auto f = SimpleFunction::of(s.f);
      const double l = luxemburg_norm(phi, X, f).value;
      const double o = orlicz_norm(phi, X, f).value;
      EXPECT_LE(l, o * (1 + 1e-9)) << phi.name();
      EXPECT_LE(o, 2 * l * (1 + 1e-9)) << phi.name();
    }
  }
}

TEST(Norms, GridOracleApproachesFromBelow) {
  std::mt19937_64 rng(19);
  const auto phi = YoungFunction::power_abs(2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_sample(rng, 4);
    const auto X = MeasureSpace::finite(s.mu);
    const auto f = SimpleFunction::of(s.f);
    const double o = orlicz_norm(phi, X, f).value;
    const double g = orlicz_norm_grid(phi, X, f).value;
    EXPECT_LE(g, o * (1 + 1e-9));
    EXPECT_NEAR(g, o, 1e-4 * std::max(1.0, o));
  }
}

TEST(Norms, HolderPairing) {
  const auto X = MeasureSpace::finite(std::vector<double>{1.0, 2.0});
  EXPECT_DOUBLE_EQ(holder_pairing(X, SimpleFunction::of({1.0, 3.0}), SimpleFunction::of({2.0, -1.0})),
                   -4.0);
}

TEST(Norms, CountableGeometricConstant) {
  // mu(n) = 2^-n, f = 1: rho(f / k) = 1 / k^2, so N = 1.
  const auto X = MeasureSpace::countable({WeightLaw::Geometric{0.5, 0.5}}, 16);
  const auto f = SimpleFunction::constant(X, 1.0);
  EXPECT_NEAR(modular(YoungFunction::power_abs(2.0), X, f).value, 1.0, 1e-12);
  EXPECT_NEAR(luxemburg_norm(YoungFunction::power_abs(2.0), X, f).value, 1.0, 1e-9);
}

TEST(Norms, MembershipFailsForDivergentModular) {
  // Counting measure, f = 1 is not in any L^Phi.
  const auto X = MeasureSpace::countable({WeightLaw::Constant{1.0}}, 8);
  EXPECT_EQ(membership(YoungFunction::power_abs(2.0), X, SimpleFunction::constant(X, 1.0)).status,
            Status::Fails);
}
