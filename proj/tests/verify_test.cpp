#include <gtest/gtest.h>

#include <random>

#include "orlicz/verify.hpp"

using namespace orlicz;

TEST(Verify, RandomInstanceShape) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto inst = random_instance(rng);
    const auto n = inst.weights.size();
    EXPECT_GE(n, 2u);
    EXPECT_LE(n, 50u);
    EXPECT_EQ(inst.targets.size(), n);
    EXPECT_EQ(inst.permutation.size(), n);
    EXPECT_EQ(inst.f.size(), n);
    for (double w : inst.weights) {
      EXPECT_GE(w, 1e-3);
      EXPECT_LE(w, 1e3);
    }
    for (Atom t : inst.targets) {
      EXPECT_GE(t, 1);
      EXPECT_LE(t, static_cast<Atom>(n));
    }
    std::vector<Atom> p = inst.permutation;
    std::sort(p.begin(), p.end());
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(p[k], static_cast<Atom>(k + 1));
  }
}

TEST(Verify, SameSeedSameInstances) {
  std::mt19937_64 a(99), b(99);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(random_instance(a).to_json(), random_instance(b).to_json());
}

TEST(Verify, MinimizeShrinksFailure) {
  std::mt19937_64 rng(5);
  Instance inst = random_instance(rng, 20, 20);
  inst.f[7] = 42.0;
  const auto fails = [](const Instance& i) {
    return std::find(i.f.begin(), i.f.end(), 42.0) != i.f.end();
  };
  const auto small = minimize(inst, fails);
  EXPECT_TRUE(fails(small));
  EXPECT_EQ(small.weights.size(), 1u);
  EXPECT_EQ(small.f, (std::vector<double>{42.0}));
}

TEST(Verify, SmallSuitePasses) {
  SuiteOptions opts;
  opts.count = 10;
  const auto r = verify_suite(opts);
  EXPECT_EQ(r.failed(), 0) << to_json(r).dump(2);
  EXPECT_GT(r.passed(), 0);
  EXPECT_NE(r.find("norms.sandwich"), nullptr);
  EXPECT_NE(r.find("adjoint.duality"), nullptr);
}
