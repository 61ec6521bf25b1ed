#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orlicz/scenario.hpp"

namespace orlicz {

/// A random finite instance: weights, a map, two functions and a Young function.
struct Instance {
  std::vector<double> weights;
  std::vector<Atom> targets;
  std::vector<Atom> permutation;  // a bijective second map
  std::vector<double> f;
  std::vector<double> g;
  std::string young;

  MeasureSpace space() const { return MeasureSpace::finite(weights); }
  nlohmann::json to_json() const;
};

/// Atom counts in [min_atoms, max_atoms], weights log-uniform in [1e-3, 1e3],
/// uniform targets, values uniform in [-10, 10], Young function from the
/// closed-form families.
Instance random_instance(std::mt19937_64& rng, int min_atoms = 2, int max_atoms = 50);
std::string random_young(std::mt19937_64& rng);
/// Drops atoms and zeroes values while `fails` stays true.
Instance minimize(Instance inst, const std::function<bool(const Instance&)>& fails);

struct PropertyResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::optional<nlohmann::json> first_failure;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  int count = 200;
  std::vector<Scenario> scenarios;
};

struct SuiteReport {
  std::uint64_t seed = 42;
  int count = 0;
  std::vector<PropertyResult> properties;  // sorted by name

  int passed() const;
  int failed() const;
  const PropertyResult* find(const std::string& name) const;
};

SuiteReport verify_suite(const SuiteOptions& opts);
nlohmann::json to_json(const SuiteReport& r);

}  // namespace orlicz
