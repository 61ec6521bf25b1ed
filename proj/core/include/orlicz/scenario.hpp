#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orlicz/measure.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Params {
  double tol = 1e-12;
  Atom depth = 64;
  std::uint64_t seed = 42;
  double range_lo = 1e-6;
  double range_hi = 1e6;
};

/// One command listed in a scenario file; names are checked at load time.
struct ScenarioRun {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::string> young;
};

struct Scenario {
  std::optional<MeasureSpace> space;
  std::map<std::string, YoungFunction> young;
  std::map<std::string, SimpleFunction> functions;
  std::map<std::string, Transformation> maps;
  std::vector<ScenarioRun> runs;
  Params params;
  /// Space depth as written; --depth may override it for countable spaces.
  bool depth_from_params = false;

  const SimpleFunction& function(const std::string& name) const;
  const Transformation& map(const std::string& name) const;
  /// A named Young function, or a descriptor such as "power_abs:2".
  YoungFunction young_function(const std::string& name_or_spec) const;
};

/// JSON parse with line and column in the error message.
nlohmann::json parse_json_text(const std::string& text);
Scenario parse_scenario(const nlohmann::json& j);
/// Parse errors carry the line and column; validation errors carry the JSON path.
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);
nlohmann::json to_json(const Scenario& s);

nlohmann::json number_json(double v);  // +inf as "inf"
double number_from(const nlohmann::json& j, const std::string& path);

nlohmann::json to_json(const MeasureSpace& X);
nlohmann::json to_json(const SimpleFunction& f);
nlohmann::json to_json(const Transformation& T);
nlohmann::json to_json(const TailLaw& law);
nlohmann::json to_json(const Verdict& v);

}  // namespace orlicz
