#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orlicz/scenario.hpp"

namespace orlicz {

inline constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommandRequest {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::string> young;
  std::map<std::string, double> numbers;  // p, q, N
};

const std::vector<std::string>& command_names();

/// Runs one command; unknown names throw UsageError, precondition failures
/// propagate unchanged.
nlohmann::json run_command(const Scenario& s, const CommandRequest& req);

/// Renders a report as indented plain text.
std::string render_text(const nlohmann::json& report);

}  // namespace orlicz
