#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace orlicz {

/// Three-valued analysis outcome.  Numerical probes cannot decide limits, so
/// every analysis that depends on one may answer Inconclusive.
enum class Status { Holds, Fails, Inconclusive };

std::string to_string(Status s);

struct Verdict {
  Status status = Status::Inconclusive;
  std::string certificate;          // human-readable reason or cover description
  std::optional<long long> witness; // 1-based atom position, when one exists

  static Verdict holds(std::string why) { return {Status::Holds, std::move(why), std::nullopt}; }
  static Verdict fails(std::string why, std::optional<long long> at = std::nullopt) {
    return {Status::Fails, std::move(why), at};
  }
  static Verdict inconclusive(std::string why) {
    return {Status::Inconclusive, std::move(why), std::nullopt};
  }
  bool decisive() const { return status != Status::Inconclusive; }
};

/// Thrown when an operation's documented precondition is not met.
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Thrown when a tail quantity has no closed form and cannot be bounded.
struct UnresolvedTail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace orlicz
