#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "orlicz/commands.hpp"
#include "orlicz/verify.hpp"

namespace {

constexpr const char* kSeedEnv = "ORLICZ_SEED";

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw orlicz::ScenarioError("cannot open scenario '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Flags {
  std::string scenario;
  std::optional<double> tol;
  std::optional<long long> depth;
  std::optional<std::uint64_t> seed;
  std::vector<double> range;
  std::string format = "text";
  std::optional<std::string> young;
  std::optional<double> p, q, N;
  int count = 200;
  bool timestamp = true;
};

orlicz::Scenario load(const std::string& path, const Flags& fl) {
  nlohmann::json j = nlohmann::json::object();
  if (!path.empty()) {
    try {
      j = orlicz::parse_json_text(read_file(path));
    } catch (const orlicz::ScenarioError& e) {
      throw orlicz::ScenarioError(path + ": " + e.what());
    }
  }
  if (fl.depth) j["params"]["depth"] = *fl.depth;
  if (fl.tol) j["params"]["tol"] = *fl.tol;
  if (fl.range.size() == 2) j["params"]["range"] = fl.range;
  try {
    return orlicz::parse_scenario(j);
  } catch (const orlicz::ScenarioError& e) {
    throw orlicz::ScenarioError((path.empty() ? std::string("flags") : path) + ": " + e.what());
  }
}

// Flag beats environment beats scenario beats the built-in default.
std::string resolve_seed(orlicz::Scenario& s, const Flags& fl, bool scenario_has_seed) {
  if (fl.seed) {
    s.params.seed = *fl.seed;
    return "flag";
  }
  if (const char* env = std::getenv(kSeedEnv)) {
    try {
      s.params.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw orlicz::ScenarioError(std::string(kSeedEnv) + " is not an unsigned integer");
    }
    return std::string("env ") + kSeedEnv;
  }
  return scenario_has_seed ? "scenario" : "default";
}

bool has_seed(const std::string& path) {
  if (path.empty()) return false;
  const auto j = orlicz::parse_json_text(read_file(path));
  return j.contains("params") && j["params"].contains("seed");
}

void emit(nlohmann::json report, const Flags& fl) {
  if (fl.timestamp) report["timestamp"] = timestamp();
  if (fl.format == "structured") std::cout << report.dump(2) << "\n";
  else std::cout << orlicz::render_text(report);
}

int exit_code_for(const nlohmann::json& results) {
  for (const char* key : {"within_tolerance", "norms_agree", "identity_holds", "agree"})
    if (results.contains(key) && results[key] == false) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz-space numerics and composition-operator verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags fl;
  app.add_option("-s,--scenario", fl.scenario, "Scenario file (JSON)");
  app.add_option("--tol", fl.tol, "Numeric tolerance (default 1e-12)");
  app.add_option("--depth", fl.depth, "Truncation depth M for countable spaces (default 64)");
  app.add_option("--seed", fl.seed, std::string("RNG seed (default 42; env ") + kSeedEnv + ")");
  app.add_option("--range", fl.range, "Growth probe interval lo hi (default 1e-6 1e6)")->expected(2);
  app.add_option("--format", fl.format, "Report format (default text)")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--young", fl.young, "Young function name or descriptor, e.g. power_abs:2");
  app.add_flag("!--no-timestamp", fl.timestamp, "Omit the timestamp field");

  const std::map<std::string, std::string> about = {
      {"norm", "Modular, Luxemburg and Orlicz norms of FUNCTION"},
      {"conjugate", "Complementary Young function"},
      {"growth", "Delta_2, Delta', nabla' and N-function probes"},
      {"hderiv", "Radon-Nikodym derivative of MAP"},
      {"density", "Density verdict for the composition operator of MAP"},
      {"domain", "Domain membership of FUNCTION for MAP"},
      {"approximate", "Truncation approximants of FUNCTION for MAP"},
      {"bounded", "Boundedness verdict for MAP"},
      {"lp-check", "L^p multiplication identity for MAP and FUNCTION"},
      {"adjoint-check", "Adjoint duality pairing for MAP, FUNCTION and G"},
  };
  std::vector<std::string> args;
  for (const auto& name : orlicz::command_names()) {
    const auto it = about.find(name);
    auto* sub = app.add_subcommand(name, it != about.end() ? it->second : name);
    sub->add_option("args", args, "Function and map names from the scenario");
    if (name == "lp-check") {
      sub->add_option("--p", fl.p, "Exponent p (default 2)");
      sub->add_option("--q", fl.q, "Exponent q (default p)");
    }
    if (name == "approximate") sub->add_option("--N", fl.N, "Truncation index N >= 2");
  }
  auto* run = app.add_subcommand("run", "Run every command listed in the scenario");
  std::vector<std::string> extra_scenarios;
  auto* verify = app.add_subcommand("verify", "Run the property suite on random instances and the corpus");
  verify->add_option("--count", fl.count, "Random instances (default 200)");
  verify->add_option("scenarios", extra_scenarios, "Extra scenario files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    orlicz::Scenario s = load(fl.scenario, fl);
    const std::string seed_source = resolve_seed(s, fl, has_seed(fl.scenario));

    if (verify->parsed()) {
      orlicz::SuiteOptions opts;
      opts.seed = s.params.seed;
      opts.count = fl.count;
      if (!fl.scenario.empty()) opts.scenarios.push_back(s);
      for (const auto& path : extra_scenarios) opts.scenarios.push_back(load(path, fl));
      const orlicz::SuiteReport r = orlicz::verify_suite(opts);
      nlohmann::json report{{"command", "verify"}, {"version", orlicz::kVersion}, {"seed_source", seed_source},
                            {"results", orlicz::to_json(r)}};
      emit(report, fl);
      return r.failed() == 0 ? 0 : 1;
    }

    std::vector<orlicz::CommandRequest> requests;
    if (run->parsed()) {
      for (const auto& r : s.runs) requests.push_back({r.command, r.args, r.young, {}});
      if (requests.empty()) throw orlicz::UsageError("the scenario lists no runs");
    } else {
      orlicz::CommandRequest req;
      req.command = app.get_subcommands().front()->get_name();
      req.args = args;
      req.young = fl.young;
      if (fl.p) req.numbers["p"] = *fl.p;
      if (fl.q) req.numbers["q"] = *fl.q;
      if (fl.N) req.numbers["N"] = *fl.N;
      requests.push_back(req);
    }
    int code = 0;
    for (const auto& req : requests) {
      nlohmann::json report = orlicz::run_command(s, req);
      report["seed_source"] = seed_source;
      code = std::max(code, exit_code_for(report["results"]));
      emit(report, fl);
    }
    return code;
  } catch (const orlicz::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
  } catch (const orlicz::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const orlicz::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
