#include "orlicz/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "orlicz/extended.hpp"

namespace orlicz {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ScenarioError(path + ": " + what);
}

const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path, "missing field '" + key + "'");
  return j.at(key);
}

long long integer_from(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

WeightLaw weight_law_from(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) fail(path, "expected one of constant, geometric, power_law");
  const std::string name = j.begin().key();
  const json& body = j.begin().value();
  const std::string p = path + "/" + name;
  if (name == "constant") {
    const double c = number_from(need(body, "c", p), p + "/c");
    if (!(c > 0)) fail(p + "/c", "must be positive");
    return {WeightLaw::Constant{c}};
  }
  if (name == "geometric") {
    const double a = number_from(need(body, "a", p), p + "/a");
    const double r = number_from(need(body, "r", p), p + "/r");
    if (!(a > 0) || !(r > 0 && r < 1)) fail(p, "needs a > 0 and 0 < r < 1");
    return {WeightLaw::Geometric{a, r}};
  }
  if (name == "power_law") {
    const double c = number_from(need(body, "c", p), p + "/c");
    const double s = number_from(need(body, "s", p), p + "/s");
    if (!(c > 0) || !(s > 0)) fail(p, "needs c > 0 and s > 0");
    return {WeightLaw::PowerLaw{c, s}};
  }
  fail(path, "unknown weight law '" + name + "'");
}

json weight_law_json(const WeightLaw& law) {
  return std::visit(
      [](const auto& w) -> json {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, WeightLaw::Constant>) return {{"constant", {{"c", w.c}}}};
        else if constexpr (std::is_same_v<T, WeightLaw::Geometric>)
          return {{"geometric", {{"a", w.a}, {"r", w.r}}}};
        else return {{"power_law", {{"c", w.c}, {"s", w.s}}}};
      },
      law.family);
}

MeasureSpace space_from(const json& j, const std::string& path, std::optional<Atom> depth_override) {
  const std::string kind = need(j, "kind", path).get<std::string>();
  if (kind == "finite") {
    const json& atoms = need(j, "atoms", path);
    if (!atoms.is_array() || atoms.empty()) fail(path + "/atoms", "expected a non-empty array");
    std::vector<std::pair<std::string, double>> list;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string p = path + "/atoms/" + std::to_string(i);
      const json& a = atoms[i];
      if (a.is_array() && a.size() == 2 && a[0].is_string())
        list.emplace_back(a[0].get<std::string>(), number_from(a[1], p + "/1"));
      else
        list.emplace_back(std::to_string(i + 1), number_from(a, p));
      if (!(list.back().second > 0) || std::isinf(list.back().second))
        fail(p, "weight must be positive and finite");
    }
    try {
      return MeasureSpace::finite(std::move(list));
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  if (kind == "countable") {
    const WeightLaw law = weight_law_from(need(j, "law", path), path + "/law");
    const Atom depth = depth_override ? *depth_override : integer_from(need(j, "depth", path), path + "/depth");
    if (depth < 1) fail(path + "/depth", "must be positive");
    return MeasureSpace::countable(law, depth);
  }
  fail(path + "/kind", "expected finite or countable");
}

Atom atom_from(const json& j, const MeasureSpace& X, const std::string& path) {
  if (j.is_string()) {
    if (auto a = X.find_atom(j.get<std::string>())) return *a;
    fail(path, "unknown atom '" + j.get<std::string>() + "'");
  }
  const Atom a = integer_from(j, path);
  if (!X.contains(a)) fail(path, "atom " + std::to_string(a) + " outside the space");
  return a;
}

TailTerm term_from(const json& j, const std::string& path) {
  TailTerm t;
  t.coef = number_from(need(j, "coef", path), path + "/coef");
  if (j.contains("ratio")) t.ratio = number_from(j.at("ratio"), path + "/ratio");
  if (j.contains("factors")) {
    for (std::size_t i = 0; i < j.at("factors").size(); ++i) {
      const json& f = j.at("factors")[i];
      const std::string p = path + "/factors/" + std::to_string(i);
      if (!f.is_array() || f.size() != 2) fail(p, "expected [beta, s]");
      t.factors.push_back({number_from(f[0], p + "/0"), number_from(f[1], p + "/1")});
    }
  }
  if (j.contains("lattice")) {
    const json& l = j.at("lattice");
    const std::string p = path + "/lattice";
    t.support.map.scale = integer_from(need(l, "scale", p), p + "/scale");
    t.support.map.degree = static_cast<int>(integer_from(need(l, "degree", p), p + "/degree"));
    t.support.map.offset = integer_from(need(l, "offset", p), p + "/offset");
    if (t.support.map.scale < 1 || t.support.map.degree < 1) fail(p, "scale and degree must be positive");
  }
  if (j.contains("first")) t.support.first = integer_from(j.at("first"), path + "/first");
  return t.normalize();
}

json term_json(const TailTerm& t) {
  json j{{"coef", t.coef}, {"ratio", t.ratio}, {"first", t.support.first}};
  j["factors"] = json::array();
  for (const auto& f : t.factors) j["factors"].push_back({f.beta, f.s});
  j["lattice"] = {{"scale", t.support.map.scale},
                  {"degree", t.support.map.degree},
                  {"offset", t.support.map.offset}};
  return j;
}

SimpleFunction function_from(const json& j, const MeasureSpace& X, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("constant")) return SimpleFunction::constant(X, number_from(j.at("constant"), path + "/constant"));
  if (j.contains("indicator")) {
    const json& ids = j.at("indicator");
    if (!ids.is_array()) fail(path + "/indicator", "expected an array of atoms");
    SimpleFunction f;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const Atom a = atom_from(ids[i], X, path + "/indicator/" + std::to_string(i));
      if (f.explicit_size() < a) f.values.resize(static_cast<std::size_t>(a), 0.0);
      f.values[static_cast<std::size_t>(a - 1)] = 1.0;
    }
    return f;
  }
  SimpleFunction f;
  if (j.contains("values")) {
    const json& v = j.at("values");
    if (!v.is_array()) fail(path + "/values", "expected an array");
    for (std::size_t i = 0; i < v.size(); ++i)
      f.values.push_back(number_from(v[i], path + "/values/" + std::to_string(i)));
  }
  if (X.is_finite() && f.explicit_size() > X.depth())
    fail(path + "/values", "more values than atoms");
  if (j.contains("tail")) {
    const json& t = j.at("tail");
    if (t == "unresolved") {
      f.tail = TailLaw::unresolved();
    } else {
      if (!t.is_array()) fail(path + "/tail", "expected an array of terms or \"unresolved\"");
      if (X.is_finite() && !t.empty()) fail(path + "/tail", "finite spaces have no tail");
      for (std::size_t i = 0; i < t.size(); ++i)
        f.tail.add(term_from(t[i], path + "/tail/" + std::to_string(i)));
    }
  }
  return f;
}

MapLaw law_from(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "identity") return MapLaw::identity();
    if (s == "pair_swap") return {MapLaw::PairSwap{}};
    if (s == "unresolved") return {MapLaw::Unresolved{}};
    fail(path, "unknown map law '" + s + "'");
  }
  if (!j.is_object() || j.size() != 1) fail(path, "expected a single-key map law");
  const std::string name = j.begin().key();
  const json& body = j.begin().value();
  const std::string p = path + "/" + name;
  if (name == "affine")
    return {MapLaw::Affine{integer_from(need(body, "a", p), p + "/a"), integer_from(need(body, "b", p), p + "/b")}};
  if (name == "constant") return {MapLaw::Constant{integer_from(body, p)}};
  if (name == "power")
    return {MapLaw::Power{integer_from(need(body, "a", p), p + "/a"),
                          static_cast<int>(integer_from(need(body, "e", p), p + "/e"))}};
  if (name == "ceil_div") return {MapLaw::CeilDiv{integer_from(body, p)}};
  fail(path, "unknown map law '" + name + "'");
}

json law_json(const MapLaw& law) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, MapLaw::Affine>) {
          if (r.a == 1 && r.b == 0) return "identity";
          return {{"affine", {{"a", r.a}, {"b", r.b}}}};
        } else if constexpr (std::is_same_v<T, MapLaw::Constant>) return {{"constant", r.c}};
        else if constexpr (std::is_same_v<T, MapLaw::Power>) return {{"power", {{"a", r.a}, {"e", r.e}}}};
        else if constexpr (std::is_same_v<T, MapLaw::CeilDiv>) return {{"ceil_div", r.d}};
        else if constexpr (std::is_same_v<T, MapLaw::PairSwap>) return "pair_swap";
        else return "unresolved";
      },
      law.rule);
}

Transformation map_from(const json& j, const MeasureSpace& X, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const MapLaw law = j.contains("law") ? law_from(j.at("law"), path + "/law") : MapLaw::identity();
  std::vector<Atom> targets;
  if (j.contains("targets")) {
    const json& t = j.at("targets");
    if (!t.is_array()) fail(path + "/targets", "expected an array");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string p = path + "/targets/" + std::to_string(i);
      const Atom a = t[i].is_string() ? atom_from(t[i], X, p) : integer_from(t[i], p);
      if (a < 1 || (X.is_finite() && a > X.depth())) fail(p, "target outside the space");
      targets.push_back(a);
    }
  }
  if (X.is_finite() && static_cast<Atom>(targets.size()) != X.depth())
    fail(path + "/targets", "a finite map lists one target per atom");
  if (!X.is_finite()) {
    if (!law.resolved() && static_cast<Atom>(targets.size()) < X.depth())
      fail(path + "/targets", "an unresolved law needs explicit targets through the depth");
    for (Atom n = static_cast<Atom>(targets.size()) + 1; n <= X.depth(); ++n) targets.push_back(law.at(n));
  }
  try {
    return Transformation(X, std::move(targets), X.is_finite() ? MapLaw{MapLaw::Unresolved{}} : law);
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

YoungFunction young_from(const json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_young(j.get<std::string>());
    const std::string family = need(j, "family", path).get<std::string>();
    if (family == "power_abs") return YoungFunction::power_abs(number_from(need(j, "p", path), path + "/p"));
    if (family == "power_over_p") return YoungFunction::power_over_p(number_from(need(j, "p", path), path + "/p"));
    if (family == "exp_minus_one") return YoungFunction::exp_minus_one();
    if (family == "abs") return YoungFunction::abs_value();
    if (family == "conjugate") return conjugate(young_from(need(j, "of", path), path + "/of"));
    if (family == "piecewise") {
      std::vector<std::pair<double, double>> points;
      const json& pts = need(j, "points", path);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string p = path + "/points/" + std::to_string(i);
        if (!pts[i].is_array() || pts[i].size() != 2) fail(p, "expected [x, Phi(x)]");
        points.emplace_back(number_from(pts[i][0], p + "/0"), number_from(pts[i][1], p + "/1"));
      }
      if (j.contains("tail_slope"))
        return YoungFunction::piecewise(std::move(points), number_from(j.at("tail_slope"), path + "/tail_slope"));
      return YoungFunction::piecewise(std::move(points));
    }
    fail(path + "/family", "unknown Young family '" + family + "'");
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

}  // namespace

json number_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j == "inf") return kInf;
  if (j == "-inf") return -kInf;
  fail(path, "expected a number or \"inf\"");
}

const SimpleFunction& Scenario::function(const std::string& name) const {
  auto it = functions.find(name);
  if (it == functions.end()) throw ScenarioError("unknown function '" + name + "'");
  return it->second;
}

const Transformation& Scenario::map(const std::string& name) const {
  auto it = maps.find(name);
  if (it == maps.end()) throw ScenarioError("unknown map '" + name + "'");
  return it->second;
}

YoungFunction Scenario::young_function(const std::string& name_or_spec) const {
  if (auto it = young.find(name_or_spec); it != young.end()) return it->second;
  try {
    return parse_young(name_or_spec);
  } catch (const std::exception& e) {
    throw ScenarioError("unknown Young function '" + name_or_spec + "': " + e.what());
  }
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) fail("", "scenario must be a JSON object");
  Scenario s;
  if (j.contains("params")) {
    const json& p = j.at("params");
    if (p.contains("tol")) s.params.tol = number_from(p.at("tol"), "/params/tol");
    if (p.contains("depth")) {
      s.params.depth = integer_from(p.at("depth"), "/params/depth");
      s.depth_from_params = true;
    }
    if (p.contains("seed")) s.params.seed = static_cast<std::uint64_t>(integer_from(p.at("seed"), "/params/seed"));
    if (p.contains("range")) {
      const json& r = p.at("range");
      if (!r.is_array() || r.size() != 2) fail("/params/range", "expected [lo, hi]");
      s.params.range_lo = number_from(r[0], "/params/range/0");
      s.params.range_hi = number_from(r[1], "/params/range/1");
      if (!(0 < s.params.range_lo && s.params.range_lo < s.params.range_hi))
        fail("/params/range", "needs 0 < lo < hi");
    }
    if (!(s.params.tol > 0)) fail("/params/tol", "must be positive");
  }
  if (j.contains("space")) {
    std::optional<Atom> depth;
    if (s.depth_from_params) depth = s.params.depth;
    s.space = space_from(j.at("space"), "/space", depth);
    if (!s.space->is_finite()) s.params.depth = s.space->depth();
  }
  if (j.contains("young")) {
    for (const auto& [name, spec] : j.at("young").items())
      s.young.emplace(name, young_from(spec, "/young/" + name));
  }
  const bool needs_space = j.contains("functions") || j.contains("maps");
  if (needs_space && !s.space) fail("/space", "functions and maps need a space");
  if (j.contains("functions"))
    for (const auto& [name, body] : j.at("functions").items())
      s.functions.emplace(name, function_from(body, *s.space, "/functions/" + name));
  if (j.contains("maps"))
    for (const auto& [name, body] : j.at("maps").items())
      s.maps.emplace(name, map_from(body, *s.space, "/maps/" + name));
  if (j.contains("runs")) {
    const json& runs = j.at("runs");
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const std::string p = "/runs/" + std::to_string(i);
      ScenarioRun r;
      r.command = need(runs[i], "command", p).get<std::string>();
      if (runs[i].contains("args")) r.args = runs[i].at("args").get<std::vector<std::string>>();
      if (runs[i].contains("young")) r.young = runs[i].at("young").get<std::string>();
      for (std::size_t k = 0; k < r.args.size(); ++k)
        if (!s.functions.count(r.args[k]) && !s.maps.count(r.args[k]))
          fail(p + "/args/" + std::to_string(k), "unknown function or map '" + r.args[k] + "'");
      if (r.young) {
        try {
          (void)s.young_function(*r.young);
        } catch (const ScenarioError& e) {
          fail(p + "/young", e.what());
        }
      }
      s.runs.push_back(std::move(r));
    }
  }
  return s;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ScenarioError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                        e.what());
  }
}

Scenario parse_scenario_text(const std::string& text) { return parse_scenario(parse_json_text(text)); }

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario_text(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

json to_json(const MeasureSpace& X) {
  if (!X.is_finite()) return {{"kind", "countable"}, {"law", weight_law_json(*X.law())}, {"depth", X.depth()}};
  json atoms = json::array();
  for (Atom n = 1; n <= X.depth(); ++n) atoms.push_back({X.id(n), X.weight(n)});
  return {{"kind", "finite"}, {"atoms", atoms}};
}

json to_json(const TailLaw& law) {
  if (!law.resolved) return "unresolved";
  json terms = json::array();
  for (const auto& t : law.terms) terms.push_back(term_json(t));
  return terms;
}

json to_json(const SimpleFunction& f) {
  json values = json::array();
  for (double v : f.values) values.push_back(number_json(v));
  return {{"values", values}, {"tail", to_json(f.tail)}};
}

json to_json(const Transformation& T) {
  json j{{"targets", T.targets()}};
  if (!T.space().is_finite()) j["law"] = law_json(T.law());
  return j;
}

json to_json(const Verdict& v) {
  json j{{"status", to_string(v.status)}, {"certificate", v.certificate}};
  if (v.witness) j["witness"] = *v.witness;
  return j;
}

json to_json(const Scenario& s) {
  json j;
  j["params"] = {{"tol", s.params.tol},
                 {"seed", s.params.seed},
                 {"range", {s.params.range_lo, s.params.range_hi}}};
  if (s.depth_from_params) j["params"]["depth"] = s.params.depth;
  if (s.space) j["space"] = to_json(*s.space);
  for (const auto& [name, y] : s.young) j["young"][name] = y.name();
  for (const auto& [name, f] : s.functions) j["functions"][name] = to_json(f);
  for (const auto& [name, m] : s.maps) j["maps"][name] = to_json(m);
  for (const auto& r : s.runs) {
    json run{{"command", r.command}, {"args", r.args}};
    if (r.young) run["young"] = *r.young;
    j["runs"].push_back(run);
  }
  return j;
}

}  // namespace orlicz
