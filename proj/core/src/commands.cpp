#include "orlicz/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "orlicz/adjoint.hpp"
#include "orlicz/growth.hpp"
#include "orlicz/lp.hpp"

namespace orlicz {

using nlohmann::json;

namespace {

json growth_json(const GrowthVerdict& g) {
  json j{{"kind", to_string(g.kind)},
         {"constant", number_json(g.constant)},
         {"x0", number_json(g.x0)},
         {"grid_points", g.grid_points},
         {"note", g.note}};
  if (g.kind == GrowthVerdict::Kind::ViolatedAt) j["witness"] = number_json(g.witness);
  return j;
}

json domain_json(const DomainVerdict& d) {
  json j{{"verdict", to_string(d.kind)},
         {"h_facet", to_json(d.h_facet)},
         {"sigma_facet", to_json(d.sigma_facet)},
         {"facets_agree", d.facets_agree},
         {"nu", d.nu}};
  if (d.weighted_facet) j["weighted_facet"] = to_json(*d.weighted_facet);
  if (d.witness) j["witness"] = *d.witness;
  return j;
}

json norm_json(const NormResult& r) {
  return {{"value", number_json(r.value)},
          {"method", to_string(r.method)},
          {"achieved_tolerance", number_json(r.achieved_tolerance)},
          {"resolved", r.resolved},
          {"note", r.note}};
}

json modular_json(const ModularResult& m) {
  return {{"value", number_json(m.value)},
          {"lower", number_json(m.lower)},
          {"upper", number_json(m.upper)},
          {"resolved", m.resolved}};
}

const std::string& arg(const CommandRequest& req, std::size_t i, const char* what) {
  if (req.args.size() <= i) throw UsageError(req.command + ": missing argument <" + what + ">");
  return req.args[i];
}

double number(const CommandRequest& req, const std::string& key, double fallback) {
  auto it = req.numbers.find(key);
  return it == req.numbers.end() ? fallback : it->second;
}

YoungFunction young_for(const Scenario& s, const CommandRequest& req) {
  if (req.young) return s.young_function(*req.young);
  if (s.young.size() == 1) return s.young.begin()->second;
  return YoungFunction::power_abs(2.0);
}

const MeasureSpace& space_of(const Scenario& s, const std::string& command) {
  if (!s.space) throw UsageError(command + ": the scenario defines no space");
  return *s.space;
}

ProbeOptions probe_of(const Scenario& s) {
  ProbeOptions o;
  o.range.lo = s.params.range_lo;
  o.range.hi = s.params.range_hi;
  return o;
}

json cmd_norm(const Scenario& s, const CommandRequest& req) {
  const YoungFunction phi = young_for(s, req);
  const MeasureSpace& X = space_of(s, req.command);
  const SimpleFunction& f = s.function(arg(req, 0, "function"));
  NormOptions opts;
  opts.tolerance = s.params.tol;
  json j{{"young", phi.name()},
         {"modular", modular_json(modular(phi, X, f))},
         {"membership", to_json(membership(phi, X, f))},
         {"luxemburg", norm_json(luxemburg_norm(phi, X, f, opts))}};
  if (X.is_finite() || f.tail.is_zero()) j["orlicz"] = norm_json(orlicz_norm(phi, X, f, opts));
  j["value"] = j["luxemburg"]["value"];
  return j;
}

json cmd_conjugate(const Scenario& s, const CommandRequest& req) {
  const YoungFunction phi = young_for(s, req);
  const YoungFunction psi = conjugate(phi);
  json samples = json::array();
  for (double x : {0.5, 1.0, 2.0})
    samples.push_back({{"x", x}, {"phi", number_json(phi(x))}, {"psi", number_json(psi(x))}});
  return {{"young", phi.name()}, {"conjugate", psi.name()}, {"samples", samples}};
}

json cmd_growth(const Scenario& s, const CommandRequest& req) {
  const YoungFunction phi = young_for(s, req);
  const ProbeOptions o = probe_of(s);
  const SumBounds sb = sum_bound_constants(phi, o);
  return {{"young", phi.name()},
          {"delta2", growth_json(delta2_probe(phi, o))},
          {"delta_prime", growth_json(delta_prime_probe(phi, o))},
          {"nabla_prime", growth_json(nabla_prime_probe(phi, o))},
          {"n_function", growth_json(n_function_probe(phi, o))},
          {"sum_K", growth_json(sb.K)},
          {"sum_L", growth_json(sb.L)}};
}

json cmd_hderiv(const Scenario& s, const CommandRequest& req) {
  const Transformation& T = s.map(arg(req, 0, "map"));
  json j{{"h", to_json(radon_nikodym(T))},
         {"h_tail", describe(radon_nikodym(T).tail)},
         {"nonsingular", to_json(nonsingular_check(T))},
         {"sigma_finite", to_json(sigma_finite_check(T))},
         {"bijective", T.bijective()}};
  if (T.bijective()) j["h_inverse"] = to_json(inverse_rn(T));
  return j;
}

json cmd_density(const Scenario& s, const CommandRequest& req) {
  return domain_json(density_verdict(s.map(arg(req, 0, "map"))));
}

json cmd_domain(const Scenario& s, const CommandRequest& req) {
  const YoungFunction phi = young_for(s, req);
  const MembershipReport m = domain_membership(phi, s.map(arg(req, 0, "map")), s.function(arg(req, 1, "function")));
  return {{"young", phi.name()},
          {"direct", to_json(m.direct)},
          {"weighted", to_json(m.weighted)},
          {"agree", m.agree},
          {"in_domain", m.direct.status == Status::Holds}};
}

json cmd_approximate(const Scenario& s, const CommandRequest& req) {
  const YoungFunction phi = young_for(s, req);
  const Transformation& T = s.map(arg(req, 0, "map"));
  const SimpleFunction& f = s.function(arg(req, 1, "function"));
  json j{{"young", phi.name()}};
  if (req.numbers.count("N")) {
    const auto N = static_cast<long long>(number(req, "N", 2));
    const ApproximantReport a = truncation_approximants(phi, T, f, N);
    j["N"] = N;
    j["f_N"] = to_json(a.f_N);
    j["distance"] = number_json(a.distance);
    j["in_domain"] = to_json(a.in_domain);
    j["composed_norm"] = number_json(a.composed_norm);
    j["bound"] = number_json(a.bound);
    j["bound_holds"] = a.bound_holds;
  }
  const ClosureReport c = closure_identity_check(phi, T, f);
  json rows = json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"epsilon", r.epsilon}, {"N", r.N}, {"distance", number_json(r.distance)}, {"achieved", r.achieved}});
  j["closure"] = rows;
  j["monotone"] = c.monotone;
  return j;
}

json cmd_bounded(const Scenario& s, const CommandRequest& req) {
  const YoungFunction phi = young_for(s, req);
  const Transformation& T = s.map(arg(req, 0, "map"));
  const BoundednessVerdict b = boundedness_verdict(phi, T);
  json j{{"young", phi.name()},
         {"verdict", to_string(b.kind)},
         {"bound", number_json(b.bound)},
         {"certificate", b.certificate}};
  if (b.witness) j["witness"] = to_json(*b.witness);
  if (T.space().is_finite())
    j["operator_norm_estimate"] = number_json(operator_norm_estimate(phi, T, 64, s.params.seed));
  return j;
}

json cmd_lp_check(const Scenario& s, const CommandRequest& req) {
  const Transformation& T = s.map(arg(req, 0, "map"));
  const SimpleFunction& f = s.function(arg(req, 1, "function"));
  const double p = number(req, "p", 2.0), q = number(req, "q", p);
  const SimpleFunction u = req.args.size() > 2 ? s.function(req.args[2]) : SimpleFunction::constant(T.space(), 1.0);
  const MultiplicationReport m = multiplication_equivalence_check(f, T, p, s.params.tol);
  const WeightedCompositionSpec spec{u, T, p, q};
  json j{{"p", p},
         {"q", q},
         {"lp_norm", number_json(lp_norm(T.space(), f, p))},
         {"composed", number_json(m.composed)},
         {"multiplied", number_json(m.multiplied)},
         {"norms_agree", m.norms_agree},
         {"split", number_json(m.split)},
         {"weighted", number_json(m.weighted)},
         {"identity_holds", m.identity_holds},
         {"density", domain_json(lp_density_verdict(T, p))},
         {"J", to_json(weighted_comp_index(spec))},
         {"weighted_density", domain_json(weighted_density_verdict(spec))}};
  if (T.space().is_finite()) {
    const WeightedNormReport w = weighted_norm_check(spec, f, s.params.tol);
    j["weighted_norm"] = {{"direct", number_json(w.direct)}, {"via_index", number_json(w.via_index)}, {"agree", w.agree}};
  }
  return j;
}

json cmd_adjoint_check(const Scenario& s, const CommandRequest& req) {
  const YoungFunction phi = young_for(s, req);
  const Transformation& T = s.map(arg(req, 0, "map"));
  const SimpleFunction& f = s.function(arg(req, 1, "function"));
  const SimpleFunction& g = s.function(arg(req, 2, "function"));
  const AdjointReport r = duality_pairing_check(phi, T, f, g, 1e-10, probe_of(s));
  json j{{"young", phi.name()},
         {"adjoint", to_json(r.adjoint_values)},
         {"lhs", number_json(r.lhs)},
         {"rhs", number_json(r.rhs)},
         {"residual", number_json(r.residual)},
         {"within_tolerance", r.within_tolerance},
         {"note", r.note}};
  if (r.density) {
    j["density_index"] = to_json(r.density->J);
    j["density_verdict"] = to_json(r.density->verdict);
    j["delta_prime"] = growth_json(r.density->delta_prime);
    j["containment"] = {{"sampled", r.density->sampled},
                        {"contained", r.density->contained},
                        {"chain_checked", r.density->chain_checked},
                        {"chain_failures", r.density->chain_failures},
                        {"below_threshold", r.density->chain_below_x0}};
  }
  return j;
}

using Handler = std::function<json(const Scenario&, const CommandRequest&)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> table{
      {"norm", cmd_norm},         {"conjugate", cmd_conjugate},
      {"growth", cmd_growth},     {"hderiv", cmd_hderiv},
      {"density", cmd_density},   {"domain", cmd_domain},
      {"approximate", cmd_approximate}, {"bounded", cmd_bounded},
      {"lp-check", cmd_lp_check}, {"adjoint-check", cmd_adjoint_check},
  };
  return table;
}

void render(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      os << pad << key << ":\n";
      render(os, value, indent + 1);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      os << pad << key << ":\n";
      for (const auto& item : value) {
        os << pad << "  -\n";
        render(os, item, indent + 2);
      }
    } else {
      os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, h] : handlers()) n.push_back(name);
    return n;
  }();
  return names;
}

json run_command(const Scenario& s, const CommandRequest& req) {
  for (const auto& [name, handler] : handlers()) {
    if (name != req.command) continue;
    json report{{"command", req.command},
                {"args", req.args},
                {"version", kVersion},
                {"params",
                 {{"tol", s.params.tol},
                  {"depth", s.params.depth},
                  {"seed", s.params.seed},
                  {"range", {s.params.range_lo, s.params.range_hi}}}}};
    if (req.young) report["young"] = *req.young;
    report["results"] = handler(s, req);
    return report;
  }
  throw UsageError("unknown command '" + req.command + "'");
}

std::string render_text(const json& report) {
  std::ostringstream os;
  render(os, report, 0);
  return os.str();
}

}  // namespace orlicz
