#include "orlicz/measure.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "orlicz/extended.hpp"

namespace orlicz {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

long long ipow(long long base, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && r > std::numeric_limits<long long>::max() / base)
      throw std::overflow_error("atom index overflow");
    r *= base;
  }
  return r;
}

void check_law(const MapLaw& law) {
  std::visit(overloaded{
                 [](const MapLaw::Affine& f) {
                   if (f.a < 1 || f.a + f.b < 1)
                     throw std::invalid_argument("affine map law must send atoms to atoms");
                 },
                 [](const MapLaw::Constant& f) {
                   if (f.c < 1) throw std::invalid_argument("constant map law target must be >= 1");
                 },
                 [](const MapLaw::Power& f) {
                   if (f.a < 1 || f.e < 1) throw std::invalid_argument("power map law needs a, e >= 1");
                 },
                 [](const MapLaw::CeilDiv& f) {
                   if (f.d < 1) throw std::invalid_argument("ceil-div map law needs d >= 1");
                 },
                 [](const auto&) {},
             },
             law.rule);
}

// Law of `second` after `first`, for indices where both laws apply.
MapLaw compose_laws(const MapLaw& first, const MapLaw& second) {
  using A = MapLaw::Affine;
  using P = MapLaw::Power;
  if (!first.resolved() || !second.resolved()) return {MapLaw::Unresolved{}};
  if (std::holds_alternative<MapLaw::Constant>(second.rule)) return second;
  if (first.is_identity()) return second;
  if (second.is_identity()) return first;
  const auto* fa = std::get_if<A>(&first.rule);
  const auto* ga = std::get_if<A>(&second.rule);
  const auto* fp = std::get_if<P>(&first.rule);
  const auto* gp = std::get_if<P>(&second.rule);
  if (fa && ga) return {A{ga->a * fa->a, ga->a * fa->b + ga->b}};
  if (fp && gp) return {P{gp->a * ipow(fp->a, gp->e), fp->e * gp->e}};
  if (fp && ga && ga->b == 0) return {P{ga->a * fp->a, fp->e}};
  if (fa && gp && fa->b == 0) return {P{gp->a * ipow(fa->a, gp->e), gp->e}};
  const auto* fc = std::get_if<MapLaw::CeilDiv>(&first.rule);
  const auto* gc = std::get_if<MapLaw::CeilDiv>(&second.rule);
  if (fc && gc) return {MapLaw::CeilDiv{fc->d * gc->d}};
  if (std::holds_alternative<MapLaw::PairSwap>(first.rule) &&
      std::holds_alternative<MapLaw::PairSwap>(second.rule))
    return MapLaw::identity();
  return {MapLaw::Unresolved{}};
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::Inconclusive: break;
  }
  return "Inconclusive";
}

// ---------------------------------------------------------------- weights

double WeightLaw::at(Atom n) const {
  return std::visit(overloaded{
                        [](const Constant& w) { return w.c; },
                        [n](const Geometric& w) {
                          return w.a * std::pow(w.r, static_cast<double>(n - 1));
                        },
                        [n](const PowerLaw& w) {
                          return w.c * std::pow(static_cast<double>(n), -w.s);
                        },
                    },
                    family);
}

TailTerm WeightLaw::term() const {
  return std::visit(overloaded{
                        [](const Constant& w) { return make_term(Lattice::all(), w.c); },
                        [](const Geometric& w) { return make_term(Lattice::all(), w.a / w.r, w.r); },
                        [](const PowerLaw& w) {
                          return make_term(Lattice::all(), w.c, 1.0, {Factor{0.0, -w.s}});
                        },
                    },
                    family);
}

std::string WeightLaw::name() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Constant& w) { os << "constant(" << w.c << ")"; },
                 [&](const Geometric& w) { os << "geometric(" << w.a << "," << w.r << ")"; },
                 [&](const PowerLaw& w) { os << "power_law(" << w.c << "," << w.s << ")"; },
             },
             family);
  return os.str();
}

// ---------------------------------------------------------------- spaces

MeasureSpace MeasureSpace::finite(std::vector<std::pair<std::string, double>> atoms) {
  if (atoms.empty()) throw std::invalid_argument("finite space needs at least one atom");
  MeasureSpace X;
  X.kind_ = Kind::Finite;
  std::set<std::string> seen;
  for (auto& [id, w] : atoms) {
    if (!(w > 0.0) || std::isinf(w))
      throw std::invalid_argument("atom weight must be positive and finite: " + id);
    if (!seen.insert(id).second) throw std::invalid_argument("duplicate atom id: " + id);
    X.ids_.push_back(std::move(id));
    X.weights_.push_back(w);
  }
  X.depth_ = static_cast<Atom>(X.weights_.size());
  return X;
}

MeasureSpace MeasureSpace::finite(const std::vector<double>& weights) {
  std::vector<std::pair<std::string, double>> atoms;
  for (std::size_t i = 0; i < weights.size(); ++i)
    atoms.emplace_back(std::to_string(i + 1), weights[i]);
  return finite(std::move(atoms));
}

MeasureSpace MeasureSpace::countable(WeightLaw law, Atom depth) {
  std::visit(overloaded{
                 [](const WeightLaw::Constant& w) {
                   if (!(w.c > 0.0) || std::isinf(w.c))
                     throw std::invalid_argument("constant weight must be positive");
                 },
                 [](const WeightLaw::Geometric& w) {
                   if (!(w.a > 0.0) || !(w.r > 0.0 && w.r < 1.0))
                     throw std::invalid_argument("geometric weight needs a > 0 and 0 < r < 1");
                 },
                 [](const WeightLaw::PowerLaw& w) {
                   if (!(w.c > 0.0) || !(w.s > 0.0))
                     throw std::invalid_argument("power-law weight needs c > 0 and s > 0");
                 },
             },
             law.family);
  if (depth < 1) throw std::invalid_argument("truncation depth must be positive");
  MeasureSpace X;
  X.kind_ = Kind::Countable;
  X.depth_ = depth;
  X.law_ = law;
  return X;
}

double MeasureSpace::weight(Atom n) const {
  if (!contains(n)) throw std::out_of_range("unknown atom " + std::to_string(n));
  if (is_finite()) return weights_[static_cast<std::size_t>(n - 1)];
  return law_->at(n);
}

TailTerm MeasureSpace::weight_term() const {
  if (is_finite()) throw std::logic_error("finite spaces have no weight law");
  return law_->term();
}

SeriesSum MeasureSpace::mass_above(Atom bound) const {
  if (is_finite()) {
    CompensatedSum s;
    for (Atom n = std::max<Atom>(bound + 1, 1); n <= depth_; ++n) s.add(weight(n));
    return SeriesSum::of(s.value());
  }
  return sum_above(weight_term(), bound);
}

double MeasureSpace::total_mass() const { return mass_above(0).as_double(); }

std::optional<Atom> MeasureSpace::find_atom(const std::string& id) const {
  if (is_finite()) {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) return std::nullopt;
    return static_cast<Atom>(it - ids_.begin()) + 1;
  }
  try {
    std::size_t used = 0;
    const long long n = std::stoll(id, &used);
    if (used == id.size() && n >= 1) return n;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

std::string MeasureSpace::id(Atom n) const {
  if (!contains(n)) throw std::out_of_range("unknown atom " + std::to_string(n));
  return is_finite() ? ids_[static_cast<std::size_t>(n - 1)] : std::to_string(n);
}

// ---------------------------------------------------------------- functions

SimpleFunction SimpleFunction::constant(const MeasureSpace& X, double c) {
  return {std::vector<double>(static_cast<std::size_t>(X.depth()), c),
          X.is_finite() ? TailLaw::zero() : TailLaw::constant(c)};
}

double SimpleFunction::at(Atom n) const {
  if (n >= 1 && n <= explicit_size()) return values[static_cast<std::size_t>(n - 1)];
  return tail.eval(n);
}

SimpleFunction SimpleFunction::extended_to(Atom size) const {
  SimpleFunction out = *this;
  for (Atom n = explicit_size() + 1; n <= size; ++n) out.values.push_back(tail.eval(n));
  return out;
}

bool AtomSet::contains(Atom n) const {
  if (all_from && n >= *all_from) return true;
  return std::binary_search(atoms.begin(), atoms.end(), n);
}

// ---------------------------------------------------------------- maps

Atom MapLaw::at(Atom n) const {
  return std::visit(overloaded{
                        [n](const Affine& f) { return f.a * n + f.b; },
                        [](const Constant& f) { return f.c; },
                        [n](const Power& f) { return f.a * ipow(n, f.e); },
                        [n](const CeilDiv& f) { return (n + f.d - 1) / f.d; },
                        [n](const PairSwap&) { return n % 2 == 1 ? n + 1 : n - 1; },
                        [](const Unresolved&) -> Atom {
                          throw std::logic_error("map law is unresolved");
                        },
                    },
                    rule);
}

bool MapLaw::is_identity() const {
  if (const auto* f = std::get_if<Affine>(&rule)) return f->a == 1 && f->b == 0;
  if (const auto* f = std::get_if<CeilDiv>(&rule)) return f->d == 1;
  if (const auto* f = std::get_if<Power>(&rule)) return f->a == 1 && f->e == 1;
  return false;
}

bool MapLaw::injective() const {
  return std::visit(overloaded{
                        [](const Affine&) { return true; },
                        [](const Power&) { return true; },
                        [](const PairSwap&) { return true; },
                        [](const CeilDiv& f) { return f.d == 1; },
                        [](const auto&) { return false; },
                    },
                    rule);
}

std::string MapLaw::name() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Affine& f) { os << "affine(" << f.a << "," << f.b << ")"; },
                 [&](const Constant& f) { os << "constant(" << f.c << ")"; },
                 [&](const Power& f) { os << "power(" << f.a << "," << f.e << ")"; },
                 [&](const CeilDiv& f) { os << "ceil_div(" << f.d << ")"; },
                 [&](const PairSwap&) { os << "pair_swap"; },
                 [&](const Unresolved&) { os << "unresolved"; },
             },
             rule);
  return os.str();
}

Transformation::Transformation(const MeasureSpace& X, std::vector<Atom> targets, MapLaw law)
    : space_(X), targets_(std::move(targets)), law_(std::move(law)) {
  if (X.is_finite()) {
    if (explicit_size() != X.depth())
      throw std::invalid_argument("finite map needs one target per atom");
    law_ = {MapLaw::Unresolved{}};
  } else {
    check_law(law_);
    if (law_.resolved())
      for (Atom n = explicit_size() + 1; n <= X.depth(); ++n) targets_.push_back(law_.at(n));
    if (explicit_size() < X.depth())
      throw std::invalid_argument("explicit targets must cover the truncation depth");
  }
  for (Atom t : targets_)
    if (!X.contains(t)) throw std::invalid_argument("map target outside the space: " + std::to_string(t));
}

Transformation Transformation::identity(const MeasureSpace& X) {
  std::vector<Atom> t(static_cast<std::size_t>(X.depth()));
  std::iota(t.begin(), t.end(), Atom{1});
  return Transformation(X, std::move(t), MapLaw::identity());
}

Atom Transformation::at(Atom n) const {
  if (n >= 1 && n <= explicit_size()) return targets_[static_cast<std::size_t>(n - 1)];
  if (space_.is_finite()) throw std::out_of_range("unknown atom " + std::to_string(n));
  return law_.at(n);
}

bool Transformation::bijective() const {
  std::vector<char> hit(targets_.size() + 1, 0);
  for (Atom t : targets_) {
    if (t > explicit_size() || hit[static_cast<std::size_t>(t)]) return false;
    hit[static_cast<std::size_t>(t)] = 1;
  }
  if (space_.is_finite()) return true;
  if (law_.is_identity()) return true;
  return std::holds_alternative<MapLaw::PairSwap>(law_.rule) && explicit_size() % 2 == 0;
}

std::optional<Atom> Transformation::domain_bound_for(Atom target_bound) const {
  const Atom P = explicit_size();
  if (space_.is_finite()) return P;
  Atom limit = 0;  // beyond limit the law certainly exceeds target_bound
  bool ok = std::visit(overloaded{
                           [&](const MapLaw::Affine&) { limit = target_bound; return true; },
                           [&](const MapLaw::Power&) { limit = target_bound; return true; },
                           [&](const MapLaw::CeilDiv& f) { limit = f.d * target_bound; return true; },
                           [&](const MapLaw::PairSwap&) { limit = target_bound + 1; return true; },
                           [&](const MapLaw::Constant& f) { limit = P; return f.c > target_bound; },
                           [](const MapLaw::Unresolved&) { return false; },
                       },
                       law_.rule);
  if (!ok) return std::nullopt;
  Atom B = P;
  for (Atom n = P + 1; n <= limit; ++n)
    if (law_.at(n) <= target_bound) B = n;
  return B;
}

Transformation Transformation::inverse() const {
  if (!bijective()) throw PreconditionError("only bijective maps have an inverse");
  std::vector<Atom> inv(targets_.size());
  for (Atom n = 1; n <= explicit_size(); ++n) inv[static_cast<std::size_t>(at(n) - 1)] = n;
  if (space_.is_finite()) return Transformation(space_, std::move(inv));
  return Transformation(space_, std::move(inv), law_);
}

Transformation Transformation::then(const Transformation& next) const {
  if (space_.is_finite() != next.space_.is_finite() || space_.depth() != next.space_.depth())
    throw std::invalid_argument("maps act on different spaces");
  if (space_.is_finite()) {
    std::vector<Atom> t;
    for (Atom n = 1; n <= explicit_size(); ++n) t.push_back(next.at(at(n)));
    return Transformation(space_, std::move(t));
  }
  Atom P = explicit_size();
  MapLaw law{MapLaw::Unresolved{}};
  if (const auto* c = std::get_if<MapLaw::Constant>(&law_.rule)) {
    law = {MapLaw::Constant{next.at(c->c)}};
  } else if (auto B = domain_bound_for(next.explicit_size())) {
    P = std::max(P, *B);
    law = compose_laws(law_, next.law_);
  }
  std::vector<Atom> t;
  for (Atom n = 1; n <= P; ++n) t.push_back(next.at(at(n)));
  return Transformation(space_, std::move(t), law);
}

}  // namespace orlicz
