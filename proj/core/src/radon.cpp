#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "orlicz/extended.hpp"
#include "orlicz/measure.hpp"

namespace orlicz {

namespace {

std::size_t idx(Atom n) { return static_cast<std::size_t>(n - 1); }

TailTerm on(TailTerm t, IndexMap m, Atom above) {
  t.support = Lattice{m, 1};
  t.support.first = t.support.first_index_above(above);
  return t;
}

// h beyond the explicit region, from the map law alone.
TailLaw rn_tail(const MeasureSpace& X, const MapLaw& law, Atom above) {
  const TailTerm w = X.weight_term();
  auto along = [&](IndexMap m) { return weight_along(X, m); };
  TailLaw out;
  if (law.is_identity()) return TailLaw::constant(1.0);
  if (const auto* f = std::get_if<MapLaw::Affine>(&law.rule)) {
    const IndexMap m{f->a, 1, f->b};
    auto wm = along(m);
    if (!wm) return TailLaw::unresolved();
    return out.add(on(times(w, reciprocal(*wm)), m, above));
  }
  if (const auto* f = std::get_if<MapLaw::Power>(&law.rule)) {
    const IndexMap m{f->a, f->e, 0};
    auto wm = along(m);
    if (!wm) return TailLaw::unresolved();
    return out.add(on(times(w, reciprocal(*wm)), m, above));
  }
  if (const auto* f = std::get_if<MapLaw::CeilDiv>(&law.rule)) {
    for (long long j = 1; j <= f->d; ++j) {
      auto wj = along(IndexMap{f->d, 1, j - f->d});
      if (!wj) return TailLaw::unresolved();
      out.add(on(times(*wj, reciprocal(w)), IndexMap{}, above));
    }
    return out;
  }
  if (std::holds_alternative<MapLaw::PairSwap>(law.rule)) {
    const IndexMap odd{2, 1, -1}, even{2, 1, 0};
    auto wo = along(odd), we = along(even);
    if (!wo || !we) return TailLaw::unresolved();
    out.add(on(times(*we, reciprocal(*wo)), odd, above));
    out.add(on(times(*wo, reciprocal(*we)), even, above));
    return out;
  }
  if (std::holds_alternative<MapLaw::Constant>(law.rule)) return out;
  return TailLaw::unresolved();
}

// Constant value of f on every atom beyond `from`, if there is one.
std::optional<double> constant_beyond(const SimpleFunction& f, Atom from) {
  if (!f.resolved()) return std::nullopt;
  double c = 0.0;
  if (!f.tail.terms.empty()) {
    if (f.tail.terms.size() != 1) return std::nullopt;
    const TailTerm& t = f.tail.terms.front();
    if (!t.support.is_all() || !t.is_constant() || t.support.first > from + 1) return std::nullopt;
    c = t.coef;
  }
  for (Atom n = from + 1; n <= f.explicit_size(); ++n)
    if (f.at(n) != c) return std::nullopt;
  return c;
}

struct BlockSum {
  CompensatedSum num, den;
  bool pos_inf = false, neg_inf = false;
  void add(double f, double w) {
    add_integral(ext_mul(f, w));
    den.add(w);
  }
  void add_integral(double v) {
    if (std::isinf(v)) (v > 0 ? pos_inf : neg_inf) = true;
    else num.add(v);
  }
  double average(double extra_den = 0.0) const {
    if (pos_inf && neg_inf) throw PreconditionError("block average of +inf and -inf is undefined");
    const double d = den.value() + extra_den;
    const double n = pos_inf ? kInf : neg_inf ? -kInf : num.value();
    if (std::isinf(n) && std::isinf(d)) throw PreconditionError("block average inf / inf is undefined");
    return ext_div(n, d);
  }
};

}  // namespace

std::optional<TailTerm> weight_along(const MeasureSpace& X, const IndexMap& m) {
  return substitute(X.weight_term(), m);
}

std::optional<TailTerm> weighted_term(const MeasureSpace& X, const TailTerm& t) {
  auto w = weight_along(X, t.support.map);
  if (!w) return std::nullopt;
  return times(t, *w);
}

SeriesSum tail_integral(const MeasureSpace& X, const TailLaw& f, Atom bound) {
  if (X.is_finite() || f.is_zero()) return SeriesSum::of(0.0);
  if (!f.resolved) return SeriesSum::unresolved();
  SeriesSum total = SeriesSum::of(0.0);
  for (const auto& t : f.terms) {
    auto wt = weighted_term(X, t);
    if (!wt) return SeriesSum::unresolved();
    total = total + sum_above(*wt, bound);
  }
  return total;
}

double weighted_measure(const MeasureSpace& X, const SimpleFunction& f, const AtomSet& E) {
  CompensatedSum s;
  const Atom cut = E.all_from.value_or(std::numeric_limits<Atom>::max());
  auto add = [&](Atom n) {
    const double v = f.at(n);
    if (v < 0.0) throw PreconditionError("weighted_measure needs f >= 0");
    s.add(ext_mul(v, X.weight(n)));
  };
  for (Atom n : E.atoms) {
    if (!X.contains(n)) throw std::out_of_range("unknown atom " + std::to_string(n));
    if (n < cut) add(n);
  }
  if (E.all_from) {
    const Atom last = X.is_finite() ? X.depth() : std::max(f.explicit_size(), cut - 1);
    for (Atom n = std::max<Atom>(cut, 1); n <= last; ++n) add(n);
    if (!X.is_finite()) {
      auto t = tail_integral(X, f.tail, last);
      if (t.kind == SeriesSum::Kind::Unresolved) throw UnresolvedTail("tail of f has no closed form");
      s.add(t.as_double());
    }
  }
  return s.value();
}

Verdict nonsingular_check(const Transformation&) {
  return Verdict::holds("every atom has positive weight, so the only null set is empty");
}

Atom rn_explicit_bound(const Transformation& phi) {
  const MeasureSpace& X = phi.space();
  Atom K = std::max(X.depth(), phi.explicit_size());
  for (Atom t : phi.targets()) K = std::max(K, t);
  if (!X.is_finite() && phi.law().resolved())
    for (Atom n = 1; n <= phi.explicit_size(); ++n) K = std::max(K, phi.law().at(n));
  return X.is_finite() ? X.depth() : K;
}

SimpleFunction radon_nikodym(const Transformation& phi) {
  const MeasureSpace& X = phi.space();
  const Atom K = rn_explicit_bound(phi);
  std::vector<CompensatedSum> mass(idx(K) + 1);
  for (Atom n = 1; n <= phi.explicit_size(); ++n) mass[idx(phi.at(n))].add(X.weight(n));
  SimpleFunction h;
  if (X.is_finite()) {
    for (Atom y = 1; y <= K; ++y) h.values.push_back(mass[idx(y)].value() / X.weight(y));
    return h;
  }
  const MapLaw& law = phi.law();
  if (!law.resolved()) {
    h.values.assign(idx(K) + 1, std::numeric_limits<double>::quiet_NaN());
    h.tail = TailLaw::unresolved();
    return h;
  }
  if (const auto* c = std::get_if<MapLaw::Constant>(&law.rule)) {
    mass[idx(c->c)].add(X.mass_above(phi.explicit_size()).as_double());
  } else {
    const Atom B = *phi.domain_bound_for(K);
    for (Atom n = phi.explicit_size() + 1; n <= B; ++n)
      if (Atom y = law.at(n); y <= K) mass[idx(y)].add(X.weight(n));
  }
  for (Atom y = 1; y <= K; ++y) h.values.push_back(mass[idx(y)].value() / X.weight(y));
  h.tail = rn_tail(X, law, K);
  return h;
}

SimpleFunction pushforward_density(const Transformation& phi, const SimpleFunction& uq) {
  const MeasureSpace& X = phi.space();
  const Atom K = rn_explicit_bound(phi);
  std::vector<CompensatedSum> mass(idx(K) + 1);
  std::vector<bool> inf_mass(idx(K) + 1, false);
  auto add = [&](Atom y, double v) {
    if (is_inf(v)) inf_mass[idx(y)] = true;
    else mass[idx(y)].add(v);
  };
  for (Atom n = 1; n <= phi.explicit_size(); ++n) add(phi.at(n), ext_mul(uq.at(n), X.weight(n)));

  SimpleFunction J;
  bool unresolved = false;
  if (!X.is_finite()) {
    const MapLaw& law = phi.law();
    if (!law.resolved()) {
      unresolved = true;
    } else if (const auto* c = std::get_if<MapLaw::Constant>(&law.rule)) {
      const Atom L = std::max(phi.explicit_size(), uq.explicit_size());
      for (Atom n = phi.explicit_size() + 1; n <= L; ++n) add(c->c, ext_mul(uq.at(n), X.weight(n)));
      const SeriesSum t = tail_integral(X, uq.tail, L);
      if (t.kind == SeriesSum::Kind::Unresolved) unresolved = true;
      else add(c->c, t.kind == SeriesSum::Kind::PlusInfinity ? kInf : t.as_double());
    } else {
      const Atom B = *phi.domain_bound_for(K);
      for (Atom n = phi.explicit_size() + 1; n <= B; ++n)
        if (Atom y = law.at(n); y <= K) add(y, ext_mul(uq.at(n), X.weight(n)));
    }
  }
  for (Atom y = 1; y <= K; ++y) {
    const double m = inf_mass[idx(y)] ? kInf : mass[idx(y)].value();
    J.values.push_back(unresolved ? std::numeric_limits<double>::quiet_NaN() : m / X.weight(y));
  }
  if (X.is_finite()) return J;
  if (unresolved) {
    J.tail = TailLaw::unresolved();
    return J;
  }
  // Beyond K every preimage lies past the explicit prefix of phi; the index
  // factors as c h when w is constant there.
  const auto c = constant_beyond(uq, phi.explicit_size());
  const SimpleFunction h = radon_nikodym(phi);
  J.tail = c && h.resolved() ? scaled(h, *c).tail : TailLaw::unresolved();
  return J;
}

SimpleFunction iterated_rn(const Transformation& phi, int i) {
  if (i < 1) throw std::invalid_argument("iteration count must be positive");
  Transformation p = phi;
  for (int k = 1; k < i; ++k) p = p.then(phi);
  return radon_nikodym(p);
}

SimpleFunction inverse_rn(const Transformation& phi) {
  if (!phi.bijective()) throw PreconditionError("h_{-1} needs a bijective map");
  const MeasureSpace& X = phi.space();
  SimpleFunction h;
  for (Atom n = 1; n <= phi.explicit_size(); ++n)
    h.values.push_back(X.weight(phi.at(n)) / X.weight(n));
  if (X.is_finite() || phi.law().is_identity()) {
    if (!X.is_finite()) h.tail = TailLaw::constant(1.0);
    return h;
  }
  // pair swap: h_{-1}(x) = mu(phi(x)) / mu(x) coincides with h on the tail
  h.tail = rn_tail(X, phi.law(), phi.explicit_size());
  return h;
}

std::optional<std::size_t> Partition::block_of(Atom n) const {
  if (n > covered) return tail_block;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (std::find(blocks[b].begin(), blocks[b].end(), n) != blocks[b].end()) return b;
  return std::nullopt;
}

Partition Partition::singletons(const MeasureSpace& X) {
  Partition P;
  for (Atom n = 1; n <= X.depth(); ++n) P.blocks.push_back({n});
  P.covered = X.depth();
  if (!X.is_finite()) P.tail_fibers = MapLaw::identity();
  return P;
}

Partition fiber_partition(const Transformation& phi) {
  const MeasureSpace& X = phi.space();
  Partition P;
  Atom Q = phi.explicit_size();
  if (!X.is_finite()) {
    if (!phi.law().resolved()) {
      P.resolved = false;
    } else if (!std::holds_alternative<MapLaw::Constant>(phi.law().rule)) {
      Q = *phi.domain_bound_for(rn_explicit_bound(phi));
      P.tail_fibers = phi.law();
    }
  }
  std::map<Atom, std::size_t> block_of_target;
  for (Atom n = 1; n <= Q; ++n) {
    auto [it, fresh] = block_of_target.try_emplace(phi.at(n), P.blocks.size());
    if (fresh) P.blocks.emplace_back();
    P.blocks[it->second].push_back(n);
  }
  P.covered = Q;
  if (!X.is_finite() && P.resolved && !P.tail_fibers) {
    const Atom c = std::get<MapLaw::Constant>(phi.law().rule).c;
    auto [it, fresh] = block_of_target.try_emplace(c, P.blocks.size());
    if (fresh) P.blocks.emplace_back();
    P.tail_block = it->second;
  }
  return P;
}

SimpleFunction conditional_expectation(const MeasureSpace& X, const SimpleFunction& f,
                                       const Partition& P) {
  const Atom L = X.is_finite() ? X.depth() : std::max(P.covered, f.explicit_size());
  const SimpleFunction g = f.extended_to(L);
  std::vector<BlockSum> sums(P.blocks.size());
  for (std::size_t b = 0; b < P.blocks.size(); ++b)
    for (Atom n : P.blocks[b]) sums[b].add(g.at(n), X.weight(n));
  double extra_den = 0.0;
  if (P.tail_block) {
    auto& s = sums[*P.tail_block];
    for (Atom n = P.covered + 1; n <= L; ++n) s.add(g.at(n), X.weight(n));
    auto t = tail_integral(X, g.tail, L);
    if (t.kind == SeriesSum::Kind::Unresolved) throw UnresolvedTail("tail of f has no closed form");
    s.add_integral(t.as_double());
    extra_den = X.mass_above(L).as_double();
  }
  std::vector<double> avg(P.blocks.size());
  for (std::size_t b = 0; b < P.blocks.size(); ++b)
    avg[b] = sums[b].average(P.tail_block && b == *P.tail_block ? extra_den : 0.0);

  SimpleFunction out;
  out.values.assign(idx(P.covered) + 1, 0.0);
  for (std::size_t b = 0; b < P.blocks.size(); ++b)
    for (Atom n : P.blocks[b]) out.values[idx(n)] = avg[b];
  if (X.is_finite()) return out;
  if (P.tail_block) {
    out.values.resize(idx(L) + 1, avg[*P.tail_block]);
    out.tail = TailLaw::constant(avg[*P.tail_block]);
  } else if (P.resolved && P.tail_fibers && P.tail_fibers->injective()) {
    for (Atom n = P.covered + 1; n <= L; ++n) out.values.push_back(g.at(n));
    out.tail = g.tail;
  } else {
    out.tail = TailLaw::unresolved();
  }
  return out;
}

Verdict sigma_finite_check(const Transformation& phi) {
  const MeasureSpace& X = phi.space();
  if (X.is_finite()) return Verdict::holds("finite measure space");
  const Partition P = fiber_partition(phi);
  if (!P.resolved) return Verdict::inconclusive("map law unresolved beyond the prefix");
  Verdict v = Verdict::holds("fibers of phi through atom " + std::to_string(P.covered) +
                             " are finite sets; the law's fibers beyond are finite");
  if (P.tail_block) {
    const SeriesSum m = X.mass_above(P.covered);
    if (m.kind == SeriesSum::Kind::Unresolved) return Verdict::inconclusive("tail mass unresolved");
    const Atom y = std::get<MapLaw::Constant>(phi.law().rule).c;
    if (m.kind == SeriesSum::Kind::PlusInfinity)
      v = Verdict::fails("fiber of atom " + std::to_string(y) + " has infinite measure", y);
    else
      v = Verdict::holds("every fiber has finite measure; the fiber of atom " + std::to_string(y) +
                         " absorbs the tail");
  }
  const SimpleFunction h = radon_nikodym(phi);
  if (!h.resolved()) return Verdict::inconclusive("Radon-Nikodym tail unresolved");
  std::optional<Atom> infinite_at;
  for (Atom y = 1; y <= h.explicit_size(); ++y)
    if (is_inf(h.at(y))) {
      infinite_at = y;
      break;
    }
  if (infinite_at.has_value() != (v.status == Status::Fails))
    return Verdict::inconclusive("fiber measures and h disagree on finiteness");
  return v;
}

Exhaustion::Exhaustion(const MeasureSpace& X, SimpleFunction f) : space_(X), f_(std::move(f)) {
  if (!f_.resolved()) throw UnresolvedTail("exhaustion needs a resolved tail");
  for (double v : f_.values)
    if (std::isinf(v)) throw PreconditionError("exhaustion needs f finite at every atom");
}

AtomSet Exhaustion::set(long long n) const {
  AtomSet B;
  const Atom last = space_.is_finite() ? space_.depth() : n;
  for (Atom k = 1; k <= last; ++k)
    if (std::abs(f_.at(k)) < static_cast<double>(n)) B.atoms.push_back(k);
  return B;
}

Exhaustion exhaustion(const MeasureSpace& X, const SimpleFunction& f) { return Exhaustion(X, f); }

SupportSet support(const SimpleFunction& f) {
  SupportSet S;
  for (Atom n = 1; n <= f.explicit_size(); ++n)
    if (f.at(n) != 0.0) S.atoms.push_back(n);
  S.resolved = f.tail.resolved;
  for (const auto& t : f.tail.terms)
    if (t.coef != 0.0) S.tail.push_back(t.support);
  return S;
}

}  // namespace orlicz
