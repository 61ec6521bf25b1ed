#include <algorithm>
#include <cmath>

#include "orlicz/compop.hpp"
#include "orlicz/extended.hpp"

namespace orlicz {

namespace {

// Same index k, new support lattice.
TailTerm moved(TailTerm t, IndexMap m) {
  t.support = Lattice{m, t.support.first};
  return t;
}

std::optional<TailTerm> reindexed(const TailTerm& t, IndexMap m) {
  if (!t.support.is_all()) return std::nullopt;
  return substitute(t, m);
}

// A term on a shifted copy of the naturals, re-expressed on all atoms.
TailTerm as_all(const TailTerm& t) {
  const IndexMap& s = t.support.map;
  if (s.scale != 1 || s.degree != 1 || s.offset == 0) return t;
  auto r = substitute(t, IndexMap{1, 1, -s.offset});
  if (!r) return t;
  r->support = Lattice::all(t.support.first + s.offset);
  return *r;
}

// Tail of f o law on the region where law lands in f's tail.
TailLaw compose_tail(const TailLaw& f, const MapLaw& law) {
  if (!f.resolved || !law.resolved()) return TailLaw::unresolved();
  if (law.is_identity()) return f;
  TailLaw out;
  auto push = [&](std::optional<TailTerm> t) {
    if (!t) return false;
    out.add(*t);
    return true;
  };
  for (const auto& raw : f.terms) {
    const TailTerm t = as_all(raw);
    const IndexMap& s = t.support.map;
    bool ok = true;
    if (const auto* a = std::get_if<MapLaw::Affine>(&law.rule)) {
      if (t.support.is_all()) {
        auto r = reindexed(t, IndexMap{a->a, 1, a->b});
        if (r) r->support = Lattice::all();
        ok = push(r);
      } else if (a->a == 1 && s.degree == 1) {
        ok = push(moved(t, IndexMap{s.scale, 1, s.offset - a->b}));
      } else {
        ok = false;
      }
    } else if (const auto* p = std::get_if<MapLaw::Power>(&law.rule)) {
      const IndexMap pm{p->a, p->e, 0};
      if (s == pm) {
        ok = push(moved(t, IndexMap{}));
      } else {
        auto r = reindexed(t, pm);
        if (r) r->support = Lattice::all();
        ok = push(r);
      }
    } else if (const auto* c = std::get_if<MapLaw::CeilDiv>(&law.rule)) {
      if (s.degree != 1) ok = false;
      for (long long j = 1; ok && j <= c->d; ++j)
        ok = push(moved(t, IndexMap{c->d * s.scale, 1, c->d * (s.offset - 1) + j}));
    } else if (std::holds_alternative<MapLaw::PairSwap>(law.rule)) {
      if (t.support.is_all()) {
        auto odd = reindexed(t, IndexMap{2, 1, 0});
        auto even = reindexed(t, IndexMap{2, 1, -1});
        if (odd) odd->support = Lattice{IndexMap{2, 1, -1}, 1};
        if (even) even->support = Lattice{IndexMap{2, 1, 0}, 1};
        ok = push(odd) && push(even);
      } else if (s.degree == 1 && s.scale % 2 == 0) {
        const long long partner = (s.offset % 2 + 2) % 2 == 1 ? s.offset + 1 : s.offset - 1;
        ok = push(moved(t, IndexMap{s.scale, 1, partner}));
      } else {
        ok = false;
      }
    } else {
      ok = false;
    }
    if (!ok) return TailLaw::unresolved();
  }
  return out;
}

}  // namespace

SimpleFunction compose_apply(const SimpleFunction& f, const Transformation& map) {
  const MeasureSpace& X = map.space();
  SimpleFunction g;
  if (X.is_finite()) {
    for (Atom n = 1; n <= X.depth(); ++n) g.values.push_back(f.at(map.at(n)));
    return g;
  }
  const MapLaw& law = map.law();
  Atom B = map.explicit_size();
  if (const auto* c = std::get_if<MapLaw::Constant>(&law.rule)) {
    for (Atom n = 1; n <= B; ++n) g.values.push_back(f.at(map.at(n)));
    g.tail = TailLaw::constant(f.at(c->c));
    return g;
  }
  Atom T = f.explicit_size();
  for (const auto& t : f.tail.terms) T = std::max(T, t.support.at(t.support.first) - 1);
  const auto bound = map.domain_bound_for(T);
  if (!bound || !f.resolved()) {
    for (Atom n = 1; n <= B; ++n) g.values.push_back(f.resolved() || map.at(n) <= f.explicit_size()
                                                         ? f.at(map.at(n))
                                                         : std::nan(""));
    g.tail = TailLaw::unresolved();
    return g;
  }
  B = std::max(B, *bound);
  for (Atom n = 1; n <= B; ++n) g.values.push_back(f.at(map.at(n)));
  g.tail = compose_tail(f.tail, law);
  for (auto& t : g.tail.terms) t.support.first = t.support.first_index_above(B);
  return g;
}

namespace {

// First k >= from (up to a cap) where pred(k) holds.
std::optional<long long> first_where(long long from, auto pred) {
  if (pred(from)) return from;
  long long step = 1, lo = from, hi = from;
  const long long cap = 1LL << 40;
  while (true) {
    hi = lo + step;
    if (hi > cap) return std::nullopt;
    if (pred(hi)) break;
    lo = hi;
    step *= 2;
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

SimpleFunction indicator_below(const SimpleFunction& f, double threshold) {
  SimpleFunction chi;
  const double base = 0.0 < threshold ? 1.0 : 0.0;
  auto fill = [&](Atom upto) {
    for (Atom n = 1; n <= upto; ++n) {
      const double v = f.at(n);
      chi.values.push_back(std::isnan(v) ? std::nan("") : v < threshold ? 1.0 : 0.0);
    }
  };
  if (!f.resolved() || !f.tail.pairwise_disjoint()) {
    fill(f.explicit_size());
    chi.tail = TailLaw::unresolved();
    return chi;
  }
  Atom E = f.explicit_size();
  std::vector<std::pair<const TailTerm*, bool>> stable;
  for (const auto& t : f.tail.terms) {
    const long long k0 = t.support.first_index_above(f.explicit_size());
    const auto mono = t.monotone_from(k0);
    if (!mono) {
      fill(f.explicit_size());
      chi.tail = TailLaw::unresolved();
      return chi;
    }
    const double lim = t.limit();
    long long k = mono->from;
    bool below = t.value(k) < threshold;
    if (mono->trend == Trend::Increasing && lim > threshold) {
      auto hit = first_where(k, [&](long long j) { return t.value(j) >= threshold; });
      if (!hit) {
        fill(f.explicit_size());
        chi.tail = TailLaw::unresolved();
        return chi;
      }
      k = *hit;
      below = false;
    } else if (mono->trend == Trend::Decreasing && lim < threshold) {
      auto hit = first_where(k, [&](long long j) { return t.value(j) < threshold; });
      if (!hit) {
        fill(f.explicit_size());
        chi.tail = TailLaw::unresolved();
        return chi;
      }
      k = *hit;
      below = true;
    } else if (mono->trend == Trend::Increasing) {
      below = true;  // stays below its limit
    } else if (mono->trend == Trend::Decreasing) {
      below = false;
    }
    E = std::max(E, t.support.at(k) - 1);
    stable.emplace_back(&t, below);
  }
  fill(E);
  chi.tail = TailLaw::constant(base);
  for (const auto& [t, below] : stable) {
    const double v = below ? 1.0 : 0.0;
    if (v == base) continue;
    TailTerm d = make_term(t->support, v - base);
    d.support.first = d.support.first_index_above(E);
    chi.tail.add(d);
  }
  return chi;
}

std::optional<double> supremum(const SimpleFunction& f) {
  double s = -kInf;
  for (double v : f.values) {
    if (std::isnan(v)) return std::nullopt;
    s = std::max(s, v);
  }
  if (!f.resolved()) return std::nullopt;
  if (f.tail.terms.empty()) return f.values.empty() ? 0.0 : s;
  bool covers_all = false;
  double total = 0.0;
  for (const auto& t : f.tail.terms) {
    covers_all = covers_all || t.support.is_all();
    const long long k0 = t.support.first_index_above(f.explicit_size());
    const auto mono = t.monotone_from(k0);
    if (!mono) return std::nullopt;
    double m = -kInf;
    for (long long k = k0; k < mono->from; ++k) m = std::max(m, t.value(k));
    m = std::max(m, mono->trend == Trend::Increasing ? t.limit() : t.value(mono->from));
    total = f.tail.pairwise_disjoint() ? std::max(total, m) : total + std::max(m, 0.0);
  }
  if (!covers_all) total = std::max(total, 0.0);
  return std::max(s, total);
}

}  // namespace orlicz
