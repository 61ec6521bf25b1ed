#include <algorithm>
#include <cmath>

#include "orlicz/measure.hpp"

namespace orlicz {

namespace {

// a(n) * b(n) for n on a's support, when b is a single term.
std::optional<TailTerm> term_product(const TailTerm& a, const TailTerm& b) {
  if (a.support.same_points(b.support)) {
    TailTerm t = times(a, b);
    t.support.first = std::max(a.support.first, b.support.first);
    return t;
  }
  if (b.support.is_all()) {
    auto bb = substitute(b, a.support.map);
    if (!bb) return std::nullopt;
    TailTerm t = times(a, *bb);
    t.support.first = std::max(a.support.first, a.support.first_index_above(b.support.first - 1));
    return t;
  }
  if (a.support.is_all()) return term_product(b, a);
  return std::nullopt;
}

}  // namespace

TailLaw product(const TailLaw& a, const TailLaw& b) {
  if (!a.resolved || !b.resolved) return TailLaw::unresolved();
  TailLaw out;
  for (const auto& s : a.terms)
    for (const auto& t : b.terms) {
      if (s.support.disjoint_from(t.support)) continue;
      auto p = term_product(s, t);
      if (!p) return TailLaw::unresolved();
      if (p->coef != 0.0) out.add(*p);
    }
  return out;
}

SimpleFunction scaled(const SimpleFunction& f, double c) {
  SimpleFunction out = f;
  for (double& v : out.values) v = c == 0.0 ? 0.0 : v * c;
  out.tail = f.tail.scaled(c);
  return out;
}

SimpleFunction sum(const SimpleFunction& f, const SimpleFunction& g) {
  const Atom L = std::max(f.explicit_size(), g.explicit_size());
  SimpleFunction a = f.extended_to(L), b = g.extended_to(L);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
  if (!a.tail.resolved || !b.tail.resolved)
    a.tail = TailLaw::unresolved();
  else
    a.tail.add(b.tail);
  return a;
}

SimpleFunction difference(const SimpleFunction& f, const SimpleFunction& g) {
  return sum(f, scaled(g, -1.0));
}

SimpleFunction product(const SimpleFunction& f, const SimpleFunction& g) {
  const Atom L = std::max(f.explicit_size(), g.explicit_size());
  SimpleFunction a = f.extended_to(L), b = g.extended_to(L);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    a.values[i] = (a.values[i] == 0.0 || b.values[i] == 0.0) ? 0.0 : a.values[i] * b.values[i];
  a.tail = product(a.tail, b.tail);
  return a;
}

SimpleFunction absolute(const SimpleFunction& f) {
  SimpleFunction out = f;
  for (double& v : out.values) v = std::abs(v);
  if (!f.tail.resolved || f.tail.is_zero()) return out;
  bool same_sign = true;
  for (const auto& t : f.tail.terms) same_sign = same_sign && t.coef * f.tail.terms[0].coef > 0.0;
  if (!f.tail.pairwise_disjoint() && !same_sign) {
    out.tail = TailLaw::unresolved();
    return out;
  }
  out.tail = TailLaw::zero();
  for (const auto& t : f.tail.terms) out.tail.add(abs_pow(t, 1.0));
  return out;
}

bool is_zero(const SimpleFunction& f) {
  return f.tail.is_zero() &&
         std::all_of(f.values.begin(), f.values.end(), [](double v) { return v == 0.0; });
}

}  // namespace orlicz
