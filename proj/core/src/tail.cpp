#include "orlicz/tail.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "orlicz/extended.hpp"

namespace orlicz {

namespace {

long long ipow(long long k, int d) {
  long long r = 1;
  for (int i = 0; i < d; ++i) r *= k;
  return r;
}

constexpr long long kMaxExplicitTerms = 5'000'000;

}  // namespace

long long IndexMap::at(long long k) const { return scale * ipow(k, degree) + offset; }

std::optional<long long> IndexMap::index_of(long long n) const {
  long long shifted = n - offset;
  if (shifted <= 0 || shifted % scale != 0) return std::nullopt;
  long long m = shifted / scale;
  if (degree == 1) return m;
  auto k = static_cast<long long>(std::llround(std::pow(static_cast<double>(m), 1.0 / degree)));
  for (long long c = std::max(1LL, k - 1); c <= k + 1; ++c)
    if (ipow(c, degree) == m) return c;
  return std::nullopt;
}

std::optional<long long> Lattice::index_of(long long n) const {
  auto k = map.index_of(n);
  if (!k || *k < first) return std::nullopt;
  return k;
}

long long Lattice::first_index_above(long long bound) const {
  long long k = first;
  if (at(k) > bound) return k;
  // at() is strictly increasing in k; gallop then bisect.
  long long hi = std::max(k + 1, 2 * k);
  while (at(hi) <= bound) hi *= 2;
  long long lo = k;  // at(lo) <= bound
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (at(mid) > bound)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

bool Lattice::disjoint_from(const Lattice& o) const {
  if (map.degree != 1 || o.map.degree != 1 || map.scale != o.map.scale) return false;
  long long m = map.scale;
  long long d = ((map.offset - o.map.offset) % m + m) % m;
  return d != 0;
}

double TailTerm::value(long long k) const {
  if (coef == 0.0) return 0.0;
  double kk = static_cast<double>(k);
  double lg = std::log(std::abs(coef)) + kk * std::log(ratio);
  for (const auto& f : factors) lg += f.s * std::log(kk + f.beta);
  return std::copysign(std::exp(lg), coef);
}

double TailTerm::exponent_sum() const {
  double s = 0.0;
  for (const auto& f : factors) s += f.s;
  return s;
}

double TailTerm::limit() const {
  if (coef == 0.0) return 0.0;
  if (ratio < 1.0) return 0.0;
  if (ratio > 1.0) return std::copysign(kInf, coef);
  double s = exponent_sum();
  if (s < 0.0) return 0.0;
  if (s > 0.0) return std::copysign(kInf, coef);
  return coef;
}

TailTerm& TailTerm::normalize() {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.beta < b.beta; });
  std::vector<Factor> merged;
  for (const auto& f : factors) {
    if (!merged.empty() && merged.back().beta == f.beta)
      merged.back().s += f.s;
    else
      merged.push_back(f);
  }
  std::erase_if(merged, [](const Factor& f) { return f.s == 0.0; });
  factors = std::move(merged);
  return *this;
}

std::optional<TailTerm::Monotone> TailTerm::monotone_from(long long k_start) const {
  if (coef == 0.0 || is_constant()) return Monotone{k_start, Trend::Constant};
  const double lr = std::log(ratio);
  for (long long k = std::max(k_start, 1LL); k < (1LL << 50); k *= 2) {
    double kk = static_cast<double>(k);
    bool valid = std::all_of(factors.begin(), factors.end(),
                             [&](const Factor& f) { return kk + f.beta > 0.0; });
    if (!valid) continue;
    // j * sum_i s_i / (j + beta_i) = sum_i s_i w_i(j), w_i(j) between w_i(k) and 1.
    double upper = 0.0, lower = 0.0;
    for (const auto& f : factors) {
      double w = kk / (kk + f.beta);
      double wmax = std::max(w, 1.0), wmin = std::min(w, 1.0);
      upper += f.s > 0 ? f.s * wmax : f.s * wmin;
      lower += f.s > 0 ? f.s * wmin : f.s * wmax;
    }
    bool decreasing = (lr < 0.0 && (upper <= 0.0 || lr + upper / kk < 0.0)) ||
                      (lr == 0.0 && upper < 0.0);
    bool increasing = (lr > 0.0 && (lower >= 0.0 || lr + lower / kk > 0.0)) ||
                      (lr == 0.0 && lower > 0.0);
    if (decreasing) return Monotone{k, Trend::Decreasing};
    if (increasing) return Monotone{k, Trend::Increasing};
  }
  return std::nullopt;
}

bool TailTerm::same_shape(const TailTerm& o) const {
  return support.map == o.support.map && support.first == o.support.first &&
         ratio == o.ratio && factors == o.factors;
}

TailTerm make_term(Lattice support, double coef, double ratio, std::vector<Factor> factors) {
  TailTerm t{support, coef, ratio, std::move(factors)};
  t.normalize();
  return t;
}

TailTerm scaled(TailTerm t, double c) {
  t.coef *= c;
  return t;
}

TailTerm times(TailTerm a, const TailTerm& b) {
  a.coef *= b.coef;
  a.ratio *= b.ratio;
  a.factors.insert(a.factors.end(), b.factors.begin(), b.factors.end());
  a.normalize();
  return a;
}

TailTerm abs_pow(TailTerm t, double p) {
  t.coef = std::pow(std::abs(t.coef), p);
  t.ratio = std::pow(t.ratio, p);
  for (auto& f : t.factors) f.s *= p;
  t.normalize();
  return t;
}

TailTerm reciprocal(TailTerm t) {
  t.coef = 1.0 / t.coef;
  t.ratio = 1.0 / t.ratio;
  for (auto& f : t.factors) f.s = -f.s;
  return t;
}

std::optional<TailTerm> substitute(const TailTerm& t, const IndexMap& m) {
  TailTerm out;
  out.support = Lattice::all();
  const double A = static_cast<double>(m.scale);
  const double B = static_cast<double>(m.offset);
  if (m.degree == 1) {
    // ratio^{A j + B} * prod (A j + B + beta)^s
    out.coef = t.coef * std::pow(t.ratio, B);
    out.ratio = std::pow(t.ratio, A);
    for (const auto& f : t.factors) {
      out.coef *= std::pow(A, f.s);
      out.factors.push_back({(B + f.beta) / A, f.s});
    }
  } else {
    if (t.ratio != 1.0) return std::nullopt;
    out.coef = t.coef;
    out.ratio = 1.0;
    for (const auto& f : t.factors) {
      if (B + f.beta != 0.0) return std::nullopt;
      out.coef *= std::pow(A, f.s);
      out.factors.push_back({0.0, f.s * m.degree});
    }
  }
  out.normalize();
  return out;
}

TailLaw TailLaw::constant(double c) {
  TailLaw law;
  if (c != 0.0) law.terms.push_back(make_term(Lattice::all(), c));
  return law;
}

double TailLaw::eval(long long n) const {
  if (!resolved) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  for (const auto& t : terms)
    if (auto k = t.support.index_of(n)) v += t.value(*k);
  return v;
}

bool TailLaw::pairwise_disjoint() const {
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (!terms[i].support.disjoint_from(terms[j].support)) return false;
  return true;
}

TailLaw& TailLaw::add(const TailTerm& t) {
  if (t.coef == 0.0) return *this;
  for (auto& e : terms) {
    if (e.same_shape(t)) {
      e.coef += t.coef;
      std::erase_if(terms, [](const TailTerm& x) { return x.coef == 0.0; });
      return *this;
    }
  }
  terms.push_back(t);
  return *this;
}

TailLaw& TailLaw::add(const TailLaw& o) {
  if (!o.resolved) resolved = false;
  if (!resolved) {
    terms.clear();
    return *this;
  }
  for (const auto& t : o.terms) add(t);
  return *this;
}

TailLaw TailLaw::scaled(double c) const {
  if (!resolved) return unresolved();
  TailLaw out;
  if (c == 0.0) return out;
  for (const auto& t : terms) out.terms.push_back(orlicz::scaled(t, c));
  return out;
}

double SeriesSum::as_double() const {
  switch (kind) {
    case Kind::Finite: return value;
    case Kind::PlusInfinity: return kInf;
    case Kind::MinusInfinity: return -kInf;
    case Kind::Unresolved: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

SeriesSum operator+(const SeriesSum& a, const SeriesSum& b) {
  using K = SeriesSum::Kind;
  if (a.kind == K::Unresolved || b.kind == K::Unresolved) return SeriesSum::unresolved();
  if (a.kind == K::Finite && b.kind == K::Finite)
    return SeriesSum::of(a.value + b.value, a.error + b.error);
  if (a.kind == K::Finite) return b;
  if (b.kind == K::Finite) return a;
  if (a.kind == b.kind) return a;
  return SeriesSum::unresolved();
}

double hurwitz_zeta(double s, double a) {
  // Shift, then Euler-Maclaurin with Bernoulli corrections.
  double head = 0.0;
  while (a < 20.0) {
    head += std::pow(a, -s);
    a += 1.0;
  }
  static constexpr std::array<double, 6> kB2j = {1.0 / 6, -1.0 / 30, 1.0 / 42,
                                                 -1.0 / 30, 5.0 / 66, -691.0 / 2730};
  double tail = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  double rising = s;  // s (s+1) ... (s+2j-2)
  double fact = 2.0;  // (2j)!
  for (std::size_t j = 1; j <= kB2j.size(); ++j) {
    tail += kB2j[j - 1] / fact * rising * std::pow(a, -s - 2.0 * j + 1.0);
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return head + tail;
}

namespace {

SeriesSum polynomial_tail(const TailTerm& t, long long k_start) {
  const double S = t.exponent_sum();
  double max_beta = 0.0;
  for (const auto& f : t.factors) max_beta = std::max(max_beta, std::abs(f.beta));
  const long long k1 = k_start + std::max<long long>(2000, static_cast<long long>(20 * max_beta) + 1);

  CompensatedSum head;
  for (long long k = k_start; k < k1; ++k) head.add(t.value(k));

  // prod_i (1 + beta_i x)^{s_i} = sum_m c_m x^m via the log series.
  constexpr int kOrder = 7;
  std::array<double, kOrder + 1> L{}, c{};
  for (int l = 1; l <= kOrder; ++l) {
    double sign = (l % 2 == 1) ? 1.0 : -1.0;
    for (const auto& f : t.factors) L[l] += f.s * sign * std::pow(f.beta, l) / l;
  }
  c[0] = 1.0;
  for (int m = 1; m <= kOrder; ++m) {
    double acc = 0.0;
    for (int l = 1; l <= m; ++l) acc += l * L[l] * c[m - l];
    c[m] = acc / m;
  }
  const double a = static_cast<double>(k1);
  CompensatedSum rem;
  for (int m = 0; m < kOrder; ++m) rem.add(c[m] * hurwitz_zeta(m - S, a));
  double err = std::abs(t.coef * c[kOrder] * hurwitz_zeta(kOrder - S, a));
  double total = head.value() + t.coef * rem.value();
  err += 1e-15 * std::abs(total);
  return SeriesSum::of(total, err);
}

SeriesSum geometric_tail(const TailTerm& t, long long k_start) {
  CompensatedSum acc;
  double abs_acc = 0.0;
  for (long long k = k_start; k < k_start + kMaxExplicitTerms; ++k) {
    double v = t.value(k);
    acc.add(v);
    abs_acc += std::abs(v);
    double kk = static_cast<double>(k);
    double q = t.ratio;
    for (const auto& f : t.factors)
      if (f.s > 0) q *= std::pow(1.0 + 1.0 / (kk + f.beta), f.s);
    if (q < 1.0) {
      double bound = std::abs(v) * q / (1.0 - q);
      if (bound <= 1e-17 * abs_acc || bound < 1e-300) return SeriesSum::of(acc.value(), bound);
    }
  }
  return SeriesSum::unresolved();
}

}  // namespace

SeriesSum sum_from(const TailTerm& t, long long k_start) {
  if (t.coef == 0.0) return SeriesSum::of(0.0);
  const auto diverge = t.coef > 0 ? SeriesSum::Kind::PlusInfinity : SeriesSum::Kind::MinusInfinity;
  if (t.ratio > 1.0) return {diverge, 0.0, 0.0};
  if (t.ratio == 1.0) {
    if (t.exponent_sum() >= -1.0) return {diverge, 0.0, 0.0};
    return polynomial_tail(t, k_start);
  }
  return geometric_tail(t, k_start);
}

SeriesSum sum_above(const TailTerm& t, long long bound) {
  return sum_from(t, t.support.first_index_above(bound));
}

std::string describe(const TailTerm& t) {
  std::ostringstream os;
  os.precision(6);
  os << t.coef;
  if (t.ratio != 1.0) os << "*" << t.ratio << "^k";
  for (const auto& f : t.factors) {
    os << "*(k";
    if (f.beta != 0.0) os << (f.beta > 0 ? "+" : "") << f.beta;
    os << ")^" << f.s;
  }
  const auto& m = t.support.map;
  if (!m.is_identity()) {
    os << " on n=" << m.scale << "*k";
    if (m.degree != 1) os << "^" << m.degree;
    if (m.offset != 0) os << (m.offset > 0 ? "+" : "") << m.offset;
  }
  return os.str();
}

std::string describe(const TailLaw& law) {
  if (!law.resolved) return "unresolved";
  if (law.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < law.terms.size(); ++i) {
    if (i) out += " + ";
    out += describe(law.terms[i]);
  }
  return out;
}

}  // namespace orlicz
