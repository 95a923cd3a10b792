#include "gramdet/poly.hpp"

#include <algorithm>
#include <unordered_map>

#include "gramdet/error.hpp"

namespace gramdet {

namespace {

constexpr Monomial::Packed kGuardMask = [] {
  Monomial::Packed m = 0;
  for (unsigned i = 0; i < kNumVars; ++i) m |= Monomial::Packed{1} << (Monomial::kSlotBits * (i + 1) - 1);
  return m;
}();

void sort_and_merge(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    while (j < terms.size() && terms[j].mono == terms[i].mono) {
      terms[i].coef += terms[j].coef;
      ++j;
    }
    if (sgn(terms[i].coef) != 0) {
      if (out != i) terms[out] = std::move(terms[i]);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

}  // namespace

char var_name(Var v) {
  static constexpr char names[] = {'d', 'z', 'x', 'y', 'w'};
  return names[static_cast<int>(v)];
}

std::optional<Var> var_from_name(char c) {
  switch (c) {
    case 'd': return Var::d;
    case 'z': return Var::z;
    case 'x': return Var::x;
    case 'y': return Var::y;
    case 'w': return Var::w;
    default: return std::nullopt;
  }
}

Monomial::Monomial(const std::array<unsigned, kNumVars>& exps) {
  for (Var v : kAllVars) {
    unsigned e = exps[static_cast<int>(v)];
    if (e > kMaxExponent) throw Error("exponent overflow in monomial");
    packed_ |= Packed{e} << shift(v);
  }
}

Monomial Monomial::var(Var v, unsigned e) {
  std::array<unsigned, kNumVars> exps{};
  exps[static_cast<int>(v)] = e;
  return Monomial(exps);
}

unsigned Monomial::total_degree() const {
  unsigned t = 0;
  for (Var v : kAllVars) t += exponent(v);
  return t;
}

std::array<unsigned, kNumVars> Monomial::exponents() const {
  std::array<unsigned, kNumVars> e{};
  for (Var v : kAllVars) e[static_cast<int>(v)] = exponent(v);
  return e;
}

bool Monomial::divides(const Monomial& other) const {
  for (Var v : kAllVars)
    if (exponent(v) > other.exponent(v)) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Packed s = packed_ + o.packed_;
  if (s & kGuardMask) throw Error("exponent overflow in monomial product");
  return from_packed(s);
}

Monomial Monomial::operator/(const Monomial& o) const { return from_packed(packed_ - o.packed_); }

std::string Monomial::to_string() const {
  std::string s;
  for (Var v : kAllVars) {
    unsigned e = exponent(v);
    if (e == 0) continue;
    if (!s.empty()) s += '*';
    s += var_name(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
  unsigned ta = a.total_degree(), tb = b.total_degree();
  if (ta != tb) return ta > tb;
  return a.packed() > b.packed();
}

Polynomial::Polynomial(long c) {
  if (c != 0) terms_.push_back({Monomial(), mpz_class(c)});
}

Polynomial::Polynomial(const mpz_class& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial(), c});
}

Polynomial::Polynomial(const Monomial& m, const mpz_class& c) {
  if (sgn(c) != 0) terms_.push_back({m, c});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  sort_and_merge(terms);
  Polynomial p;
  p.terms_ = std::move(terms);
  return p;
}

Polynomial Polynomial::from_canonical(std::vector<Term> terms) {
  Polynomial p;
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

mpz_class Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return grlex_greater(t.mono, k); });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return 0;
}

int Polynomial::degree(Var v) const {
  if (terms_.empty()) return kMinusInfinity;
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.exponent(v)));
  return d;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return kMinusInfinity;
  return static_cast<int>(terms_.front().mono.total_degree());
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& q) { return *this = *this + q; }
Polynomial& Polynomial::operator-=(const Polynomial& q) { return *this = *this - q; }
Polynomial& Polynomial::operator*=(const Polynomial& q) { return *this = *this * q; }

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
  return true;
}

namespace {

Polynomial merge(const Polynomial& p, const Polynomial& q, bool negate_q) {
  const auto& a = p.terms();
  const auto& b = q.terms();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlex_greater(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_greater(b[j].mono, a[i].mono)) {
      out.push_back({b[j].mono, negate_q ? mpz_class(-b[j].coef) : b[j].coef});
      ++j;
    } else {
      mpz_class c = negate_q ? mpz_class(a[i].coef - b[j].coef) : mpz_class(a[i].coef + b[j].coef);
      if (sgn(c) != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return Polynomial::from_canonical(std::move(out));
}

}  // namespace

Polynomial operator+(const Polynomial& p, const Polynomial& q) { return merge(p, q, false); }
Polynomial operator-(const Polynomial& p, const Polynomial& q) { return merge(p, q, true); }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  if (p.size() == 1 && p.terms()[0].mono.is_one() && p.terms()[0].coef == 1) return q;
  if (q.size() == 1 && q.terms()[0].mono.is_one() && q.terms()[0].coef == 1) return p;
  std::unordered_map<Monomial::Packed, mpz_class, PackedHash> acc;
  acc.reserve(std::min<std::size_t>(p.size() * q.size(), 1u << 22));
  for (const auto& s : p.terms()) {
    for (const auto& t : q.terms()) {
      mpz_class& slot = acc[(s.mono * t.mono).packed()];
      mpz_addmul(slot.get_mpz_t(), s.coef.get_mpz_t(), t.coef.get_mpz_t());
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (sgn(c) != 0) out.push_back({Monomial::from_packed(k), std::move(c)});
  return Polynomial::from_terms(std::move(out));
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial pow(const Polynomial& p, unsigned long e) {
  Polynomial result(1);
  Polynomial base = p;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::optional<Polynomial> div_exact(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw ZeroDivisor();
  if (p.is_zero()) return Polynomial();
  for (Var v : kAllVars)
    if (p.degree(v) < q.degree(v)) return std::nullopt;
  const Term& lq = q.leading();
  if (q.size() == 1) {
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!lq.mono.divides(t.mono) || !mpz_divisible_p(t.coef.get_mpz_t(), lq.coef.get_mpz_t()))
        return std::nullopt;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), t.coef.get_mpz_t(), lq.coef.get_mpz_t());
      out.push_back({t.mono / lq.mono, std::move(c)});
    }
    return Polynomial::from_terms(std::move(out));
  }
  std::map<Monomial, mpz_class, GrlexGreater> rem;
  for (const auto& t : p.terms()) rem.emplace(t.mono, t.coef);
  std::vector<Term> quotient;
  mpz_class c, prod;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lq.mono.divides(it->first) || !mpz_divisible_p(it->second.get_mpz_t(), lq.coef.get_mpz_t()))
      return std::nullopt;
    Monomial m = it->first / lq.mono;
    mpz_divexact(c.get_mpz_t(), it->second.get_mpz_t(), lq.coef.get_mpz_t());
    rem.erase(it);
    for (std::size_t i = 1; i < q.size(); ++i) {
      const Term& t = q.terms()[i];
      prod = t.coef * c;
      auto [pos, inserted] = rem.try_emplace(t.mono * m);
      pos->second -= prod;
      if (sgn(pos->second) == 0) rem.erase(pos);
    }
    quotient.push_back({m, c});
  }
  return Polynomial::from_terms(std::move(quotient));
}

mpz_class eval(const Polynomial& p, const Point& point) {
  std::array<std::vector<mpz_class>, kNumVars> powers;
  for (Var v : kAllVars) {
    int dv = p.degree(v);
    auto& pw = powers[static_cast<int>(v)];
    pw.assign(1, mpz_class(1));
    for (int e = 1; e <= dv; ++e) pw.push_back(pw.back() * point[static_cast<int>(v)]);
  }
  mpz_class sum = 0, term;
  for (const auto& t : p.terms()) {
    term = t.coef;
    for (Var v : kAllVars) {
      unsigned e = t.mono.exponent(v);
      if (e) term *= powers[static_cast<int>(v)][e];
    }
    sum += term;
  }
  return sum;
}

Polynomial substitute(const Polynomial& p, const Substitution& s) {
  if (s.empty()) return p;
  std::array<std::vector<Polynomial>, kNumVars> powers;
  for (const auto& [v, q] : s) {
    int dv = p.degree(v);
    auto& pw = powers[static_cast<int>(v)];
    pw.assign(1, Polynomial(1));
    for (int e = 1; e <= dv; ++e) pw.push_back(pw.back() * q);
  }
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    auto exps = t.mono.exponents();
    Polynomial factor(1);
    for (const auto& [v, q] : s) {
      unsigned& e = exps[static_cast<int>(v)];
      if (e) factor = factor * powers[static_cast<int>(v)][e];
      e = 0;
    }
    Monomial rest(exps);
    for (const auto& f : factor.terms()) out.push_back({f.mono * rest, f.coef * t.coef});
  }
  return Polynomial::from_terms(std::move(out));
}

Polynomial swap_xy(const Polynomial& p) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    auto e = t.mono.exponents();
    std::swap(e[static_cast<int>(Var::x)], e[static_cast<int>(Var::y)]);
    out.push_back({Monomial(e), t.coef});
  }
  return Polynomial::from_terms(std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = sgn(t.coef) < 0;
    mpz_class mag = abs(t.coef);
    if (first) {
      if (neg) s += '-';
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + "*";
      s += t.mono.to_string();
    }
  }
  return s;
}

int degree(const Polynomial& p, Var v) { return p.degree(v); }
int total_degree(const Polynomial& p) { return p.total_degree(); }

}  // namespace gramdet
