#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gramdet {

enum class Var : std::uint8_t { d = 0, z = 1, x = 2, y = 3, w = 4 };

inline constexpr int kNumVars = 5;
inline constexpr std::array<Var, kNumVars> kAllVars = {Var::d, Var::z, Var::x, Var::y, Var::w};
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min();

char var_name(Var v);
std::optional<Var> var_from_name(char c);

// Exponent vector packed into 24-bit slots, d in the highest slot. The top
// bit of each slot is a guard so overflow in products is detectable.
class Monomial {
 public:
  using Packed = unsigned __int128;
  static constexpr unsigned kSlotBits = 24;
  static constexpr unsigned kMaxExponent = (1u << (kSlotBits - 1)) - 1;

  Monomial() = default;
  explicit Monomial(const std::array<unsigned, kNumVars>& exps);
  static Monomial var(Var v, unsigned e = 1);

  unsigned exponent(Var v) const {
    return static_cast<unsigned>(packed_ >> shift(v)) & kMaxExponent;
  }
  unsigned total_degree() const;
  std::array<unsigned, kNumVars> exponents() const;
  Packed packed() const { return packed_; }
  static Monomial from_packed(Packed p) {
    Monomial m;
    m.packed_ = p;
    return m;
  }
  bool is_one() const { return packed_ == 0; }
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& o) const;
  // Requires divides(o, *this).
  Monomial operator/(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.packed_ == b.packed_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.packed_ != b.packed_; }

  std::string to_string() const;

 private:
  static constexpr unsigned shift(Var v) {
    return kSlotBits * (kNumVars - 1 - static_cast<unsigned>(v));
  }
  Packed packed_ = 0;
};

struct PackedHash {
  std::size_t operator()(Monomial::Packed p) const {
    return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(p) ^ static_cast<std::uint64_t>(p >> 64) * 0x9E3779B97F4A7C15ull);
  }
};

// Graded lexicographic: higher total degree first, then d > z > x > y > w.
bool grlex_greater(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_greater(a, b); }
};

struct Term {
  Monomial mono;
  mpz_class coef;
};

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(const mpz_class& c);
  Polynomial(const Monomial& m, const mpz_class& c = 1);
  static Polynomial var(Var v, unsigned e = 1) { return Polynomial(Monomial::var(v, e)); }
  // Terms in any order, possibly with repeats or zeros.
  static Polynomial from_terms(std::vector<Term> terms);
  // Terms already strictly decreasing with nonzero coefficients.
  static Polynomial from_canonical(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Term& leading() const { return terms_.front(); }
  mpz_class coefficient(const Monomial& m) const;

  int degree(Var v) const;
  int total_degree() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q);

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const;

 private:
  std::vector<Term> terms_;  // strictly decreasing in grlex, no zero coefficients
};

Polynomial operator+(const Polynomial& p, const Polynomial& q);
Polynomial operator-(const Polynomial& p, const Polynomial& q);
Polynomial operator*(const Polynomial& p, const Polynomial& q);

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, unsigned long e);

// nullopt means NotDivisible. Throws ZeroDivisor when q is zero.
std::optional<Polynomial> div_exact(const Polynomial& p, const Polynomial& q);

using Point = std::array<mpz_class, kNumVars>;
mpz_class eval(const Polynomial& p, const Point& point);

using Substitution = std::map<Var, Polynomial>;
Polynomial substitute(const Polynomial& p, const Substitution& s);

// x <-> y exchange.
Polynomial swap_xy(const Polynomial& p);

Polynomial parse_poly(std::string_view text);

int degree(const Polynomial& p, Var v);
int total_degree(const Polynomial& p);

}  // namespace gramdet
