#include "gramdet/chebyshev.hpp"

#include <array>

#include "gramdet/error.hpp"

namespace gramdet {

namespace {

Polynomial recurrence(unsigned k, Polynomial f0, Polynomial f1, const Polynomial& v) {
  if (k == 0) return f0;
  for (unsigned i = 2; i <= k; ++i) {
    Polynomial next = v * f1 - f0;
    f0 = std::move(f1);
    f1 = std::move(next);
  }
  return f1;
}

Polynomial var(Var v) { return Polynomial::var(v); }

Polynomial T(unsigned k) { return cheb_first(k); }

constexpr std::array<std::pair<FormulaId, std::string_view>, 9> kNames = {{
    {FormulaId::TypeA, "type-a"},
    {FormulaId::TypeB, "type-b"},
    {FormulaId::QiMb, "qi-mb"},
    {FormulaId::Mb1Conjecture, "mb1-conjecture"},
    {FormulaId::TildeConjecture, "tilde-conjecture"},
    {FormulaId::MaintheoremFactor, "maintheorem-factor"},
    {FormulaId::Prop1Divisor, "prop1-divisor"},
    {FormulaId::Prop2Divisor, "prop2-divisor"},
    {FormulaId::Prop3Divisor, "prop3-divisor"},
}};

}  // namespace

Polynomial cheb_first(unsigned k, Var v) { return recurrence(k, Polynomial(2), var(v), var(v)); }

Polynomial cheb_second(unsigned k) { return recurrence(k, Polynomial(1), var(Var::d), var(Var::d)); }

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

unsigned long binomial_ul(long n, long k) {
  mpz_class b = binomial(n, k);
  if (!b.fits_ulong_p()) throw ResourceLimit("binomial exponent too large");
  return b.get_ui();
}

mpz_class alpha(int n, int i) {
  if (n < 1 || i < 1 || i > n) throw UnsupportedN("alpha requires 1 <= i <= n");
  return binomial(2 * n, n - i) - binomial(2 * n, n - i - 1);
}

std::string_view formula_name(FormulaId id) {
  for (const auto& [f, name] : kNames)
    if (f == id) return name;
  return "?";
}

FormulaId formula_from_name(std::string_view name) {
  for (const auto& [f, n] : kNames)
    if (n == name) return f;
  throw Error("unknown formula '" + std::string(name) + "'");
}

int formula_min_n(FormulaId id) {
  return (id == FormulaId::Prop3Divisor || id == FormulaId::TildeConjecture) ? 2 : 1;
}

Polynomial build_formula(FormulaId id, int n) {
  if (n < formula_min_n(id))
    throw UnsupportedN(std::string(formula_name(id)) + " requires n >= " + std::to_string(formula_min_n(id)));
  const Polynomial d = var(Var::d), z = var(Var::z), x = var(Var::x), y = var(Var::y), w = var(Var::w);
  auto c = [n](int k) { return binomial_ul(2 * n, n - k); };
  const Polynomial prop2 = w * (d + z) - 2 * x * y;
  Polynomial r(1);
  switch (id) {
    case FormulaId::TypeA: {
      // Exponents go negative from n = 8 on; the quotient is still exact.
      Polynomial den(1);
      for (int i = 1; i <= n; ++i) {
        mpz_class e = alpha(n, i) - (i < n ? alpha(n, i + 1) : mpz_class(0));
        if (e >= 0)
          r *= pow(cheb_second(i), e.get_ui());
        else
          den *= pow(cheb_second(i), mpz_class(-e).get_ui());
      }
      auto q = div_exact(r, den);
      if (!q) throw InternalInexactDivision("type A product is not a polynomial");
      return *q;
    }
    case FormulaId::TypeB:
      for (int i = 1; i <= n; ++i) r *= pow(T(i) * T(i) - z * z, c(i));
      return r;
    case FormulaId::QiMb: {
      for (int k = 1; k <= n; ++k) {
        Polynomial sz = (k % 2 == 0) ? z : -z;
        r *= pow(T(k) + sz, c(k));
        Polynomial base = (T(k) - sz) * cheb_first(k, Var::w);
        base -= (k % 2 == 1) ? 2 * x * y : 2 * (2 - z);
        r *= pow(base, c(k));
      }
      for (int i = 1; i <= n - 1; ++i)
        for (int k = i + 1; k <= n; ++k) r *= pow(T(2 * k) - 2, c(k));
      return r;
    }
    case FormulaId::Mb1Conjecture:
      r = pow((d - z) * ((d + z) * w - 2 * x * y), c(1));
      for (int k = 2; k <= n; ++k) r *= pow(T(k) * T(k) - z * z, c(k));
      for (int k = 2; k <= n; ++k) r *= pow(T(2 * k) - 2, c(k));
      return r;
    case FormulaId::TildeConjecture:
      for (int k = 2; k <= n; ++k) r *= pow(T(2 * k) - 2, c(k));
      return r;
    case FormulaId::MaintheoremFactor:
      r = pow(prop2 * (d - z), c(1));
      for (int k = 2; k <= n; ++k) r *= pow(T(k) * T(k) - z * z, c(k));
      return r;
    case FormulaId::Prop1Divisor:
      return pow(d - z, c(1));
    case FormulaId::Prop2Divisor:
      return pow(prop2, c(1));
    case FormulaId::Prop3Divisor:
      return pow((d * d - 2 - z) * (w * w - 2) - 2 * (2 - z), c(2));
  }
  throw Error("unknown formula id");
}

}  // namespace gramdet
