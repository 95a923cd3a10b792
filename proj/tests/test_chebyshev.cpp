#include "doctest.h"
#include "gramdet/chebyshev.hpp"
#include "gramdet/error.hpp"

using namespace gramdet;

namespace {
const Polynomial d = Polynomial::var(Var::d), z = Polynomial::var(Var::z), x = Polynomial::var(Var::x),
                 y = Polynomial::var(Var::y), w = Polynomial::var(Var::w);
Polynomial T(unsigned k) { return cheb_first(k); }
Polynomial D(unsigned k) { return cheb_second(k); }
}  // namespace

TEST_CASE("chebyshev: small values") {
  CHECK(T(0) == Polynomial(2));
  CHECK(T(1) == d);
  CHECK(T(2) == d * d - 2);
  CHECK(T(4) == parse_poly("d^4 - 4*d^2 + 2"));
  CHECK(T(4) - 2 == d * d * (d * d - 4));
  CHECK(D(0) == Polynomial(1));
  CHECK(D(1) == d);
  CHECK(D(2) == d * d - 1);
  CHECK(D(3) == parse_poly("d^3 - 2*d"));
  CHECK(cheb_first(2, Var::w) == w * w - 2);
}

TEST_CASE("chebyshev: recurrences up to 32") {
  for (unsigned k = 2; k <= 32; ++k) {
    CHECK(T(k) - d * T(k - 1) + T(k - 2) == Polynomial());
    CHECK(D(k) - d * D(k - 1) + D(k - 2) == Polynomial());
    CHECK(T(k) == D(k) - D(k - 2));
    CHECK(T(k).degree(Var::d) == static_cast<int>(k));
  }
}

TEST_CASE("chebyshev: T6 - 2 factorization") {
  CHECK(T(6) - 2 == (d * d - 4) * pow(d * d - 1, 2));
}

TEST_CASE("chebyshev: alpha and binomial") {
  CHECK(alpha(3, 1) == 9);
  CHECK(alpha(3, 3) == 1);
  CHECK(alpha(1, 1) == 1);
  CHECK(binomial(6, -1) == 0);
  CHECK(binomial(6, 7) == 0);
  CHECK(binomial(40, 20) == mpz_class("137846528820"));
  CHECK(binomial_ul(8, 3) == 56);
}

TEST_CASE("chebyshev: type A exponents telescope") {
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    mpz_class weighted = 0;
    bool nonnegative = true;
    for (int i = 1; i <= n; ++i) {
      mpz_class diff = alpha(n, i) - (i < n ? alpha(n, i + 1) : mpz_class(0));
      nonnegative = nonnegative && diff >= 0;
      weighted += i * diff;
    }
    CHECK(nonnegative == (n <= 7));
    // Telescoped degree is sum of alpha_i = C(2n, n-1).
    CHECK(weighted == binomial(2 * n, n - 1));
    if (n > 8) continue;
    Polynomial f = build_formula(FormulaId::TypeA, n);
    CHECK(f.degree(Var::d) == weighted.get_si());
    // Leading coefficient of every Delta_i is 1.
    CHECK(f.leading().coef == 1);
  }
  CHECK(alpha(8, 1) - alpha(8, 2) == -208);
}

TEST_CASE("chebyshev: type A formula as a ratio product") {
  for (int n = 1; n <= 7; ++n) {
    Polynomial num(1), den(1);
    for (int i = 1; i <= n; ++i) {
      unsigned long a = alpha(n, i).get_ui();
      num *= pow(D(i), a);
      den *= pow(D(i - 1), a);
    }
    CHECK(build_formula(FormulaId::TypeA, n) * den == num);
  }
}

TEST_CASE("chebyshev: formula examples") {
  CHECK(build_formula(FormulaId::TypeA, 3) == pow(D(1), 4) * pow(D(2), 4) * D(3));
  CHECK(build_formula(FormulaId::TypeB, 2) == pow(d * d - z * z, 4) * (pow(d * d - 2, 2) - z * z));
  CHECK(build_formula(FormulaId::QiMb, 1) == (d - z) * ((d + z) * w - 2 * x * y));
  CHECK(build_formula(FormulaId::TildeConjecture, 3) == pow(T(4) - 2, 6) * (T(6) - 2));
  CHECK(build_formula(FormulaId::Mb1Conjecture, 2) ==
        pow(T(1) - z, 4) * (T(2) * T(2) - z * z) * pow((d + z) * w - 2 * x * y, 4) * (T(4) - 2));
  CHECK(build_formula(FormulaId::Prop1Divisor, 3) == pow(d - z, 15));
  CHECK(build_formula(FormulaId::Prop2Divisor, 2) == pow(w * (d + z) - 2 * x * y, 4));
  CHECK(build_formula(FormulaId::MaintheoremFactor, 1) == (w * (d + z) - 2 * x * y) * (d - z));
}

TEST_CASE("chebyshev: main theorem factor times tilde is the Mb1 formula") {
  for (int n = 2; n <= 3; ++n)
    CHECK(build_formula(FormulaId::MaintheoremFactor, n) * build_formula(FormulaId::TildeConjecture, n) ==
          build_formula(FormulaId::Mb1Conjecture, n));
}

TEST_CASE("chebyshev: formula names and bounds") {
  for (auto id : {FormulaId::TypeA, FormulaId::TypeB, FormulaId::QiMb, FormulaId::Mb1Conjecture,
                  FormulaId::TildeConjecture, FormulaId::MaintheoremFactor, FormulaId::Prop1Divisor,
                  FormulaId::Prop2Divisor, FormulaId::Prop3Divisor})
    CHECK(formula_from_name(formula_name(id)) == id);
  CHECK_THROWS_AS(formula_from_name("nope"), Error);
  CHECK_THROWS_AS(build_formula(FormulaId::TildeConjecture, 1), UnsupportedN);
  CHECK_THROWS_AS(build_formula(FormulaId::Prop3Divisor, 1), UnsupportedN);
  CHECK_THROWS_AS(build_formula(FormulaId::TypeA, 0), UnsupportedN);
}
