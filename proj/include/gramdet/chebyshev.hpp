#pragma once

#include <string>
#include <string_view>

#include "gramdet/poly.hpp"

namespace gramdet {

// First kind: T_0 = 2, T_1 = v, T_k = v*T_{k-1} - T_{k-2}.
Polynomial cheb_first(unsigned k, Var v = Var::d);
// Second kind: D_0 = 1, D_1 = d, same recurrence.
Polynomial cheb_second(unsigned k);

// C(n, k), zero when k < 0 or k > n.
mpz_class binomial(long n, long k);
unsigned long binomial_ul(long n, long k);

// C(2n, n-i) - C(2n, n-i-1), for 1 <= i <= n.
mpz_class alpha(int n, int i);

enum class FormulaId {
  TypeA,
  TypeB,
  QiMb,
  Mb1Conjecture,
  TildeConjecture,
  MaintheoremFactor,
  Prop1Divisor,
  Prop2Divisor,
  Prop3Divisor,
};

std::string_view formula_name(FormulaId id);
FormulaId formula_from_name(std::string_view name);

// Throws UnsupportedN for n below the tag's minimum.
Polynomial build_formula(FormulaId id, int n);
int formula_min_n(FormulaId id);

}  // namespace gramdet
