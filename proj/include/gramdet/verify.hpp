#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gramdet/determinant.hpp"
#include "gramdet/diagrams.hpp"

namespace gramdet {

enum class Claim {
  TypeATheorem,
  TypeBTheorem,
  QiConjecture,
  Prop1,
  Prop2,
  Prop3,
  MainLemma,
  MainTheorem,
  Mb1Conjecture,
  TildeConjecture,
};

inline constexpr Claim kAllClaims[] = {
    Claim::TypeATheorem, Claim::TypeBTheorem, Claim::QiConjecture, Claim::Prop1,         Claim::Prop2,
    Claim::Prop3,        Claim::MainLemma,    Claim::MainTheorem,  Claim::Mb1Conjecture, Claim::TildeConjecture,
};

// "type-a", "type-b", "qi-conjecture", "prop1", ..., "tilde-conjecture"
std::string_view claim_name(Claim c);
Claim claim_from_name(std::string_view name);
bool is_conjecture(Claim c);
int claim_min_n(Claim c);

enum class Method { Auto, Exact, Randomized };
std::string_view method_name(Method m);
Method method_from_name(std::string_view name);

enum class Verdict { Verified, Refuted, Inconclusive };
std::string_view verdict_name(Verdict v);

struct ClaimOptions {
  Method method = Method::Auto;
  std::uint64_t seed = 1;
  int trials = 20;
  unsigned jobs = 0;
  EnumLimits limits;
  // Auto picks the exact method when the modular engine's estimate is below
  // this many field operations.
  double exact_threshold = 3e10;
  double max_work = 6e11;
};

struct ClaimReport {
  Claim claim = Claim::TypeATheorem;
  int n = 0;
  std::string method;  // "exact", "randomized" or "certificate"
  Verdict verdict = Verdict::Inconclusive;
  std::string witness;  // difference polynomial or evaluation point; set when refuted
  std::string value;    // common value of both sides for short exact results
  std::size_t value_terms = 0;
  std::string detail;
  double wall_time = 0;
  std::optional<std::uint64_t> seed;
  int trials = 0;
  std::uint64_t prime = 0;
  std::optional<double> failure_bound_log2;
};

// Throws UnsupportedN below claim_min_n and ResourceLimit when the bases
// exceed options.limits.
ClaimReport run_claim(Claim claim, int n, const ClaimOptions& options = {});

}  // namespace gramdet
