#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "gramdet/chebyshev.hpp"
#include "gramdet/determinant.hpp"
#include "gramdet/error.hpp"
#include "gramdet/gram.hpp"
#include "support.hpp"

using namespace gramdet;

namespace {

const Polynomial d = Polynomial::var(Var::d), z = Polynomial::var(Var::z), x = Polynomial::var(Var::x),
                 y = Polynomial::var(Var::y), w = Polynomial::var(Var::w);

PolyMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  PolyMatrix m(n);
  std::uniform_int_distribution<int> zero(0, 5);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (zero(rng)) m.at(i, j) = testing::random_monomial(rng);
  return m;
}

void check_eval_homomorphism(const PolyMatrix& m, const Polynomial& det, std::mt19937_64& rng, int points) {
  for (int k = 0; k < points; ++k) {
    Point p = testing::random_point(rng, -6, 6);
    REQUIRE(det_integer(eval_matrix(m, p), m.dim()) == eval(det, p));
  }
}

}  // namespace

TEST_CASE("det: known small determinants") {
  CHECK(det_exact(build_gram(Form::Agen, 3)) == parse_poly("(d^2-1)^4*z^5*(z^2-2)"));
  CHECK(det_exact(build_gram(Form::B, 2)) == build_formula(FormulaId::TypeB, 2));
  CHECK(det_exact(build_gram(Form::A, 3)) == build_formula(FormulaId::TypeA, 3));
  CHECK(det_exact(build_gram(Form::Mb, 1)) == (d - z) * (w * (d + z) - 2 * x * y));
  CHECK(det_exact(build_gram(Form::Mb1, 2)) == build_formula(FormulaId::Mb1Conjecture, 2));
}

TEST_CASE("det: Bareiss agrees with cofactor expansion") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_matrix(rng, 1 + rng() % 5);
    REQUIRE(det_bareiss(m) == testing::cofactor_det(m));
  }
}

TEST_CASE("det: modular engine agrees with Bareiss") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = random_matrix(rng, 1 + rng() % 6);
    REQUIRE(det_modular(m) == det_bareiss(m));
  }
  for (auto f : {Form::A, Form::Agen, Form::B, Form::Mb, Form::Mb1, Form::MbN1}) {
    auto g = build_gram(f, 2);
    CHECK(det_modular(g.entries) == det_bareiss(g.entries));
  }
  auto t = substitute(build_gram(Form::MbN1, 3), tilde_substitution());
  CHECK(det_modular(t.entries) == det_bareiss(t.entries));
}

TEST_CASE("det: large coefficients through several primes") {
  PolyMatrix m(3);
  mpz_class big("123456789012345678901234567890123");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = Polynomial(big + static_cast<long>(i * 7 + j * j)) * pow(d, i + j) + z;
  CHECK(det_modular(m) == det_bareiss(m));
}

TEST_CASE("det: singular and trivial matrices") {
  PolyMatrix zero(3);
  CHECK(det_exact(zero).is_zero());
  CHECK(det_modular(zero).is_zero());
  CHECK(plan_modular(zero).singular);
  PolyMatrix rank1(2);
  rank1.at(0, 0) = d;
  rank1.at(0, 1) = z;
  rank1.at(1, 0) = 2 * d;
  rank1.at(1, 1) = 2 * z;
  CHECK(det_modular(rank1).is_zero());
  CHECK(det_exact(PolyMatrix(0)) == Polynomial(1));
}

TEST_CASE("det: permutation invariance") {
  std::mt19937_64 rng(44);
  for (auto f : {Form::A, Form::B, Form::Mb1}) {
    auto g = build_gram(f, 2).entries;
    std::vector<std::size_t> perm(g.dim());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(det_exact(permute(g, perm)) == det_exact(g));
  }
}

TEST_CASE("det: evaluation homomorphism") {
  std::mt19937_64 rng(45);
  for (auto f : {Form::A, Form::Agen, Form::B, Form::Mb, Form::Mb1}) {
    auto g = build_gram(f, 2);
    check_eval_homomorphism(g.entries, det_exact(g), rng, 50);
  }
}

TEST_CASE("det: degree bounds") {
  for (auto f : {Form::A, Form::B, Form::Mb, Form::Mb1})
    for (int n = 1; n <= 2; ++n) {
      auto g = build_gram(f, n);
      Polynomial det = det_exact(g);
      for (Var v : kAllVars) {
        CHECK(det.degree(v) <= degree_bound(g.entries, v));
        CHECK(degree_bound(g.entries, v) <= n * static_cast<int>(g.dim()));
      }
      CHECK(det.total_degree() <= total_degree_bound(g.entries));
    }
  CHECK(degree_bound(PolyMatrix(2), Var::d) == kMinusInfinity);
}

TEST_CASE("det: modular plan finds gradings") {
  auto plan = plan_modular(build_gram(Form::Mb1, 3).entries);
  CHECK_FALSE(plan.singular);
  CHECK(plan.gradings.size() >= 1);
  CHECK(plan.primes >= 1);
  CHECK(plan.work > 0);
}

TEST_CASE("det: resource limit") {
  auto g = build_gram(Form::B, 4);
  DetOptions tiny;
  tiny.max_work = 10;
  CHECK_THROWS_AS(det_exact(g, tiny), ResourceLimit);
}

TEST_CASE("det_verify: randomized") {
  auto g = build_gram(Form::B, 4);
  VerifyMode mode;
  auto r = det_verify(g, build_formula(FormulaId::TypeB, 4), mode);
  CHECK(r.verdict == DetResult::Agree);
  CHECK(r.failure_bound_log2 < -60);
  CHECK(r.seed == 1);
  CHECK(r.trials == 20);
  CHECK(r.prime == (std::uint64_t{1} << 62) - 57);
  CHECK(r.field == "GF(p)");
}

TEST_CASE("det_verify: wrong candidate fails at the first point") {
  for (auto f : {Form::A, Form::B, Form::Mb1}) {
    auto g = build_gram(f, 2);
    Polynomial det = det_exact(g);
    for (auto kind : {VerifyMode::Randomized, VerifyMode::Deterministic}) {
      VerifyMode mode;
      mode.kind = kind;
      auto r = det_verify(g, det + 1, mode);
      CHECK(r.verdict == DetResult::Disagree);
      CHECK(r.points_checked == 1);
      CHECK_FALSE(r.failing_point.empty());
    }
  }
}

TEST_CASE("det_verify: deterministic grid") {
  auto g = build_gram(Form::B, 2);
  VerifyMode mode;
  mode.kind = VerifyMode::Deterministic;
  auto r = det_verify(g, build_formula(FormulaId::TypeB, 2), mode);
  CHECK(r.verdict == DetResult::Agree);
  CHECK(r.field == "Z");
  CHECK(r.points_checked > 0);
  auto big = build_gram(Form::Mb1, 3);
  mode.max_grid_points = 10;
  CHECK(det_verify(big, build_formula(FormulaId::Mb1Conjecture, 3), mode).verdict == DetResult::Inconclusive);
}

TEST_CASE("det_verify: Qi formula on the full Mobius matrix at n = 3") {
  auto g = build_gram(Form::Mb, 3);
  auto r = det_verify(g, build_formula(FormulaId::QiMb, 3), VerifyMode{});
  CHECK(r.verdict == DetResult::Agree);
  CHECK(r.failure_bound_log2 < -60);
}

TEST_CASE("verify_identity: factors on both sides") {
  auto b = build_gram(Form::B, 2).entries;
  Polynomial det = det_exact(b);
  PolyMatrix one(1);
  one.at(0, 0) = det;
  VerifyMode mode;
  CHECK(verify_identity(Polynomial(1), b, Polynomial(1), one, mode).verdict == DetResult::Agree);
  CHECK(verify_identity(d, b, d, one, mode).verdict == DetResult::Agree);
  CHECK(verify_identity(d, b, z, one, mode).verdict == DetResult::Disagree);
}

TEST_CASE("divides") {
  auto g = build_gram(Form::Mb, 2);
  CHECK(divides(build_formula(FormulaId::Prop1Divisor, 2), g));
  CHECK(divides(build_formula(FormulaId::Prop2Divisor, 2), g));
  CHECK(divides(build_formula(FormulaId::Prop3Divisor, 2), g));
  CHECK_FALSE(divides(pow(d - z, 5), g));
  CHECK_FALSE(divides(d + 3, g));
  CHECK_THROWS_AS(divides(Polynomial(), g), ZeroDivisor);
}

TEST_CASE("certificates at n = 2 agree with exact division") {
  auto g = build_gram(Form::Mb, 2);
  auto flip = certify_crosscap_flip(g);
  CHECK(flip.complete);
  CHECK(flip.factor == d - z);
  CHECK(flip.columns == binomial_ul(4, 1));
  CHECK(divides(pow(flip.factor, flip.columns), g));
  auto smooth = certify_crosscap_smoothing(g);
  CHECK(smooth.complete);
  CHECK(smooth.factor == w * (d + z) - 2 * x * y);
  CHECK(smooth.columns == binomial_ul(4, 1));
  CHECK(divides(pow(smooth.factor, smooth.columns), g));
}

TEST_CASE("certificates at n = 3") {
  auto g = build_gram(Form::Mb, 3);
  auto flip = certify_crosscap_flip(g);
  CHECK(flip.complete);
  CHECK(flip.columns == 15);
  auto smooth = certify_crosscap_smoothing(g);
  CHECK(smooth.complete);
  CHECK(smooth.columns == 15);
}

TEST_CASE("certificates reject a basis without the needed elements") {
  CHECK_THROWS_AS(certify_crosscap_smoothing(build_gram(Form::B, 2)), InvalidDiagram);
  auto mb1 = build_gram(Form::MbN1, 2);
  CHECK_THROWS_AS(certify_crosscap_smoothing(mb1), InvalidDiagram);
}
