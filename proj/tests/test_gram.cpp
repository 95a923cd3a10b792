#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "doctest.h"
#include "gramdet/chebyshev.hpp"
#include "gramdet/determinant.hpp"
#include "gramdet/error.hpp"
#include "gramdet/gram.hpp"
#include "gramdet/io.hpp"
#include "support.hpp"

using namespace gramdet;

namespace {

const Polynomial d = Polynomial::var(Var::d), z = Polynomial::var(Var::z);

Fixture fixture(const char* name) { return load_fixture(testing::fixture_dir() / name); }

GramMatrix tilde(int n) { return substitute(build_gram(Form::MbN1, n), tilde_substitution()); }

}  // namespace

TEST_CASE("gram: entries are pairings") {
  for (auto f : {Form::A, Form::Agen, Form::B, Form::Mb, Form::Mb1, Form::MbN1}) {
    auto g = build_gram(f, 2);
    REQUIRE(g.dim() == g.basis.size());
    CHECK(g.provenance.form == form_name(f));
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) CHECK(g.entries.at(i, j) == pair(f, g.basis[i], g.basis[j]));
  }
}

TEST_CASE("gram: dimensions") {
  CHECK(build_gram(Form::A, 3).dim() == 5);
  CHECK(build_gram(Form::Agen, 3).dim() == 5);
  CHECK(build_gram(Form::B, 2).dim() == 6);
  CHECK(build_gram(Form::Mb, 2).dim() == 11);
  CHECK(build_gram(Form::Mb1, 2).dim() == 10);
  CHECK(build_gram(Form::MbN1, 3).dim() == 15);
  CHECK(build_gram(Form::A, 5).dim() == 42);
  CHECK_THROWS_AS(build_gram(Form::Mb, 9), ResourceLimit);
  CHECK_THROWS_AS(build_gram(Form::Mb, 0), UnsupportedN);
}

TEST_CASE("gram: form names") {
  CHECK(form_from_name("agen") == Form::Agen);
  CHECK(form_from_name("MBN1") == Form::MbN1);
  CHECK(form_from_name("mb1") == Form::Mb1);
  CHECK_THROWS_AS(form_from_name("tl"), Error);
}

TEST_CASE("gram: fixture entry multisets") {
  for (auto [file, form, n] : {std::tuple{"gram_A_3.json", Form::A, 3}, {"gram_Agen_3.json", Form::Agen, 3},
                               {"gram_B_2.json", Form::B, 2}, {"gram_Mb1_2.json", Form::Mb1, 2}}) {
    CAPTURE(file);
    auto fx = fixture(file);
    auto g = build_gram(form, n);
    CHECK(entry_multiset(g.entries) == entry_multiset(fx.rows));
    CHECK(det_exact(g) == det_bareiss(fx.rows));
  }
}

TEST_CASE("gram: fixture tables match up to simultaneous permutation") {
  for (auto [file, form, n] : {std::tuple{"gram_A_3.json", Form::A, 3}, {"gram_Agen_3.json", Form::Agen, 3},
                               {"gram_B_2.json", Form::B, 2}, {"gram_Mb1_2.json", Form::Mb1, 2}}) {
    CAPTURE(file);
    CHECK(match_up_to_permutation(build_gram(form, n).entries, fixture(file).rows).has_value());
  }
}

TEST_CASE("gram: tilde n = 3 under the labelled order") {
  auto fx = fixture("gram_tilde_3.json");
  auto g = tilde(3);
  REQUIRE(fx.basis.size() == g.dim());
  CHECK(fx.substitution == tilde_substitution());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.dim(); ++i) index[serialize(g.basis[i])] = i;
  std::vector<std::size_t> perm;
  for (const auto& s : fx.basis) {
    auto it = index.find(serialize(parse_diagram(s)));
    REQUIRE(it != index.end());
    perm.push_back(it->second);
  }
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) CHECK(g.entries.at(perm[i], perm[j]) == fx.rows.at(i, j));
  Polynomial T4 = cheb_first(4), T6 = cheb_first(6);
  CHECK(det_exact(g) == pow(T4 - 2, 6) * (T6 - 2));
}

TEST_CASE("gram: tilde n = 4 determinant matches the transcribed table") {
  auto fx = fixture("gram_tilde_4.json");
  auto g = tilde(4);
  REQUIRE(fx.rows.dim() == 56);
  Polynomial ours = det_exact(g), theirs = det_exact(fx.rows);
  CHECK(ours == theirs);
  CHECK(ours == build_formula(FormulaId::TildeConjecture, 4));
  CHECK(entry_multiset(g.entries) == entry_multiset(fx.rows));
}

TEST_CASE("gram: tilde n = 2") {
  CHECK(det_exact(tilde(2)) == build_formula(FormulaId::TildeConjecture, 2));
  CHECK(det_exact(tilde(2)) == cheb_first(4) - 2);
}

TEST_CASE("gram: substitute") {
  auto g = build_gram(Form::Mb1, 2);
  auto same = substitute(g, Substitution{});
  CHECK(same.entries == g.entries);
  auto t = substitute(g, tilde_substitution());
  CHECK(t.provenance.substitution == tilde_substitution());
  for (const auto& e : t.entries.data()) {
    CHECK(e.degree(Var::y) <= 0);
    CHECK(e.degree(Var::w) <= 0);
  }
  CHECK(parse_substitution("y=0,w=1") == tilde_substitution());
  CHECK(substitution_text(tilde_substitution()) == "y=0,w=1");
  CHECK_THROWS_AS(parse_substitution("q=1"), Error);
}

TEST_CASE("gram: direct sum") {
  auto b = build_gram(Form::B, 2), t = tilde(2);
  auto s = direct_sum(b, t);
  REQUIRE(s.dim() == b.dim() + t.dim());
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) {
      CHECK(s.entries.at(i, b.dim() + j).is_zero());
      CHECK(s.entries.at(b.dim() + j, i).is_zero());
    }
  CHECK(det_exact(s) == det_exact(b) * det_exact(t));
  // Substituted (Mb)_1 is block lower triangular with the same diagonal blocks.
  auto mb1 = substitute(build_gram(Form::Mb1, 2), tilde_substitution());
  REQUIRE(mb1.dim() == s.dim());
  CHECK(det_exact(mb1) == det_exact(s));
  GramMatrix empty;
  CHECK(direct_sum(b, empty).entries == b.entries);
  CHECK(direct_sum(empty, b).entries == b.entries);
  CHECK(det_exact(empty.entries) == Polynomial(1));
}

TEST_CASE("gram: direct sum determinant on random inputs") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    GramMatrix a, b;
    a.entries = PolyMatrix(rng() % 4);
    b.entries = PolyMatrix(rng() % 4);
    for (auto* m : {&a.entries, &b.entries})
      for (std::size_t i = 0; i < m->dim(); ++i)
        for (std::size_t j = 0; j < m->dim(); ++j) m->at(i, j) = testing::random_monomial(rng);
    CHECK(det_exact(direct_sum(a, b)) == det_exact(a) * det_exact(b));
  }
}

TEST_CASE("gram: Mobius matrices swap x and y under transpose") {
  for (auto f : {Form::Mb, Form::Mb1, Form::MbN1})
    for (int n = 1; n <= 3; ++n) {
      auto g = build_gram(f, n);
      CHECK(swap_xy(g.entries) == transpose(g.entries));
    }
  for (int n = 1; n <= 2; ++n) {
    Polynomial det = det_exact(build_gram(Form::Mb, n));
    CHECK(swap_xy(det) == det);
  }
}

TEST_CASE("gram: symmetric forms") {
  for (auto f : {Form::A, Form::Agen, Form::B})
    for (int n = 1; n <= 4; ++n) {
      auto g = build_gram(f, n);
      CHECK(transpose(g.entries) == g.entries);
    }
}

TEST_CASE("gram: parallel build is deterministic") {
  auto a = build_gram(Form::Mb, 3, BuildOptions{{}, 1});
  auto b = build_gram(Form::Mb, 3, BuildOptions{{}, 4});
  CHECK(a.entries == b.entries);
}

TEST_CASE("gram: match up to permutation") {
  std::mt19937_64 rng(8);
  auto g = build_gram(Form::Mb1, 2).entries;
  std::vector<std::size_t> perm(g.dim());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  auto p = permute(g, perm);
  auto found = match_up_to_permutation(p, g);
  REQUIRE(found.has_value());
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) CHECK(p.at((*found)[i], (*found)[j]) == g.at(i, j));
  auto q = g;
  q.at(0, 1) = q.at(0, 1) + 1;
  CHECK_FALSE(match_up_to_permutation(q, g).has_value());
}
