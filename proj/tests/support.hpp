#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gramdet/gram.hpp"
#include "gramdet/poly.hpp"

namespace testing {

inline std::filesystem::path fixture_dir() { return GRAMDET_FIXTURE_DIR; }

inline gramdet::Polynomial random_poly(std::mt19937_64& rng, int max_terms = 5, int max_exp = 3, int max_coef = 20) {
  std::uniform_int_distribution<int> terms(0, max_terms), ex(0, max_exp), co(-max_coef, max_coef);
  std::vector<gramdet::Term> t;
  int count = terms(rng);
  for (int i = 0; i < count; ++i) {
    std::array<unsigned, gramdet::kNumVars> e{};
    for (auto& v : e) v = static_cast<unsigned>(ex(rng));
    t.push_back({gramdet::Monomial(e), co(rng)});
  }
  return gramdet::Polynomial::from_terms(std::move(t));
}

inline gramdet::Polynomial random_monomial(std::mt19937_64& rng, int max_exp = 2) {
  std::uniform_int_distribution<int> ex(0, max_exp), co(-3, 3);
  std::array<unsigned, gramdet::kNumVars> e{};
  for (auto& v : e) v = static_cast<unsigned>(ex(rng));
  int c = co(rng);
  return gramdet::Polynomial(gramdet::Monomial(e), c);
}

// Laplace expansion along the first row.
inline gramdet::Polynomial cofactor_det(const gramdet::PolyMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return gramdet::Polynomial(1);
  if (n == 1) return m.at(0, 0);
  gramdet::Polynomial sum;
  for (std::size_t c = 0; c < n; ++c) {
    if (m.at(0, c).is_zero()) continue;
    gramdet::PolyMatrix minor(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor.at(i - 1, jj++) = m.at(i, j);
    gramdet::Polynomial term = m.at(0, c) * cofactor_det(minor);
    if (c % 2) sum -= term;
    else sum += term;
  }
  return sum;
}

inline gramdet::Point random_point(std::mt19937_64& rng, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> v(lo, hi);
  gramdet::Point p;
  for (auto& x : p) x = v(rng);
  return p;
}

}  // namespace testing
