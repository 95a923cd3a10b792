#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gramdet/diagrams.hpp"
#include "gramdet/poly.hpp"

namespace gramdet {

enum class Form { A, Agen, B, Mb, Mb1, MbN1 };

std::string_view form_name(Form f);
// Case-insensitive; accepts "a", "agen", "b", "mb", "mb1", "mbn1".
Form form_from_name(std::string_view name);
BasisKind basis_kind(Form f);

class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  Polynomial& at(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const Polynomial& at(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
  const std::vector<Polynomial>& data() const { return a_; }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) { return a.dim_ == b.dim_ && a.a_ == b.a_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Polynomial> a_;
};

struct Provenance {
  std::string form;  // form name, or "sum(...)" for direct sums
  int n = 0;
  Substitution substitution;

  std::string describe() const;
};

struct GramMatrix {
  std::vector<Diagram> basis;
  PolyMatrix entries;
  Provenance provenance;

  std::size_t dim() const { return entries.dim(); }
};

struct BuildOptions {
  EnumLimits limits;
  unsigned jobs = 0;  // 0: hardware concurrency
};

Polynomial pair(Form form, const Diagram& a, const Diagram& b);

GramMatrix build_gram(Form form, int n, const BuildOptions& options = {});
GramMatrix substitute(const GramMatrix& g, const Substitution& s);
GramMatrix direct_sum(const GramMatrix& a, const GramMatrix& b);

// y -> 0, w -> 1.
Substitution tilde_substitution();

// perm with a(perm[i], perm[j]) == b(i, j) for all i, j.
std::optional<std::vector<std::size_t>> match_up_to_permutation(const PolyMatrix& a, const PolyMatrix& b);

// Sorted canonical strings of all entries.
std::vector<std::string> entry_multiset(const PolyMatrix& m);

PolyMatrix swap_xy(const PolyMatrix& m);
PolyMatrix transpose(const PolyMatrix& m);
PolyMatrix substitute(const PolyMatrix& m, const Substitution& s);
PolyMatrix permute(const PolyMatrix& m, const std::vector<std::size_t>& perm);

std::string substitution_text(const Substitution& s);
// "y=0,w=1"
Substitution parse_substitution(std::string_view text);

unsigned resolve_jobs(unsigned jobs);

}  // namespace gramdet
