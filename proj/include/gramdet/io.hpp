#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gramdet/determinant.hpp"
#include "gramdet/diagrams.hpp"
#include "gramdet/gram.hpp"
#include "gramdet/verify.hpp"

namespace gramdet {

std::string_view basis_kind_name(BasisKind k);  // "disk", "annulus", "mobius", ...
BasisKind basis_kind_from_name(std::string_view name);

// One serialized diagram per line.
std::string basis_text(const BasisSet& b);
std::string basis_json(const BasisSet& b);

// {"form","n",["substitution"],"basis","entries"}
std::string matrix_json(const GramMatrix& g);
GramMatrix matrix_from_json(const std::string& text);
std::string matrix_csv(const GramMatrix& g);
std::string matrix_latex(const GramMatrix& g);
// Polynomial in LaTeX math syntax, e.g. "d^{2}z - 1".
std::string poly_latex(const Polynomial& p);

std::string report_json(const ClaimReport& r);
std::string det_result_json(const DetResult& r, const Provenance& p, std::string_view method);

// Transcribed table: {"form","n","dim",["substitution"],["labels"],["basis"],"rows"}.
struct Fixture {
  std::string form;
  int n = 0;
  Substitution substitution;
  std::vector<std::string> labels;
  std::vector<std::string> basis;
  PolyMatrix rows;
};

Fixture load_fixture(const std::filesystem::path& path);

// One JSON file per (kind, form, n, substitution); entries carry a version
// number and are ignored when it does not match.
class Cache {
 public:
  static constexpr int kVersion = 1;

  // Empty dir disables the cache.
  explicit Cache(std::filesystem::path dir = {}) : dir_(std::move(dir)) {}
  // Explicit directory if nonempty, else $GRAMDET_CACHE_DIR, else disabled.
  static Cache resolve(const std::string& explicit_dir);

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }

  std::optional<GramMatrix> load_matrix(Form form, int n, const Substitution& s) const;
  void store_matrix(const GramMatrix& g, Form form) const;
  std::optional<Polynomial> load_det(Form form, int n, const Substitution& s) const;
  void store_det(Form form, int n, const Substitution& s, const Polynomial& det) const;

  std::filesystem::path path_for(std::string_view kind, Form form, int n, const Substitution& s) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace gramdet
