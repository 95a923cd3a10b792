#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gramdet/gram.hpp"
#include "gramdet/poly.hpp"

namespace gramdet {

enum class DetEngine { Auto, Bareiss, Modular };

struct DetOptions {
  DetEngine engine = DetEngine::Auto;
  // Budget for the modular engine in field multiplications.
  double max_work = 6e11;
  unsigned jobs = 0;
};

// Fraction-free elimination; throws InternalInexactDivision if an
// intermediate quotient is not exact.
Polynomial det_bareiss(const PolyMatrix& m);

// A variable whose exponent is fixed by the others: for every term of the
// determinant, the sum of exponents over `members` equals `total`.
struct Grading {
  Var eliminated;
  std::array<bool, kNumVars> members{};
  long total = 0;
};

struct ModularPlan {
  bool singular = false;  // no permutation avoids a zero entry
  std::array<bool, kNumVars> present{};
  std::vector<Grading> gradings;
  std::vector<Var> grid_vars;
  std::array<int, kNumVars> degree_bound{};
  double coefficient_bits = 0;
  std::size_t primes = 0;
  double grid_points = 1;
  double work = 0;
};

ModularPlan plan_modular(const PolyMatrix& m);

// Exact determinant from residues at grid points modulo several primes,
// Newton interpolation per variable, and Chinese remaindering.
Polynomial det_modular(const PolyMatrix& m, const DetOptions& options = {});

// Dispatches by size; throws ResourceLimit when the chosen engine would
// exceed options.max_work.
Polynomial det_exact(const PolyMatrix& m, const DetOptions& options = {});
Polynomial det_exact(const GramMatrix& g, const DetOptions& options = {});

// Upper bound on deg_v(det m) from a maximum-weight assignment; kMinusInfinity
// when m is singular by support.
int degree_bound(const PolyMatrix& m, Var v);
int total_degree_bound(const PolyMatrix& m);

mpz_class det_integer(std::vector<mpz_class> a, std::size_t dim);
std::vector<mpz_class> eval_matrix(const PolyMatrix& m, const Point& point);

struct VerifyMode {
  enum Kind { Deterministic, Randomized } kind = Randomized;
  std::uint64_t seed = 1;
  int trials = 20;
  std::uint64_t prime = 0;  // 0: default 62-bit prime
  double max_grid_points = 2e5;
};

struct DetResult {
  enum Verdict { Agree, Disagree, Inconclusive } verdict = Inconclusive;
  bool exact = false;
  Polynomial value;  // exact mode only
  std::string field;  // "Z" or "GF(p)"
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  std::size_t points_checked = 0;
  int degree_bound = 0;
  double failure_bound_log2 = 0;  // randomized mode
  std::vector<std::string> failing_point;
  std::string note;
};

// lf * det(lm) == rf * det(rm)
DetResult verify_identity(const Polynomial& lf, const PolyMatrix& lm, const Polynomial& rf, const PolyMatrix& rm,
                          const VerifyMode& mode);
DetResult det_verify(const PolyMatrix& m, const Polynomial& candidate, const VerifyMode& mode);
DetResult det_verify(const GramMatrix& g, const Polynomial& candidate, const VerifyMode& mode);

// True iff candidate divides det_exact(g). Throws ZeroDivisor for a zero
// candidate and ResourceLimit when the determinant is out of reach.
bool divides(const Polynomial& candidate, const GramMatrix& g, const DetOptions& options = {});

// Column-operation certificates for determinants of Mobius Gram matrices
// whose basis contains Mb_{n,0} (and Mb_{n,1} for the second).
struct ColumnCertificate {
  bool complete = false;
  Polynomial factor;
  std::size_t columns = 0;  // columns shown divisible by factor
  std::string detail;
};

// col(b) - col(parent(b)) over the dual tree of hole positions, for every
// k = 0 element with the hole inside an arc; factor d - z.
ColumnCertificate certify_crosscap_flip(const GramMatrix& g);
// (d+z) col(m) - y (col(m_in) + col(m_out)) for every k = 1 element, where
// m_in and m_out replace the crosscap arc by a flat arc on either side of
// the crosscap; factor w(d+z) - 2xy.
ColumnCertificate certify_crosscap_smoothing(const GramMatrix& g);

}  // namespace gramdet
