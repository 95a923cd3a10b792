#include "gramdet/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "gramdet/error.hpp"
#include "gramdet/modular.hpp"

namespace gramdet {

namespace {

// Hungarian method on a square cost matrix (minimization).
long long min_cost_assignment(const std::vector<long long>& cost, std::size_t n, std::vector<int>* match = nullptr) {
  constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<long long> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = p[j0], j1 = 0;
      long long delta = kInf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        long long cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  if (match) {
    match->assign(n, -1);
    for (std::size_t j = 1; j <= n; ++j) (*match)[p[j] - 1] = static_cast<int>(j - 1);
  }
  long long total = 0;
  for (std::size_t j = 1; j <= n; ++j) total += cost[(p[j] - 1) * n + (j - 1)];
  return total;
}

// Maximum over support permutations of sum of weight(i, sigma(i)).
int max_weight(const PolyMatrix& m, const std::function<int(const Polynomial&)>& weight) {
  const std::size_t n = m.dim();
  if (n == 0) return 0;
  constexpr long long kForbidden = 1'000'000'000LL;
  std::vector<long long> cost(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    const Polynomial& p = m.data()[i];
    cost[i] = p.is_zero() ? kForbidden : -static_cast<long long>(weight(p));
  }
  std::vector<int> match;
  min_cost_assignment(cost, n, &match);
  long long total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    long long c = cost[i * n + match[i]];
    if (c == kForbidden) return kMinusInfinity;
    total -= c;
  }
  return static_cast<int>(total);
}

}  // namespace

int degree_bound(const PolyMatrix& m, Var v) {
  return max_weight(m, [v](const Polynomial& p) { return p.degree(v); });
}

int total_degree_bound(const PolyMatrix& m) {
  return max_weight(m, [](const Polynomial& p) { return p.total_degree(); });
}

Polynomial det_bareiss(const PolyMatrix& input) {
  const std::size_t n = input.dim();
  if (n == 0) return Polynomial(1);
  std::vector<Polynomial> a = input.data();
  auto at = [&](std::size_t i, std::size_t j) -> Polynomial& { return a[i * n + j]; };
  Polynomial prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && at(r, k).is_zero()) ++r;
      if (r == n) return Polynomial();
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        auto q = div_exact(num, prev);
        if (!q) throw InternalInexactDivision("Bareiss step " + std::to_string(k) + " left a remainder");
        at(i, j) = std::move(*q);
      }
      at(i, k) = Polynomial();
    }
    prev = at(k, k);
  }
  Polynomial d = at(n - 1, n - 1);
  return negate ? -d : d;
}

Polynomial det_exact(const PolyMatrix& m, const DetOptions& options) {
  if (m.dim() == 0) return Polynomial(1);
  DetEngine engine = options.engine;
  if (engine == DetEngine::Auto) engine = m.dim() <= 8 ? DetEngine::Bareiss : DetEngine::Modular;
  if (engine == DetEngine::Bareiss) return det_bareiss(m);
  return det_modular(m, options);
}

Polynomial det_exact(const GramMatrix& g, const DetOptions& options) { return det_exact(g.entries, options); }

std::vector<mpz_class> eval_matrix(const PolyMatrix& m, const Point& point) {
  std::vector<mpz_class> out;
  out.reserve(m.data().size());
  for (const auto& p : m.data()) out.push_back(eval(p, point));
  return out;
}

mpz_class det_integer(std::vector<mpz_class> a, std::size_t n) {
  if (n == 0) return 1;
  mpz_class prev = 1, t;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k * n + k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(a[r * n + k]) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a[i * n + j] * a[k * n + k];
        mpz_submul(t.get_mpz_t(), a[i * n + k].get_mpz_t(), a[k * n + j].get_mpz_t());
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k * n + k];
  }
  mpz_class d = a[n * n - 1];
  return negate ? mpz_class(-d) : d;
}

namespace {

std::uint64_t eval_mod(const Polynomial& p, const std::array<std::uint64_t, kNumVars>& pt, const PrimeField& f) {
  std::uint64_t sum = 0;
  mpz_class pm(static_cast<unsigned long>(f.modulus())), r;
  for (const auto& t : p.terms()) {
    mpz_mod(r.get_mpz_t(), t.coef.get_mpz_t(), pm.get_mpz_t());
    std::uint64_t term = f.to_mont(r.get_ui());
    for (Var v : kAllVars) {
      unsigned e = t.mono.exponent(v);
      if (e) term = f.mul(term, f.pow(pt[static_cast<int>(v)], e));
    }
    sum = f.add(sum, term);
  }
  return sum;
}

std::uint64_t det_at(const PolyMatrix& m, const std::array<std::uint64_t, kNumVars>& pt, const PrimeField& f) {
  std::vector<std::uint64_t> a;
  a.reserve(m.data().size());
  for (const auto& p : m.data()) a.push_back(eval_mod(p, pt, f));
  return det_mod_p(a, m.dim(), f);
}

std::string point_text(const std::array<std::uint64_t, kNumVars>& pt, const PrimeField& f) {
  std::string s;
  for (Var v : kAllVars) {
    if (!s.empty()) s += ",";
    s += std::string(1, var_name(v)) + "=" + std::to_string(f.from_mont(pt[static_cast<int>(v)]));
  }
  return s;
}

int side_bound(const Polynomial& f, const PolyMatrix& m, const std::function<int(const PolyMatrix&)>& det_bound,
               int factor_degree) {
  if (f.is_zero()) return 0;
  int b = m.dim() == 0 ? 0 : det_bound(m);
  if (b == kMinusInfinity) return 0;
  return b + factor_degree;
}

}  // namespace

DetResult verify_identity(const Polynomial& lf, const PolyMatrix& lm, const Polynomial& rf, const PolyMatrix& rm,
                          const VerifyMode& mode) {
  DetResult r;
  if (mode.kind == VerifyMode::Randomized) {
    if (mode.trials < 1) throw Error("randomized verification needs at least one trial");
    const PrimeField f(mode.prime ? mode.prime : kDefaultPrime);
    r.field = "GF(p)";
    r.prime = f.modulus();
    r.seed = mode.seed;
    r.trials = mode.trials;
    auto total = [](const PolyMatrix& m) { return total_degree_bound(m); };
    r.degree_bound = std::max(side_bound(lf, lm, total, lf.total_degree()), side_bound(rf, rm, total, rf.total_degree()));
    std::mt19937_64 rng(mode.seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, f.modulus() - 1);
    for (int t = 0; t < mode.trials; ++t) {
      std::array<std::uint64_t, kNumVars> pt{};
      for (auto& v : pt) v = f.to_mont(dist(rng));
      ++r.points_checked;
      std::uint64_t left = f.mul(eval_mod(lf, pt, f), det_at(lm, pt, f));
      std::uint64_t right = f.mul(eval_mod(rf, pt, f), det_at(rm, pt, f));
      if (left != right) {
        r.verdict = DetResult::Disagree;
        r.failing_point = {point_text(pt, f)};
        r.note = "sides differ modulo p at trial " + std::to_string(t);
        return r;
      }
    }
    // A nonzero difference of total degree D vanishes at a uniform random
    // point with probability at most D/p; trials are independent.
    r.failure_bound_log2 = r.degree_bound == 0
                               ? -std::numeric_limits<double>::infinity()
                               : mode.trials * (std::log2(static_cast<double>(r.degree_bound)) -
                                                std::log2(static_cast<double>(f.modulus())));
    r.verdict = DetResult::Agree;
    return r;
  }

  r.field = "Z";
  std::array<int, kNumVars> bound{};
  double points = 1;
  for (Var v : kAllVars) {
    auto per_var = [v](const PolyMatrix& m) { return degree_bound(m, v); };
    int b = std::max(side_bound(lf, lm, per_var, lf.degree(v)), side_bound(rf, rm, per_var, rf.degree(v)));
    bound[static_cast<int>(v)] = b;
    points *= b + 1;
  }
  r.degree_bound = *std::max_element(bound.begin(), bound.end());
  if (points > mode.max_grid_points) {
    r.verdict = DetResult::Inconclusive;
    r.note = "grid of " + std::to_string(static_cast<long long>(points)) + " points exceeds the limit";
    return r;
  }
  std::array<int, kNumVars> c{};
  for (;;) {
    Point pt;
    for (int i = 0; i < kNumVars; ++i) pt[i] = c[i];
    ++r.points_checked;
    mpz_class left = eval(lf, pt), right = eval(rf, pt);
    if (sgn(left) != 0) left *= det_integer(eval_matrix(lm, pt), lm.dim());
    if (sgn(right) != 0) right *= det_integer(eval_matrix(rm, pt), rm.dim());
    if (left != right) {
      r.verdict = DetResult::Disagree;
      std::string s;
      for (Var v : kAllVars)
        s += (s.empty() ? "" : ",") + std::string(1, var_name(v)) + "=" + std::to_string(c[static_cast<int>(v)]);
      r.failing_point = {s};
      return r;
    }
    int i = 0;
    while (i < kNumVars && ++c[i] > bound[i]) c[i++] = 0;
    if (i == kNumVars) break;
  }
  r.verdict = DetResult::Agree;
  r.note = "agreement on a full grid exceeding every per-variable degree bound";
  return r;
}

DetResult det_verify(const PolyMatrix& m, const Polynomial& candidate, const VerifyMode& mode) {
  return verify_identity(Polynomial(1), m, candidate, PolyMatrix(0), mode);
}

DetResult det_verify(const GramMatrix& g, const Polynomial& candidate, const VerifyMode& mode) {
  return det_verify(g.entries, candidate, mode);
}

bool divides(const Polynomial& candidate, const GramMatrix& g, const DetOptions& options) {
  if (candidate.is_zero()) throw ZeroDivisor();
  return div_exact(det_exact(g, options), candidate).has_value();
}

namespace {

std::map<std::string, std::size_t> index_basis(const GramMatrix& g) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < g.basis.size(); ++i) idx[serialize(g.basis[i])] = i;
  return idx;
}

const MobiusDiagram& mobius_at(const GramMatrix& g, std::size_t i) {
  const auto* m = std::get_if<MobiusDiagram>(&g.basis[i]);
  if (!m) throw InvalidDiagram("certificate needs a Mobius basis");
  return *m;
}

ColumnCertificate finish(const GramMatrix& g, const Polynomial& factor,
                         const std::vector<std::pair<std::size_t, std::vector<std::pair<Polynomial, std::size_t>>>>& ops,
                         const std::string& label) {
  ColumnCertificate c;
  c.factor = factor;
  for (const auto& [col, combo] : ops) {
    for (std::size_t i = 0; i < g.dim(); ++i) {
      Polynomial e;
      for (const auto& [coef, src] : combo) e += coef * g.entries.at(i, src);
      if (!div_exact(e, factor)) {
        c.detail = label + ": column " + serialize(g.basis[col]) + " row " + serialize(g.basis[i]) +
                   " is not divisible by " + factor.to_string();
        return c;
      }
    }
    ++c.columns;
  }
  c.complete = true;
  c.detail = label + ": " + std::to_string(c.columns) + " columns divisible by " + factor.to_string();
  return c;
}

}  // namespace

ColumnCertificate certify_crosscap_flip(const GramMatrix& g) {
  auto idx = index_basis(g);
  std::vector<std::pair<std::size_t, std::vector<std::pair<Polynomial, std::size_t>>>> ops;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const MobiusDiagram& m = mobius_at(g, i);
    if (m.k() != 0) continue;
    // The innermost seam arc bounds the hole; clearing its bit moves the
    // hole across that arc.
    int inner = -1;
    for (std::size_t a = 0; a < m.flat.size(); ++a)
      if (m.seam[a] && (inner < 0 || m.flat[a].second - m.flat[a].first <
                                         m.flat[inner].second - m.flat[inner].first))
        inner = static_cast<int>(a);
    if (inner < 0) continue;
    MobiusDiagram parent = m;
    parent.seam[inner] = 0;
    auto it = idx.find(serialize(parent));
    if (it == idx.end()) throw InvalidDiagram("hole neighbour missing from basis");
    ops.push_back({i, {{Polynomial(1), i}, {Polynomial(-1), it->second}}});
  }
  // Each new column is old(b) - old(parent); applying deepest holes first
  // realizes this with a unimodular transformation.
  return finish(g, Polynomial::var(Var::d) - Polynomial::var(Var::z), ops, "hole moves");
}

ColumnCertificate certify_crosscap_smoothing(const GramMatrix& g) {
  auto idx = index_basis(g);
  const Polynomial d = Polynomial::var(Var::d), z = Polynomial::var(Var::z), y = Polynomial::var(Var::y);
  std::vector<std::pair<std::size_t, std::vector<std::pair<Polynomial, std::size_t>>>> ops;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const MobiusDiagram& m = mobius_at(g, i);
    if (m.k() != 1) continue;
    Arc alpha{m.crosscap[0], m.crosscap[1]};
    MobiusDiagram in{m.n, {}, m.flat, {}};
    in.flat.push_back(alpha);
    std::sort(in.flat.begin(), in.flat.end());
    for (const auto& e : in.flat) in.seam.push_back(e.first <= alpha.first && alpha.second <= e.second ? 1 : 0);
    MobiusDiagram out = in;
    for (std::size_t a = 0; a < out.flat.size(); ++a)
      if (out.flat[a] == alpha) out.seam[a] = 0;
    auto a = idx.find(serialize(in)), b = idx.find(serialize(out));
    if (a == idx.end() || b == idx.end()) throw InvalidDiagram("smoothing of a crosscap arc missing from basis");
    ops.push_back({i, {{d + z, i}, {-y, a->second}, {-y, b->second}}});
  }
  // The transformation has determinant (d+z)^columns; w(d+z) - 2xy is
  // irreducible (degree one in w, coprime coefficients) and does not divide
  // d+z, so its power divides the original determinant.
  return finish(g, Polynomial::var(Var::w) * (d + z) - 2 * Polynomial::var(Var::x) * y, ops, "crosscap smoothings");
}

}  // namespace gramdet
