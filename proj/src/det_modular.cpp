#include <algorithm>
#include <cmath>
#include <random>

#include "gramdet/determinant.hpp"
#include "gramdet/error.hpp"
#include "gramdet/modular.hpp"
#include "parallel.hpp"

namespace gramdet {

namespace {

constexpr Var kEliminationOrder[] = {Var::y, Var::x, Var::w, Var::z, Var::d};

int vi(Var v) { return static_cast<int>(v); }

// Checks that every entry is homogeneous in `members` with degree r_i + c_j;
// returns sum r_i + sum c_j, the common degree of all determinant terms.
std::optional<long> grading_total(const PolyMatrix& m, const std::array<bool, kNumVars>& members) {
  const std::size_t n = m.dim();
  std::vector<long> deg(n * n, -1);
  for (std::size_t k = 0; k < n * n; ++k) {
    const Polynomial& p = m.data()[k];
    if (p.is_zero()) continue;
    long common = -1;
    for (const auto& t : p.terms()) {
      long s = 0;
      for (Var v : kAllVars)
        if (members[vi(v)]) s += t.mono.exponent(v);
      if (common >= 0 && s != common) return std::nullopt;
      common = s;
    }
    deg[k] = common;
  }
  // Potentials over the bipartite support graph; rows 0..n-1, columns n..2n-1.
  std::vector<long> pot(2 * n, 0);
  std::vector<char> seen(2 * n, 0);
  long total = 0;
  for (std::size_t root = 0; root < 2 * n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      total += pot[u];
      for (std::size_t o = 0; o < n; ++o) {
        std::size_t k = u < n ? u * n + o : o * n + (u - n);
        if (deg[k] < 0) continue;
        std::size_t w = u < n ? n + o : o;
        long want = deg[k] - pot[u];
        if (!seen[w]) {
          seen[w] = 1;
          pot[w] = want;
          stack.push_back(w);
        } else if (pot[w] != want) {
          return std::nullopt;
        }
      }
    }
  }
  if (total < 0) return std::nullopt;
  return total;
}

struct CompiledTerm {
  mpz_class coef;
  std::array<unsigned, kNumVars> e{};  // exponents indexed by grid axis
};

}  // namespace

ModularPlan plan_modular(const PolyMatrix& m) {
  ModularPlan plan;
  const std::size_t n = m.dim();
  for (const auto& p : m.data())
    for (Var v : kAllVars)
      if (p.degree(v) > 0) plan.present[vi(v)] = true;
  if (n == 0) return plan;
  if (degree_bound(m, Var::d) == kMinusInfinity) {
    plan.singular = true;
    return plan;
  }

  std::array<bool, kNumVars> available = plan.present;
  for (Var v : kEliminationOrder) {
    if (!available[vi(v)]) continue;
    std::vector<int> others;
    for (Var u : kAllVars)
      if (u != v && available[vi(u)]) others.push_back(vi(u));
    std::vector<unsigned> masks(1u << others.size());
    for (unsigned s = 0; s < masks.size(); ++s) masks[s] = s;
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    for (unsigned s : masks) {
      std::array<bool, kNumVars> members{};
      members[vi(v)] = true;
      for (std::size_t b = 0; b < others.size(); ++b)
        if (s >> b & 1) members[others[b]] = true;
      if (auto total = grading_total(m, members)) {
        plan.gradings.push_back({v, members, *total});
        available[vi(v)] = false;
        break;
      }
    }
  }

  double row_bits = 0, col_bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class rs = 0, cs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& t : m.at(i, j).terms()) rs += abs(t.coef);
      for (const auto& t : m.at(j, i).terms()) cs += abs(t.coef);
    }
    row_bits += static_cast<double>(mpz_sizeinbase(rs.get_mpz_t(), 2));
    col_bits += static_cast<double>(mpz_sizeinbase(cs.get_mpz_t(), 2));
  }
  plan.coefficient_bits = std::min(row_bits, col_bits);
  plan.primes = static_cast<std::size_t>(std::ceil((plan.coefficient_bits + 2) / 61.0));

  std::size_t entry_terms = 0;
  for (const auto& p : m.data()) entry_terms += p.size();
  for (Var v : kAllVars) {
    if (!available[vi(v)]) continue;
    plan.grid_vars.push_back(v);
    plan.degree_bound[vi(v)] = degree_bound(m, v);
    plan.grid_points *= plan.degree_bound[vi(v)] + 1;
  }
  const double dn = static_cast<double>(n);
  plan.work = static_cast<double>(plan.primes) * plan.grid_points * (dn * dn * dn / 3 + 2.0 * entry_terms);
  return plan;
}

Polynomial det_modular(const PolyMatrix& input, const DetOptions& options) {
  const std::size_t n = input.dim();
  if (n == 0) return Polynomial(1);
  const ModularPlan plan = plan_modular(input);
  if (plan.singular) return Polynomial();
  if (plan.work > options.max_work)
    throw ResourceLimit("modular determinant needs about " + std::to_string(static_cast<long long>(plan.work)) +
                        " field operations (limit " + std::to_string(static_cast<long long>(options.max_work)) + ")");

  Substitution ones;
  for (const auto& g : plan.gradings) ones[g.eliminated] = Polynomial(1);
  const PolyMatrix m = ones.empty() ? input : substitute(input, ones);

  const std::size_t axes = plan.grid_vars.size();
  std::vector<std::size_t> len(axes), stride(axes);
  std::size_t points = 1;
  for (std::size_t a = axes; a-- > 0;) {
    len[a] = static_cast<std::size_t>(plan.degree_bound[vi(plan.grid_vars[a])]) + 1;
    stride[a] = points;
    points *= len[a];
  }

  std::vector<std::vector<CompiledTerm>> entries(n * n);
  std::vector<unsigned> max_exp(axes, 0);
  for (std::size_t k = 0; k < n * n; ++k) {
    for (const auto& t : m.data()[k].terms()) {
      CompiledTerm c{t.coef, {}};
      for (std::size_t a = 0; a < axes; ++a) {
        c.e[a] = t.mono.exponent(plan.grid_vars[a]);
        max_exp[a] = std::max(max_exp[a], c.e[a]);
      }
      entries[k].push_back(std::move(c));
    }
  }

  const auto& primes = large_primes(plan.primes + 1);
  const unsigned jobs = resolve_jobs(options.jobs);
  std::vector<std::vector<std::uint64_t>> residues(plan.primes);

  for (std::size_t pi = 0; pi < plan.primes; ++pi) {
    const PrimeField f(primes[pi]);
    const mpz_class pm(static_cast<unsigned long>(f.modulus()));
    std::vector<std::vector<std::uint64_t>> coef(n * n);
    mpz_class r;
    for (std::size_t k = 0; k < n * n; ++k)
      for (const auto& t : entries[k]) {
        mpz_mod(r.get_mpz_t(), t.coef.get_mpz_t(), pm.get_mpz_t());
        coef[k].push_back(f.to_mont(r.get_ui()));
      }
    // powers[a][c * (max_exp[a] + 1) + e] = c^e
    std::vector<std::vector<std::uint64_t>> powers(axes);
    for (std::size_t a = 0; a < axes; ++a) {
      const std::size_t w = max_exp[a] + 1;
      powers[a].resize(len[a] * w);
      for (std::size_t c = 0; c < len[a]; ++c) {
        std::uint64_t x = f.to_mont(c), acc = f.one();
        for (std::size_t e = 0; e < w; ++e) {
          powers[a][c * w + e] = acc;
          acc = f.mul(acc, x);
        }
      }
    }

    std::vector<std::uint64_t>& vals = residues[pi];
    vals.assign(points, 0);
    detail::parallel_for(points, jobs, [&](std::size_t g) {
      std::array<std::size_t, kNumVars> c{};
      for (std::size_t a = 0; a < axes; ++a) c[a] = g / stride[a] % len[a];
      std::vector<std::uint64_t> a(n * n);
      for (std::size_t k = 0; k < n * n; ++k) {
        std::uint64_t s = 0;
        for (std::size_t t = 0; t < entries[k].size(); ++t) {
          std::uint64_t term = coef[k][t];
          for (std::size_t ax = 0; ax < axes; ++ax)
            if (entries[k][t].e[ax]) term = f.mul(term, powers[ax][c[ax] * (max_exp[ax] + 1) + entries[k][t].e[ax]]);
          s = f.add(s, term);
        }
        a[k] = s;
      }
      vals[g] = det_mod_p(a, n, f);
    });

    // Newton interpolation at 0..L-1 along each axis, then expansion into
    // the monomial basis.
    for (std::size_t a = 0; a < axes; ++a) {
      const std::size_t L = len[a];
      std::vector<std::uint64_t> inv(L), pt(L);
      for (std::size_t j = 0; j < L; ++j) {
        pt[j] = f.to_mont(j);
        inv[j] = j ? f.inv(pt[j]) : 0;
      }
      std::vector<std::uint64_t> v(L), out(L + 1);
      for (std::size_t base = 0; base < points; ++base) {
        if (base / stride[a] % L != 0) continue;
        for (std::size_t i = 0; i < L; ++i) v[i] = vals[base + i * stride[a]];
        for (std::size_t j = 1; j < L; ++j)
          for (std::size_t i = L - 1; i >= j; --i) v[i] = f.mul(f.sub(v[i], v[i - 1]), inv[j]);
        std::fill(out.begin(), out.end(), 0);
        out[0] = v[L - 1];
        for (std::size_t k = L - 1; k-- > 0;) {
          for (std::size_t t = L - 1 - k; t >= 1; --t) out[t] = f.sub(out[t - 1], f.mul(pt[k], out[t]));
          out[0] = f.add(f.neg(f.mul(pt[k], out[0])), v[k]);
        }
        for (std::size_t i = 0; i < L; ++i) vals[base + i * stride[a]] = out[i];
      }
    }
    for (auto& x : vals) x = f.from_mont(x);
  }

  // Chinese remaindering into symmetric residues.
  std::vector<Term> terms;
  mpz_class modulus = 1;
  std::vector<mpz_class> inv_prefix(plan.primes);
  for (std::size_t pi = 0; pi < plan.primes; ++pi) {
    mpz_class p(static_cast<unsigned long>(primes[pi]));
    mpz_class mm = modulus % p;
    mpz_invert(inv_prefix[pi].get_mpz_t(), mm.get_mpz_t(), p.get_mpz_t());
    modulus *= p;
  }
  const mpz_class half = modulus / 2;
  for (std::size_t g = 0; g < points; ++g) {
    bool zero = true;
    for (std::size_t pi = 0; pi < plan.primes && zero; ++pi) zero = residues[pi][g] == 0;
    if (zero) continue;
    mpz_class x = static_cast<unsigned long>(residues[0][g]), prefix = static_cast<unsigned long>(primes[0]), t;
    for (std::size_t pi = 1; pi < plan.primes; ++pi) {
      mpz_class p(static_cast<unsigned long>(primes[pi]));
      t = (mpz_class(static_cast<unsigned long>(residues[pi][g])) - x) * inv_prefix[pi];
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
      x += prefix * t;
      prefix *= p;
    }
    if (x > half) x -= modulus;

    std::array<long, kNumVars> e{};
    for (std::size_t a = 0; a < axes; ++a) e[vi(plan.grid_vars[a])] = static_cast<long>(g / stride[a] % len[a]);
    for (auto it = plan.gradings.rbegin(); it != plan.gradings.rend(); ++it) {
      long rest = it->total;
      for (Var v : kAllVars)
        if (it->members[vi(v)] && v != it->eliminated) rest -= e[vi(v)];
      if (rest < 0) throw Error("modular determinant: grading produced a negative exponent");
      e[vi(it->eliminated)] = rest;
    }
    std::array<unsigned, kNumVars> ue{};
    for (int i = 0; i < kNumVars; ++i) ue[i] = static_cast<unsigned>(e[i]);
    terms.push_back({Monomial(ue), x});
  }
  Polynomial det = Polynomial::from_terms(std::move(terms));

  // Spot check at a random point modulo a prime not used above.
  const PrimeField f(primes[plan.primes]);
  std::mt19937_64 rng(0x5eed);
  Point pt;
  std::vector<std::uint64_t> a(n * n);
  for (auto& c : pt) c = static_cast<unsigned long>(rng() % f.modulus());
  const mpz_class pm(static_cast<unsigned long>(f.modulus()));
  auto reduce = [&](const mpz_class& v) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), pm.get_mpz_t());
    return f.to_mont(r.get_ui());
  };
  for (std::size_t k = 0; k < n * n; ++k) a[k] = reduce(eval(input.data()[k], pt) % pm);
  if (det_mod_p(a, n, f) != reduce(eval(det, pt) % pm))
    throw Error("modular determinant failed its consistency check");
  return det;
}

}  // namespace gramdet
