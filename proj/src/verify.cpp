#include "gramdet/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <mutex>

#include "gramdet/chebyshev.hpp"
#include "gramdet/error.hpp"
#include "gramdet/gram.hpp"

namespace gramdet {

namespace {

struct ClaimInfo {
  Claim claim;
  std::string_view name;
  bool conjecture;
  int min_n;
};

constexpr ClaimInfo kClaimInfo[] = {
    {Claim::TypeATheorem, "type-a", false, 1},          {Claim::TypeBTheorem, "type-b", false, 1},
    {Claim::QiConjecture, "qi-conjecture", true, 1},    {Claim::Prop1, "prop1", false, 1},
    {Claim::Prop2, "prop2", false, 1},                  {Claim::Prop3, "prop3", false, 2},
    {Claim::MainLemma, "main-lemma", false, 2},         {Claim::MainTheorem, "main-theorem", false, 2},
    {Claim::Mb1Conjecture, "mb1-conjecture", true, 1},  {Claim::TildeConjecture, "tilde-conjecture", true, 2},
};

const ClaimInfo& info(Claim c) {
  for (const auto& i : kClaimInfo)
    if (i.claim == c) return i;
  throw Error("unknown claim");
}

constexpr std::size_t kShortValue = 4096;

std::string shorten(const std::string& s) {
  if (s.size() <= kShortValue) return s;
  return s.substr(0, kShortValue) + " ...";
}

// factor * det(matrix); an empty matrix contributes 1.
struct Side {
  Polynomial factor{1};
  GramMatrix matrix;
};

std::mutex memo_mu;
std::map<std::string, Polynomial> memo;

Polynomial memo_det(const GramMatrix& g, const DetOptions& options) {
  if (g.dim() == 0) return Polynomial(1);
  const std::string key = g.provenance.describe() + " dim=" + std::to_string(g.dim());
  {
    std::lock_guard<std::mutex> lock(memo_mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  Polynomial d = det_exact(g, options);
  std::lock_guard<std::mutex> lock(memo_mu);
  memo.emplace(key, d);
  return d;
}

bool cheap(const GramMatrix& g, double threshold) {
  if (g.dim() <= 8) return true;
  ModularPlan plan = plan_modular(g.entries);
  return plan.singular || plan.work <= threshold;
}

Polynomial binom_power(const Polynomial& p, int n, int lower) {
  return pow(p, binomial(2 * n, n - lower).get_ui());
}

void run_identity(ClaimReport& r, const Side& lhs, const Side& rhs, Method method, const ClaimOptions& o) {
  DetOptions dopt;
  dopt.max_work = o.max_work;
  dopt.jobs = o.jobs;
  if (method == Method::Auto)
    method = cheap(lhs.matrix, o.exact_threshold) && cheap(rhs.matrix, o.exact_threshold) ? Method::Exact
                                                                                           : Method::Randomized;
  if (method == Method::Exact) {
    r.method = "exact";
    try {
      Polynomial left = lhs.factor * memo_det(lhs.matrix, dopt);
      Polynomial right = rhs.factor * memo_det(rhs.matrix, dopt);
      if (left == right) {
        r.verdict = Verdict::Verified;
        r.value_terms = left.size();
        std::string s = left.to_string();
        if (s.size() <= kShortValue) r.value = s;
      } else {
        r.verdict = Verdict::Refuted;
        r.witness = shorten((left - right).to_string());
        r.detail = "sides differ";
      }
    } catch (const ResourceLimit& e) {
      r.verdict = Verdict::Inconclusive;
      r.detail = e.what();
    }
    return;
  }
  r.method = "randomized";
  VerifyMode mode;
  mode.kind = VerifyMode::Randomized;
  mode.seed = o.seed;
  mode.trials = o.trials;
  DetResult d = verify_identity(lhs.factor, lhs.matrix.entries, rhs.factor, rhs.matrix.entries, mode);
  r.seed = d.seed;
  r.trials = d.trials;
  r.prime = d.prime;
  r.detail = d.note;
  if (d.verdict == DetResult::Agree) {
    r.verdict = Verdict::Verified;
    r.failure_bound_log2 = d.failure_bound_log2;
  } else {
    r.verdict = Verdict::Refuted;
    r.witness = d.failing_point.empty() ? "" : d.failing_point.front();
  }
}

void run_divisibility(ClaimReport& r, const Polynomial& divisor, const GramMatrix& g, Method method,
                      const ClaimOptions& o) {
  DetOptions dopt;
  dopt.max_work = o.max_work;
  dopt.jobs = o.jobs;
  if (method == Method::Exact || (method == Method::Auto && cheap(g, o.exact_threshold))) {
    r.method = "exact";
    try {
      Polynomial det = memo_det(g, dopt);
      if (div_exact(det, divisor)) {
        r.verdict = Verdict::Verified;
        r.detail = "exact division of the determinant";
      } else {
        r.verdict = Verdict::Refuted;
        r.witness = "determinant " + shorten(det.to_string());
        r.detail = "determinant not divisible by " + shorten(divisor.to_string());
      }
      return;
    } catch (const ResourceLimit& e) {
      if (method == Method::Exact) {
        r.verdict = Verdict::Inconclusive;
        r.detail = e.what();
        return;
      }
    }
  }
  if (r.claim == Claim::Prop3) {
    r.method = method == Method::Randomized ? "randomized" : "exact";
    r.verdict = Verdict::Inconclusive;
    r.detail = "divisibility cannot be decided by evaluation and the exact determinant exceeds the budget";
    return;
  }
  r.method = "certificate";
  ColumnCertificate c = r.claim == Claim::Prop1 ? certify_crosscap_flip(g) : certify_crosscap_smoothing(g);
  const auto need = binomial(2 * r.n, r.n - 1).get_ui();
  r.detail = c.detail;
  if (c.complete && c.columns == need && pow(c.factor, need) == divisor) {
    r.verdict = Verdict::Verified;
  } else {
    r.verdict = Verdict::Inconclusive;
  }
}

}  // namespace

std::string_view claim_name(Claim c) { return info(c).name; }

Claim claim_from_name(std::string_view name) {
  for (const auto& i : kClaimInfo)
    if (i.name == name) return i.claim;
  throw Error("unknown claim '" + std::string(name) + "'");
}

bool is_conjecture(Claim c) { return info(c).conjecture; }
int claim_min_n(Claim c) { return info(c).min_n; }

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Exact: return "exact";
    case Method::Randomized: return "randomized";
  }
  return "?";
}

Method method_from_name(std::string_view name) {
  for (Method m : {Method::Auto, Method::Exact, Method::Randomized})
    if (method_name(m) == name) return m;
  throw Error("unknown method '" + std::string(name) + "'");
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

ClaimReport run_claim(Claim claim, int n, const ClaimOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  if (n < claim_min_n(claim))
    throw UnsupportedN(std::string(claim_name(claim)) + " needs n >= " + std::to_string(claim_min_n(claim)));
  if (n > o.limits.max_n)
    throw ResourceLimit("n = " + std::to_string(n) + " exceeds the enumeration bound " + std::to_string(o.limits.max_n));
  ClaimReport r;
  r.claim = claim;
  r.n = n;
  BuildOptions b{o.limits, o.jobs};
  const Polynomial d = Polynomial::var(Var::d), z = Polynomial::var(Var::z);

  auto tilde = [&] { return substitute(build_gram(Form::MbN1, n, b), tilde_substitution()); };
  auto formula = [&](FormulaId id) {
    Side s;
    s.factor = build_formula(id, n);
    return s;
  };
  auto matrix = [](GramMatrix g, Polynomial f = Polynomial(1)) { return Side{std::move(f), std::move(g)}; };

  switch (claim) {
    case Claim::TypeATheorem:
      run_identity(r, matrix(build_gram(Form::A, n, b)), formula(FormulaId::TypeA), o.method, o);
      break;
    case Claim::TypeBTheorem:
      run_identity(r, matrix(build_gram(Form::B, n, b)), formula(FormulaId::TypeB), o.method, o);
      break;
    case Claim::QiConjecture:
      run_identity(r, matrix(build_gram(Form::Mb, n, b)), formula(FormulaId::QiMb), o.method, o);
      break;
    case Claim::Mb1Conjecture:
      run_identity(r, matrix(build_gram(Form::Mb1, n, b)), formula(FormulaId::Mb1Conjecture), o.method, o);
      break;
    case Claim::TildeConjecture:
      run_identity(r, matrix(tilde()), formula(FormulaId::TildeConjecture), o.method, o);
      break;
    case Claim::MainLemma: {
      const Polynomial f = Polynomial::var(Var::w) * (d + z) - 2 * Polynomial::var(Var::x) * Polynomial::var(Var::y);
      run_identity(r, matrix(build_gram(Form::Mb1, n, b), binom_power(d + z, n, 1)),
                   matrix(direct_sum(build_gram(Form::B, n, b), tilde()), binom_power(f, n, 1)), o.method, o);
      break;
    }
    case Claim::MainTheorem:
      run_identity(r, matrix(build_gram(Form::Mb1, n, b)), matrix(tilde(), build_formula(FormulaId::MaintheoremFactor, n)),
                   o.method, o);
      break;
    case Claim::Prop1:
      run_divisibility(r, build_formula(FormulaId::Prop1Divisor, n), build_gram(Form::Mb, n, b), o.method, o);
      break;
    case Claim::Prop2:
      run_divisibility(r, build_formula(FormulaId::Prop2Divisor, n), build_gram(Form::Mb, n, b), o.method, o);
      break;
    case Claim::Prop3:
      run_divisibility(r, build_formula(FormulaId::Prop3Divisor, n), build_gram(Form::Mb, n, b), o.method, o);
      break;
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace gramdet
