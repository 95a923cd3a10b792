#include "gramdet/gramdet.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "gramdet/chebyshev.hpp"
#include "gramdet/determinant.hpp"
#include "gramdet/error.hpp"
#include "gramdet/gram.hpp"
#include "gramdet/io.hpp"
#include "gramdet/verify.hpp"

struct gd_context {
  gramdet::EnumLimits limits;
  unsigned jobs = 0;
  double max_work = gramdet::DetOptions{}.max_work;
  std::string cache_dir;
};

struct gd_poly {
  gramdet::Polynomial p;
};

struct gd_basis {
  gramdet::BasisSet b;
};

struct gd_matrix {
  gramdet::GramMatrix g;
  bool built = false;  // produced by build_gram, so cacheable by form
  gramdet::Form form = gramdet::Form::A;
};

struct gd_report {
  std::string json;
  gd_verdict verdict = GD_INCONCLUSIVE;
};

namespace {

thread_local std::string last_error;

gd_status fail(gd_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
gd_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const gramdet::ParseError& e) {
    return fail(GD_ERR_PARSE, e.what());
  } catch (const gramdet::UnsupportedN& e) {
    return fail(GD_ERR_UNSUPPORTED_N, e.what());
  } catch (const gramdet::ResourceLimit& e) {
    return fail(GD_ERR_RESOURCE_LIMIT, e.what());
  } catch (const gramdet::ZeroDivisor& e) {
    return fail(GD_ERR_ZERO_DIVISOR, e.what());
  } catch (const gramdet::InvalidDiagram& e) {
    return fail(GD_ERR_INVALID_DIAGRAM, e.what());
  } catch (const gramdet::ClassificationFailure& e) {
    return fail(GD_ERR_CLASSIFICATION, e.what());
  } catch (const gramdet::IoError& e) {
    return fail(GD_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(GD_ERR_IO, e.what());
  } catch (const gramdet::InternalInexactDivision& e) {
    return fail(GD_ERR_INTERNAL, e.what());
  } catch (const gramdet::Error& e) {
    return fail(GD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GD_ERR_RESOURCE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(GD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GD_ERR_INTERNAL, "unknown error");
  }
}

gd_status put_string(const std::string& s, char** out) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) return fail(GD_ERR_RESOURCE_LIMIT, "out of memory");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
  return GD_OK;
}

bool missing(const void* p) { return p == nullptr; }

gd_status null_argument() { return fail(GD_ERR_INVALID_ARGUMENT, "null argument"); }

gramdet::DetOptions det_options(const gd_context* ctx) {
  gramdet::DetOptions o;
  o.max_work = ctx->max_work;
  o.jobs = ctx->jobs;
  return o;
}

}  // namespace

extern "C" {

const char* gd_version(void) { return "1.0.0"; }

const char* gd_status_name(gd_status status) {
  switch (status) {
    case GD_OK: return "ok";
    case GD_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case GD_ERR_PARSE: return "parse-error";
    case GD_ERR_UNSUPPORTED_N: return "unsupported-n";
    case GD_ERR_RESOURCE_LIMIT: return "resource-limit";
    case GD_ERR_NOT_DIVISIBLE: return "not-divisible";
    case GD_ERR_ZERO_DIVISOR: return "zero-divisor";
    case GD_ERR_INVALID_DIAGRAM: return "invalid-diagram";
    case GD_ERR_CLASSIFICATION: return "classification-failure";
    case GD_ERR_IO: return "io-error";
    case GD_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* gd_last_error(void) { return last_error.c_str(); }

void gd_string_free(char* s) { std::free(s); }

gd_status gd_context_new(gd_context** out) {
  if (missing(out)) return null_argument();
  return guarded([&] {
    *out = new gd_context;
    return GD_OK;
  });
}

void gd_context_free(gd_context* ctx) { delete ctx; }

gd_status gd_context_set_jobs(gd_context* ctx, unsigned jobs) {
  if (missing(ctx)) return null_argument();
  ctx->jobs = jobs;
  return GD_OK;
}

gd_status gd_context_set_max_n(gd_context* ctx, int max_n) {
  if (missing(ctx)) return null_argument();
  if (max_n < 1) return fail(GD_ERR_INVALID_ARGUMENT, "max_n must be positive");
  ctx->limits.max_n = max_n;
  return GD_OK;
}

gd_status gd_context_set_max_work(gd_context* ctx, double field_ops) {
  if (missing(ctx)) return null_argument();
  if (!(field_ops > 0)) return fail(GD_ERR_INVALID_ARGUMENT, "max_work must be positive");
  ctx->max_work = field_ops;
  return GD_OK;
}

gd_status gd_context_set_cache_dir(gd_context* ctx, const char* dir) {
  if (missing(ctx)) return null_argument();
  ctx->cache_dir = dir ? dir : "";
  return GD_OK;
}

gd_status gd_poly_parse(const char* text, gd_poly** out) {
  if (missing(text) || missing(out)) return null_argument();
  return guarded([&] {
    *out = new gd_poly{gramdet::parse_poly(text)};
    return GD_OK;
  });
}

gd_status gd_poly_to_string(const gd_poly* p, char** out) {
  if (missing(p) || missing(out)) return null_argument();
  return guarded([&] { return put_string(p->p.to_string(), out); });
}

gd_status gd_poly_add(const gd_poly* a, const gd_poly* b, gd_poly** out) {
  if (missing(a) || missing(b) || missing(out)) return null_argument();
  return guarded([&] {
    *out = new gd_poly{a->p + b->p};
    return GD_OK;
  });
}

gd_status gd_poly_sub(const gd_poly* a, const gd_poly* b, gd_poly** out) {
  if (missing(a) || missing(b) || missing(out)) return null_argument();
  return guarded([&] {
    *out = new gd_poly{a->p - b->p};
    return GD_OK;
  });
}

gd_status gd_poly_mul(const gd_poly* a, const gd_poly* b, gd_poly** out) {
  if (missing(a) || missing(b) || missing(out)) return null_argument();
  return guarded([&] {
    *out = new gd_poly{a->p * b->p};
    return GD_OK;
  });
}

gd_status gd_poly_div_exact(const gd_poly* a, const gd_poly* b, gd_poly** out) {
  if (missing(a) || missing(b) || missing(out)) return null_argument();
  return guarded([&] {
    auto q = gramdet::div_exact(a->p, b->p);
    if (!q) return fail(GD_ERR_NOT_DIVISIBLE, "divisor does not divide the dividend");
    *out = new gd_poly{std::move(*q)};
    return GD_OK;
  });
}

int gd_poly_equal(const gd_poly* a, const gd_poly* b) { return a && b && a->p == b->p; }

gd_status gd_poly_formula(const char* name, int n, gd_poly** out) {
  if (missing(name) || missing(out)) return null_argument();
  return guarded([&] {
    *out = new gd_poly{gramdet::build_formula(gramdet::formula_from_name(name), n)};
    return GD_OK;
  });
}

void gd_poly_free(gd_poly* p) { delete p; }

gd_status gd_basis_enumerate(const gd_context* ctx, const char* kind, int n, int k, gd_basis** out) {
  if (missing(ctx) || missing(kind) || missing(out)) return null_argument();
  return guarded([&] {
    gramdet::BasisKind bk = gramdet::basis_kind_from_name(kind);
    if (k >= 0 && bk != gramdet::BasisKind::MobiusAll) return fail(GD_ERR_INVALID_ARGUMENT, "k applies to mobius only");
    if (k >= 0) bk = gramdet::BasisKind::MobiusK;
    *out = new gd_basis{gramdet::enumerate(bk, n, k < 0 ? 0 : k, ctx->limits)};
    return GD_OK;
  });
}

size_t gd_basis_size(const gd_basis* b) { return b ? b->b.size() : 0; }

gd_status gd_basis_element(const gd_basis* b, size_t i, char** out) {
  if (missing(b) || missing(out)) return null_argument();
  if (i >= b->b.size()) return fail(GD_ERR_INVALID_ARGUMENT, "index out of range");
  return guarded([&] { return put_string(gramdet::serialize(b->b.elements[i]), out); });
}

gd_status gd_basis_write(const gd_basis* b, const char* format, char** out) {
  if (missing(b) || missing(format) || missing(out)) return null_argument();
  return guarded([&] {
    std::string f = format;
    if (f == "text") return put_string(gramdet::basis_text(b->b), out);
    if (f == "json") return put_string(gramdet::basis_json(b->b), out);
    return fail(GD_ERR_INVALID_ARGUMENT, "unknown basis format '" + f + "'");
  });
}

void gd_basis_free(gd_basis* b) { delete b; }

gd_status gd_matrix_build(const gd_context* ctx, const char* form, int n, const char* subst, gd_matrix** out) {
  if (missing(ctx) || missing(form) || missing(out)) return null_argument();
  return guarded([&] {
    const gramdet::Form f = gramdet::form_from_name(form);
    const gramdet::Substitution s = subst && *subst ? gramdet::parse_substitution(subst) : gramdet::Substitution{};
    if (n < 1) throw gramdet::UnsupportedN("n must be at least 1");
    if (n > ctx->limits.max_n)
      throw gramdet::ResourceLimit("n = " + std::to_string(n) + " exceeds the limit " + std::to_string(ctx->limits.max_n));
    const gramdet::Cache cache = gramdet::Cache::resolve(ctx->cache_dir);
    auto m = std::make_unique<gd_matrix>();
    m->built = true;
    m->form = f;
    if (auto hit = cache.load_matrix(f, n, s)) {
      m->g = std::move(*hit);
    } else {
      gramdet::GramMatrix g = gramdet::build_gram(f, n, {ctx->limits, ctx->jobs});
      m->g = s.empty() ? std::move(g) : gramdet::substitute(g, s);
      cache.store_matrix(m->g, f);
    }
    *out = m.release();
    return GD_OK;
  });
}

size_t gd_matrix_dim(const gd_matrix* m) { return m ? m->g.dim() : 0; }

gd_status gd_matrix_entry(const gd_matrix* m, size_t i, size_t j, char** out) {
  if (missing(m) || missing(out)) return null_argument();
  if (i >= m->g.dim() || j >= m->g.dim()) return fail(GD_ERR_INVALID_ARGUMENT, "index out of range");
  return guarded([&] { return put_string(m->g.entries.at(i, j).to_string(), out); });
}

gd_status gd_matrix_write(const gd_matrix* m, const char* format, char** out) {
  if (missing(m) || missing(format) || missing(out)) return null_argument();
  return guarded([&] {
    std::string f = format;
    if (f == "json") return put_string(gramdet::matrix_json(m->g), out);
    if (f == "csv") return put_string(gramdet::matrix_csv(m->g), out);
    if (f == "latex") return put_string(gramdet::matrix_latex(m->g), out);
    return fail(GD_ERR_INVALID_ARGUMENT, "unknown matrix format '" + f + "'");
  });
}

gd_status gd_matrix_det(const gd_context* ctx, const gd_matrix* m, gd_poly** out) {
  if (missing(ctx) || missing(m) || missing(out)) return null_argument();
  return guarded([&] {
    const gramdet::Cache cache = m->built ? gramdet::Cache::resolve(ctx->cache_dir) : gramdet::Cache();
    const auto& prov = m->g.provenance;
    if (auto hit = cache.load_det(m->form, prov.n, prov.substitution)) {
      *out = new gd_poly{std::move(*hit)};
      return GD_OK;
    }
    gramdet::Polynomial d = gramdet::det_exact(m->g, det_options(ctx));
    cache.store_det(m->form, prov.n, prov.substitution, d);
    *out = new gd_poly{std::move(d)};
    return GD_OK;
  });
}

gd_status gd_matrix_verify_det(const gd_context* ctx, const gd_matrix* m, const gd_poly* candidate, int randomized,
                               uint64_t seed, int trials, gd_report** out) {
  if (missing(ctx) || missing(m) || missing(candidate) || missing(out)) return null_argument();
  if (randomized && trials < 1) return fail(GD_ERR_INVALID_ARGUMENT, "trials must be positive");
  return guarded([&] {
    gramdet::VerifyMode mode;
    mode.kind = randomized ? gramdet::VerifyMode::Randomized : gramdet::VerifyMode::Deterministic;
    mode.seed = seed;
    mode.trials = trials;
    gramdet::DetResult r = gramdet::det_verify(m->g, candidate->p, mode);
    auto rep = std::make_unique<gd_report>();
    rep->json = gramdet::det_result_json(r, m->g.provenance, randomized ? "randomized" : "deterministic");
    rep->verdict = r.verdict == gramdet::DetResult::Agree      ? GD_VERIFIED
                   : r.verdict == gramdet::DetResult::Disagree ? GD_REFUTED
                                                               : GD_INCONCLUSIVE;
    *out = rep.release();
    return GD_OK;
  });
}

void gd_matrix_free(gd_matrix* m) { delete m; }

gd_status gd_claim_run(const gd_context* ctx, const char* claim, int n, const char* method, uint64_t seed, int trials,
                       gd_report** out) {
  if (missing(ctx) || missing(claim) || missing(out)) return null_argument();
  if (trials < 1) return fail(GD_ERR_INVALID_ARGUMENT, "trials must be positive");
  return guarded([&] {
    gramdet::ClaimOptions o;
    o.method = method ? gramdet::method_from_name(method) : gramdet::Method::Auto;
    o.seed = seed;
    o.trials = trials;
    o.jobs = ctx->jobs;
    o.limits = ctx->limits;
    o.max_work = ctx->max_work;
    o.exact_threshold = std::min(o.exact_threshold, ctx->max_work);
    const gramdet::Claim c = gramdet::claim_from_name(claim);
    gramdet::ClaimReport r = gramdet::run_claim(c, n, o);
    auto rep = std::make_unique<gd_report>();
    rep->json = gramdet::report_json(r);
    rep->verdict = r.verdict == gramdet::Verdict::Verified  ? GD_VERIFIED
                   : r.verdict == gramdet::Verdict::Refuted ? GD_REFUTED
                                                            : GD_INCONCLUSIVE;
    *out = rep.release();
    return GD_OK;
  });
}

gd_verdict gd_report_verdict(const gd_report* r) { return r ? r->verdict : GD_INCONCLUSIVE; }

gd_status gd_report_json(const gd_report* r, char** out) {
  if (missing(r) || missing(out)) return null_argument();
  return guarded([&] { return put_string(r->json, out); });
}

void gd_report_free(gd_report* r) { delete r; }

}  // extern "C"
