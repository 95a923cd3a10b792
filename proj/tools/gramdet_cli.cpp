// gramdet command-line tool; talks to the library only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gramdet/gramdet.h"

namespace {

enum Exit { kOk = 0, kRefuted = 1, kUsage = 2, kResource = 3, kInconclusive = 4 };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Library failure carrying its status.
struct Failure {
  gd_status status;
  std::string message;
};

void check(gd_status s) {
  if (s != GD_OK) throw Failure{s, gd_last_error()};
}

int exit_for(gd_status s) {
  switch (s) {
    case GD_OK: return kOk;
    case GD_ERR_RESOURCE_LIMIT: return kResource;
    case GD_ERR_INTERNAL:
    case GD_ERR_CLASSIFICATION: return kInconclusive;
    default: return kUsage;
  }
}

int exit_for(gd_verdict v) {
  switch (v) {
    case GD_VERIFIED: return kOk;
    case GD_REFUTED: return kRefuted;
    case GD_INCONCLUSIVE: return kInconclusive;
  }
  return kInconclusive;
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Context = std::unique_ptr<gd_context, Deleter<gd_context, gd_context_free>>;
using Poly = std::unique_ptr<gd_poly, Deleter<gd_poly, gd_poly_free>>;
using Basis = std::unique_ptr<gd_basis, Deleter<gd_basis, gd_basis_free>>;
using Matrix = std::unique_ptr<gd_matrix, Deleter<gd_matrix, gd_matrix_free>>;
using Report = std::unique_ptr<gd_report, Deleter<gd_report, gd_report_free>>;

std::string take(char* s) {
  std::string out(s);
  gd_string_free(s);
  return out;
}

struct Options {
  std::string kind, form, claim, method = "auto", format, output, cache_dir, subst, candidate, formula;
  int n = 0, k = -1, max_n = 8, trials = 20;
  std::uint64_t seed = 1;
  unsigned jobs = 0;
  double max_work = 0;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(o.output, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{GD_ERR_IO, "cannot write " + o.output};
  out << text;
}

Context make_context(const Options& o) {
  gd_context* raw = nullptr;
  check(gd_context_new(&raw));
  Context ctx(raw);
  check(gd_context_set_jobs(ctx.get(), o.jobs));
  check(gd_context_set_max_n(ctx.get(), o.max_n));
  check(gd_context_set_cache_dir(ctx.get(), o.cache_dir.c_str()));
  if (o.max_work > 0) check(gd_context_set_max_work(ctx.get(), o.max_work));
  return ctx;
}

Matrix build(const Options& o, gd_context* ctx) {
  gd_matrix* m = nullptr;
  check(gd_matrix_build(ctx, o.form.c_str(), o.n, o.subst.c_str(), &m));
  return Matrix(m);
}

int cmd_enum(const Options& o) {
  auto ctx = make_context(o);
  gd_basis* b = nullptr;
  check(gd_basis_enumerate(ctx.get(), o.kind.c_str(), o.n, o.k, &b));
  Basis basis(b);
  char* s = nullptr;
  check(gd_basis_write(basis.get(), o.format.empty() ? "text" : o.format.c_str(), &s));
  emit(o, take(s));
  return kOk;
}

int cmd_matrix(const Options& o) {
  auto ctx = make_context(o);
  auto m = build(o, ctx.get());
  char* s = nullptr;
  check(gd_matrix_write(m.get(), o.format.empty() ? "json" : o.format.c_str(), &s));
  emit(o, take(s));
  return kOk;
}

std::optional<Poly> candidate(const Options& o) {
  if (!o.candidate.empty() && !o.formula.empty()) throw Usage("--candidate and --formula are exclusive");
  gd_poly* p = nullptr;
  if (!o.candidate.empty())
    check(gd_poly_parse(o.candidate.c_str(), &p));
  else if (!o.formula.empty())
    check(gd_poly_formula(o.formula.c_str(), o.n, &p));
  else
    return std::nullopt;
  return Poly(p);
}

int cmd_det(const Options& o) {
  auto ctx = make_context(o);
  auto cand = candidate(o);
  const bool evaluate = o.method == "randomized" || o.method == "deterministic";
  if (evaluate && !cand) throw Usage("--method " + o.method + " needs --candidate or --formula");
  auto m = build(o, ctx.get());

  if (evaluate) {
    gd_report* r = nullptr;
    check(gd_matrix_verify_det(ctx.get(), m.get(), cand->get(), o.method == "randomized", o.seed, o.trials, &r));
    Report rep(r);
    char* s = nullptr;
    check(gd_report_json(rep.get(), &s));
    emit(o, take(s));
    return exit_for(gd_report_verdict(rep.get()));
  }

  gd_poly* d = nullptr;
  check(gd_matrix_det(ctx.get(), m.get(), &d));
  Poly det(d);
  char* s = nullptr;
  check(gd_poly_to_string(det.get(), &s));
  const std::string text = take(s);
  const bool agree = !cand || gd_poly_equal(det.get(), cand->get());
  if (o.format == "json") {
    nlohmann::json j;
    j["form"] = o.form;
    j["n"] = o.n;
    if (!o.subst.empty()) j["substitution"] = o.subst;
    j["method"] = "exact";
    j["det"] = text;
    if (cand) j["verdict"] = agree ? "agree" : "disagree";
    emit(o, j.dump(1) + "\n");
  } else {
    emit(o, text + "\n");
  }
  return agree ? kOk : kRefuted;
}

int cmd_verify(const Options& o) {
  auto ctx = make_context(o);
  gd_report* r = nullptr;
  check(gd_claim_run(ctx.get(), o.claim.c_str(), o.n, o.method.c_str(), o.seed, o.trials, &r));
  Report rep(r);
  char* s = nullptr;
  check(gd_report_json(rep.get(), &s));
  emit(o, take(s));
  return exit_for(gd_report_verdict(rep.get()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gram determinants of crossingless-connection bases"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--cache-dir", o.cache_dir, "cache directory (default: $GRAMDET_CACHE_DIR)");
  app.add_option("--max-n", o.max_n, "largest n accepted")->check(CLI::PositiveNumber);
  app.add_option("--jobs", o.jobs, "worker threads, 0 for all cores");
  app.add_option("--max-work", o.max_work, "field-operation budget of the exact engine")->check(CLI::PositiveNumber);

  auto* en = app.add_subcommand("enum", "list a basis in canonical order");
  en->add_option("--kind", o.kind, "disk | annulus | mobius | mb1")->required();
  en->add_option("--n", o.n, "number of marked-point pairs")->required();
  en->add_option("--k", o.k, "crosscap arcs (mobius only)")->check(CLI::NonNegativeNumber);
  en->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  en->add_option("--output", o.output, "output file");

  auto* mx = app.add_subcommand("matrix", "print a Gram matrix");
  mx->add_option("--form", o.form, "A | Agen | B | Mb | Mb1 | MbN1")->required();
  mx->add_option("--n", o.n, "n")->required();
  mx->add_option("--subst", o.subst, "substitution, e.g. y=0,w=1");
  mx->add_option("--format", o.format, "json | csv | latex")->check(CLI::IsMember({"json", "csv", "latex"}));
  mx->add_option("--output", o.output, "output file");

  auto* dt = app.add_subcommand("det", "determinant of a Gram matrix");
  dt->add_option("--form", o.form, "A | Agen | B | Mb | Mb1 | MbN1")->required();
  dt->add_option("--n", o.n, "n")->required();
  dt->add_option("--subst", o.subst, "substitution, e.g. y=0,w=1");
  dt->add_option("--method", o.method, "auto | exact | randomized | deterministic")
      ->check(CLI::IsMember({"auto", "exact", "randomized", "deterministic"}));
  dt->add_option("--candidate", o.candidate, "polynomial to compare against");
  dt->add_option("--formula", o.formula, "closed form to compare against, e.g. type-b");
  dt->add_option("--seed", o.seed, "random seed");
  dt->add_option("--trials", o.trials, "random evaluation points")->check(CLI::PositiveNumber);
  dt->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  dt->add_option("--output", o.output, "output file");

  auto* vf = app.add_subcommand("verify", "check a statement at one n");
  vf->add_option("--claim", o.claim,
                 "type-a | type-b | qi-conjecture | prop1 | prop2 | prop3 | main-lemma | main-theorem | "
                 "mb1-conjecture | tilde-conjecture")
      ->required();
  vf->add_option("--n", o.n, "n")->required();
  vf->add_option("--method", o.method, "auto | exact | randomized")
      ->check(CLI::IsMember({"auto", "exact", "randomized"}));
  vf->add_option("--seed", o.seed, "random seed");
  vf->add_option("--trials", o.trials, "random evaluation points")->check(CLI::PositiveNumber);
  vf->add_option("--output", o.output, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (en->parsed()) return cmd_enum(o);
    if (mx->parsed()) return cmd_matrix(o);
    if (dt->parsed()) return cmd_det(o);
    return cmd_verify(o);
  } catch (const Usage& e) {
    std::cerr << "gramdet: " << e.what() << "\n";
    return kUsage;
  } catch (const Failure& f) {
    std::cerr << "gramdet: " << gd_status_name(f.status) << ": " << f.message << "\n";
    return exit_for(f.status);
  } catch (const std::exception& e) {
    std::cerr << "gramdet: " << e.what() << "\n";
    return kInconclusive;
  }
}
