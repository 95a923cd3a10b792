// Exercises the shared library through gramdet.h only.
#include <cstring>
#include <string>

#include "doctest.h"
#include "gramdet/gramdet.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  gd_string_free(s);
  return out;
}

gd_poly* parse(const char* s) {
  gd_poly* p = nullptr;
  REQUIRE(gd_poly_parse(s, &p) == GD_OK);
  return p;
}

std::string text(const gd_poly* p) {
  char* s = nullptr;
  REQUIRE(gd_poly_to_string(p, &s) == GD_OK);
  return take(s);
}

}  // namespace

TEST_CASE("capi: version and status names") {
  CHECK(std::strlen(gd_version()) > 0);
  CHECK(std::string(gd_status_name(GD_OK)) == "ok");
  CHECK(std::string(gd_status_name(GD_ERR_NOT_DIVISIBLE)).size() > 0);
}

TEST_CASE("capi: polynomials") {
  gd_poly* a = parse("d^2 - z^2");
  gd_poly* b = parse("d - z");
  gd_poly *q = nullptr, *prod = nullptr, *sum = nullptr, *diff = nullptr;
  REQUIRE(gd_poly_div_exact(a, b, &q) == GD_OK);
  CHECK(text(q) == "d + z");
  REQUIRE(gd_poly_mul(q, b, &prod) == GD_OK);
  CHECK(gd_poly_equal(prod, a));
  REQUIRE(gd_poly_add(a, b, &sum) == GD_OK);
  REQUIRE(gd_poly_sub(sum, b, &diff) == GD_OK);
  CHECK(gd_poly_equal(diff, a));

  gd_poly* three = parse("d + 3");
  gd_poly* none = nullptr;
  CHECK(gd_poly_div_exact(a, three, &none) == GD_ERR_NOT_DIVISIBLE);
  CHECK(none == nullptr);
  gd_poly* zero = parse("0");
  CHECK(gd_poly_div_exact(a, zero, &none) == GD_ERR_ZERO_DIVISOR);

  gd_poly* bad = nullptr;
  CHECK(gd_poly_parse("d^^2", &bad) == GD_ERR_PARSE);
  CHECK(std::strlen(gd_last_error()) > 0);
  CHECK(gd_poly_parse(nullptr, &bad) == GD_ERR_INVALID_ARGUMENT);

  gd_poly* f = nullptr;
  REQUIRE(gd_poly_formula("type-b", 2, &f) == GD_OK);
  CHECK(text(f) == text(parse("(d^2-z^2)^4*((d^2-2)^2-z^2)")));
  CHECK(gd_poly_formula("tilde-conjecture", 1, &none) == GD_ERR_UNSUPPORTED_N);
  CHECK(gd_poly_formula("nope", 2, &none) == GD_ERR_INVALID_ARGUMENT);

  for (gd_poly* p : {a, b, q, prod, sum, diff, three, zero, f}) gd_poly_free(p);
  gd_poly_free(nullptr);
}

TEST_CASE("capi: bases") {
  gd_context* ctx = nullptr;
  REQUIRE(gd_context_new(&ctx) == GD_OK);
  gd_basis* b = nullptr;
  REQUIRE(gd_basis_enumerate(ctx, "annulus", 2, -1, &b) == GD_OK);
  CHECK(gd_basis_size(b) == 6);
  char* el = nullptr;
  REQUIRE(gd_basis_element(b, 0, &el) == GD_OK);
  CHECK(take(el).rfind("A[", 0) == 0);
  CHECK(gd_basis_element(b, 6, &el) == GD_ERR_INVALID_ARGUMENT);
  char* js = nullptr;
  REQUIRE(gd_basis_write(b, "json", &js) == GD_OK);
  CHECK(take(js).find("\"count\": 6") != std::string::npos);
  gd_basis_free(b);

  REQUIRE(gd_basis_enumerate(ctx, "mobius", 3, 1, &b) == GD_OK);
  CHECK(gd_basis_size(b) == 15);
  gd_basis_free(b);

  CHECK(gd_basis_enumerate(ctx, "disk", 0, -1, &b) == GD_ERR_UNSUPPORTED_N);
  CHECK(gd_basis_enumerate(ctx, "torus", 2, -1, &b) == GD_ERR_INVALID_ARGUMENT);
  REQUIRE(gd_context_set_max_n(ctx, 3) == GD_OK);
  CHECK(gd_basis_enumerate(ctx, "disk", 4, -1, &b) == GD_ERR_RESOURCE_LIMIT);
  gd_context_free(ctx);
}

TEST_CASE("capi: matrices and determinants") {
  gd_context* ctx = nullptr;
  REQUIRE(gd_context_new(&ctx) == GD_OK);
  REQUIRE(gd_context_set_cache_dir(ctx, "") == GD_OK);
  REQUIRE(gd_context_set_jobs(ctx, 2) == GD_OK);
  gd_matrix* m = nullptr;
  REQUIRE(gd_matrix_build(ctx, "agen", 3, nullptr, &m) == GD_OK);
  CHECK(gd_matrix_dim(m) == 5);
  char* e = nullptr;
  REQUIRE(gd_matrix_entry(m, 0, 0, &e) == GD_OK);
  CHECK(take(e).size() > 0);
  gd_poly* det = nullptr;
  REQUIRE(gd_matrix_det(ctx, m, &det) == GD_OK);
  gd_poly* want = parse("(d^2-1)^4*z^5*(z^2-2)");
  CHECK(gd_poly_equal(det, want));
  for (const char* fmt : {"json", "csv", "latex"}) {
    char* s = nullptr;
    REQUIRE(gd_matrix_write(m, fmt, &s) == GD_OK);
    CHECK(take(s).size() > 0);
  }
  char* s = nullptr;
  CHECK(gd_matrix_write(m, "xml", &s) == GD_ERR_INVALID_ARGUMENT);

  gd_report* r = nullptr;
  REQUIRE(gd_matrix_verify_det(ctx, m, want, 1, 5, 10, &r) == GD_OK);
  CHECK(gd_report_verdict(r) == GD_VERIFIED);
  char* js = nullptr;
  REQUIRE(gd_report_json(r, &js) == GD_OK);
  CHECK(take(js).find("\"seed\": 5") != std::string::npos);
  gd_report_free(r);

  gd_poly* off = parse("d");
  REQUIRE(gd_matrix_verify_det(ctx, m, off, 0, 1, 1, &r) == GD_OK);
  CHECK(gd_report_verdict(r) == GD_REFUTED);
  gd_report_free(r);

  gd_matrix* t = nullptr;
  REQUIRE(gd_matrix_build(ctx, "MbN1", 2, "y=0,w=1", &t) == GD_OK);
  CHECK(gd_matrix_dim(t) == 4);
  gd_matrix_free(t);
  CHECK(gd_matrix_build(ctx, "mb", 0, nullptr, &t) == GD_ERR_UNSUPPORTED_N);
  CHECK(gd_matrix_build(ctx, "mb", 9, nullptr, &t) == GD_ERR_RESOURCE_LIMIT);
  CHECK(gd_matrix_build(ctx, "mb", 2, "q=1", &t) != GD_OK);

  for (gd_poly* p : {det, want, off}) gd_poly_free(p);
  gd_matrix_free(m);
  gd_context_free(ctx);
}

TEST_CASE("capi: claims") {
  gd_context* ctx = nullptr;
  REQUIRE(gd_context_new(&ctx) == GD_OK);
  gd_report* r = nullptr;
  REQUIRE(gd_claim_run(ctx, "type-b", 2, "exact", 1, 20, &r) == GD_OK);
  CHECK(gd_report_verdict(r) == GD_VERIFIED);
  char* js = nullptr;
  REQUIRE(gd_report_json(r, &js) == GD_OK);
  std::string j = take(js);
  CHECK(j.find("\"claim\": \"type-b\"") != std::string::npos);
  CHECK(j.find("\"kind\": \"theorem\"") != std::string::npos);
  gd_report_free(r);
  CHECK(gd_claim_run(ctx, "main-lemma", 1, "auto", 1, 20, &r) == GD_ERR_UNSUPPORTED_N);
  CHECK(gd_claim_run(ctx, "type-b", 2, "magic", 1, 20, &r) == GD_ERR_INVALID_ARGUMENT);
  CHECK(gd_claim_run(ctx, "nonsense", 2, "auto", 1, 20, &r) == GD_ERR_INVALID_ARGUMENT);
  CHECK(gd_claim_run(nullptr, "type-b", 2, "auto", 1, 20, &r) == GD_ERR_INVALID_ARGUMENT);
  gd_context_free(ctx);
}
