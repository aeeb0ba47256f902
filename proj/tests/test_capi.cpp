#include "kraw/kraw.h"

#include <doctest.h>
#include <json.hpp>

#include <cstring>
#include <string>

using nlohmann::json;

namespace {

/// Takes ownership of a library string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  kraw_string_free(s);
  return out;
}

kraw_params* ds(const char* q, int d, const kraw_options* options = nullptr) {
  kraw_params* out = nullptr;
  REQUIRE(kraw_params_ds(q, d, options, &out) == KRAW_OK);
  return out;
}

}  // namespace

TEST_CASE("options and version") {
  kraw_options o;
  kraw_options_init(&o);
  CHECK(o.mode == KRAW_MODE_EXACT);
  CHECK(o.eps == 1e-10);
  CHECK(o.threads == 1);
  CHECK(std::strlen(kraw_version()) > 0);
}

TEST_CASE("params JSON round trip") {
  kraw_params* k = ds("2", 2);
  CHECK(kraw_params_dim(k) == 2);
  CHECK(kraw_params_mode(k) == KRAW_MODE_EXACT);
  char* text = nullptr;
  REQUIRE(kraw_params_to_json(k, &text) == KRAW_OK);
  const std::string first = take(text);
  CHECK(json::parse(first)["p"] == json::array({"1/4", "1/4", "1/2"}));

  kraw_params* back = nullptr;
  REQUIRE(kraw_params_from_json(first.c_str(), nullptr, &back) == KRAW_OK);
  REQUIRE(kraw_params_to_json(back, &text) == KRAW_OK);
  CHECK(take(text) == first);
  kraw_params_free(back);
  kraw_params_free(k);
}

TEST_CASE("status codes and last error") {
  kraw_params* out = nullptr;
  CHECK(kraw_params_from_json("{not json", nullptr, &out) == KRAW_PARSE_ERROR);
  CHECK(out == nullptr);
  CHECK(std::strlen(kraw_last_error()) > 0);

  const char* forged = R"({"d":1,"nu":3,"p":["1/2","1/2"],"pt":["1/2","1/2"],"u":[[1,1],[1,-1]]})";
  CHECK(kraw_params_from_json(forged, nullptr, &out) == KRAW_INVALID_PARAMS);
  char* report = nullptr;
  CHECK(kraw_params_validate_json(forged, nullptr, &report) == KRAW_INVALID_PARAMS);
  const json rep = json::parse(take(report));
  CHECK(rep["valid"] == false);
  CHECK_FALSE(rep["violations"].empty());

  const char* hr_bad[] = {"1", "1", "1", "1"};
  CHECK(kraw_params_hoare_rahman(hr_bad, nullptr, &out) == KRAW_INVALID_PARAMS);
  CHECK(std::string(kraw_last_error()).find("domain") != std::string::npos);

  CHECK(kraw_params_ds("abc", 2, nullptr, &out) == KRAW_PARSE_ERROR);
  CHECK(kraw_params_ds("2", 2, nullptr, nullptr) != KRAW_OK);

  kraw_params* k = ds("2", 2);
  const int big[] = {2, 2};
  const int zero[] = {0, 0};
  char* value = nullptr;
  CHECK(kraw_eval(k, 3, big, zero, 2, KRAW_METHOD_HYPERGEOMETRIC, &value) == KRAW_DOMAIN_ERROR);
  CHECK(kraw_eval(k, 3, zero, zero, 1, KRAW_METHOD_HYPERGEOMETRIC, &value) == KRAW_DOMAIN_ERROR);
  CHECK(kraw_check(k, 2, "orthogonality,bogus", &report) == KRAW_PARSE_ERROR);
  CHECK(kraw_stencil_json(k, 2, KRAW_OPERATOR_M, 3, &value) == KRAW_DOMAIN_ERROR);
  kraw_params_free(k);
  kraw_params_free(nullptr);
}

TEST_CASE("families and evaluation") {
  const char* p[] = {"1/2", "1/4", "1/4"};
  kraw_params* milch = nullptr;
  REQUIRE(kraw_params_milch(p, 3, nullptr, &milch) == KRAW_OK);
  // For N = 1 the value at (v_j, v_i) is u_{i,j}.
  const int m[] = {1, 0};
  const int off[] = {0, 1};
  const int diag[] = {1, 0};
  for (auto method : {KRAW_METHOD_HYPERGEOMETRIC, KRAW_METHOD_GENERATING, KRAW_METHOD_PAIRING}) {
    char* value = nullptr;
    REQUIRE(kraw_eval(milch, 1, m, off, 2, method, &value) == KRAW_OK);
    CHECK(take(value) == "1");
    REQUIRE(kraw_eval(milch, 1, m, diag, 2, method, &value) == KRAW_OK);
    CHECK(take(value) == "-3");
  }

  kraw_params* g = nullptr;
  REQUIRE(kraw_params_griffiths(p, 3, nullptr, &g) == KRAW_OK);
  kraw_params* b = nullptr;
  REQUIRE(kraw_params_involute(g, &b) == KRAW_OK);
  kraw_params* bb = nullptr;
  REQUIRE(kraw_params_involute(b, &bb) == KRAW_OK);
  char* s1 = nullptr;
  char* s2 = nullptr;
  REQUIRE(kraw_params_to_json(g, &s1) == KRAW_OK);
  REQUIRE(kraw_params_to_json(bb, &s2) == KRAW_OK);
  CHECK(take(s1) == take(s2));

  const char* hr[] = {"1", "2", "3", "4"};
  kraw_params* h = nullptr;
  REQUIRE(kraw_params_hoare_rahman(hr, nullptr, &h) == KRAW_OK);
  char* stencil = nullptr;
  REQUIRE(kraw_stencil_json(h, 3, KRAW_OPERATOR_MTILDE, 1, &stencil) == KRAW_OK);
  const json st = json::parse(take(stencil));
  CHECK(st["terms"].size() == 7);
  CHECK(st["attained_terms"] == 7);

  for (auto* k : {milch, g, b, bb, h}) kraw_params_free(k);
}

TEST_CASE("checks and tables") {
  kraw_params* k = ds("3", 2);
  char* report = nullptr;
  REQUIRE(kraw_check(k, 2, nullptr, &report) == KRAW_OK);
  const json full = json::parse(take(report));
  CHECK(full["pass"] == true);
  CHECK(full["checks"].size() == 12);

  char* table = nullptr;
  REQUIRE(kraw_table_json(k, 3, &table) == KRAW_OK);
  std::string text = take(table);
  REQUIRE(kraw_check_table(text.c_str(), "orthogonality,recurrence", nullptr, &report) == KRAW_OK);
  take(report);

  json doc = json::parse(text);
  doc["values"][2][3] = "7/5";
  const std::string corrupted = doc.dump();
  CHECK(kraw_check_table(corrupted.c_str(), "orthogonality", nullptr, &report) == KRAW_CHECK_FAILED);
  const json bad = json::parse(take(report));
  CHECK(bad["pass"] == false);
  CHECK_FALSE(bad["checks"][0]["failures"].empty());
  kraw_params_free(k);
}

TEST_CASE("approximate mode") {
  kraw_options o;
  kraw_options_init(&o);
  o.mode = KRAW_MODE_APPROX;
  o.threads = 2;
  kraw_params* k = ds("1/2", 3, &o);
  CHECK(kraw_params_mode(k) == KRAW_MODE_APPROX);
  char* report = nullptr;
  REQUIRE(kraw_check(k, 2, "orthogonality,recurrence,universal", &report) == KRAW_OK);
  const json rep = json::parse(take(report));
  CHECK(rep["mode"] == "approx");
  for (const auto& c : rep["checks"]) CHECK(c["max_residual"].get<double>() < 1e-10);
  kraw_params_free(k);
}
