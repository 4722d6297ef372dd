// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through lpw.h only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "lpw/lpw.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  lpw_string_free(s);
  return out;
}

nlohmann::json take_json(char* s) { return nlohmann::json::parse(take(s)); }

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(lpw_status_name(LPW_OK)) == "Ok");
  CHECK(std::string(lpw_status_name(LPW_ERR_EXPONENT_TWO)) == "ExponentTwo");
  CHECK(std::string(lpw_status_name(LPW_ERR_IO)) == "IoError");
  lpw_presentation* p = nullptr;
  CHECK(lpw_presentation_from_json("{\"space\": \"nope\"}", "3", &p) == LPW_ERR_INVALID_INPUT);
  CHECK(p == nullptr);
  CHECK(std::string(lpw_last_error()).find("nope") != std::string::npos);
  CHECK(lpw_presentation_from_json("{not json", "3", &p) == LPW_ERR_INVALID_INPUT);
  CHECK(lpw_presentation_standard(LPW_SPACE_LP, 0, nullptr, &p) == LPW_ERR_NULL_ARGUMENT);
  CHECK(lpw_presentation_from_json("{\"space\": \"lp\", \"p\": [3, 1]}", "2", &p) == LPW_ERR_EXPONENT_MISMATCH);
  lpw_name* n = nullptr;
  CHECK(lpw_name_read_file("/nonexistent/name.txt", &n) == LPW_ERR_IO);
}

TEST_CASE("norms and names") {
  lpw_presentation* p = nullptr;
  REQUIRE(lpw_presentation_standard(LPW_SPACE_LPN, 2, "3", &p) == LPW_OK);
  char* out = nullptr;
  REQUIRE(lpw_presentation_norm(p, "[1, 1]", 20, &out) == LPW_OK);
  auto e = take_json(out);
  // ||(1,1)||_3 = 2^(1/3) = 1.2599...
  double lo = double(e["lo"][0].get<long long>()) / double(e["lo"][1].get<long long>());
  double hi = double(e["hi"][0].get<long long>()) / double(e["hi"][1].get<long long>());
  CHECK(lo <= 1.25992105);
  CHECK(hi >= 1.25992104);
  CHECK(hi - lo <= 1.0 / (1 << 20));

  lpw_name* f = nullptr;
  REQUIRE(lpw_name_of_presentation(p, &f) == LPW_OK);
  int finite = 1;
  uint64_t len = 0;
  REQUIRE(lpw_name_length(f, &finite, &len) == LPW_OK);
  CHECK(finite == 0);
  REQUIRE(lpw_name_text(f, 5, &out) == LPW_OK);
  std::string text = take(out);
  lpw_name* g = nullptr;
  REQUIRE(lpw_name_parse(text.c_str(), &g) == LPW_OK);
  REQUIRE(lpw_name_length(g, &finite, &len) == LPW_OK);
  CHECK(finite == 1);
  CHECK(len == 5);

  char path[] = "/tmp/lpw_c_api_XXXXXX";
  int fd = mkstemp(path);
  REQUIRE(fd >= 0);
  REQUIRE(lpw_name_write_file(f, 50, path) == LPW_OK);
  lpw_name* back = nullptr;
  REQUIRE(lpw_name_read_file(path, &back) == LPW_OK);
  REQUIRE(lpw_name_length(back, &finite, &len) == LPW_OK);
  CHECK(len == 50);
  close(fd);
  std::remove(path);

  lpw_name_free(back);
  lpw_name_free(g);
  lpw_name_free(f);
  lpw_presentation_free(p);
}

TEST_CASE("delta and exponent estimate") {
  char* out = nullptr;
  REQUIRE(lpw_delta("2", "1", 30, &out) == LPW_OK);
  auto e = take_json(out);
  CHECK(e.contains("lo"));
  CHECK(lpw_delta("1", "1", 30, &out) == LPW_ERR_DOMAIN);

  lpw_presentation* p = nullptr;
  REQUIRE(lpw_presentation_standard(LPW_SPACE_LPN, 2, "3", &p) == LPW_OK);
  lpw_name* f = nullptr;
  REQUIRE(lpw_name_of_presentation(p, &f) == LPW_OK);
  REQUIRE(lpw_estimate_exponent(f, "1/4", 20000, &out) == LPW_OK);
  auto est = take_json(out);
  auto rat = [](const nlohmann::json& q) { return double(q[0].get<long long>()) / double(q[1].get<long long>()); };
  CHECK(rat(est["interval"]["lo"]) <= 3.0);
  CHECK(rat(est["interval"]["hi"]) >= 3.0);
  lpw_name_free(f);
  lpw_presentation_free(p);
}

TEST_CASE("orders, classification and isomorphism") {
  lpw_order* o = nullptr;
  REQUIRE(lpw_order_from_json("{\"kind\": \"rule\", \"rule\": \"eta_plus\", \"n\": 3}", &o) == LPW_OK);
  char* out = nullptr;
  REQUIRE(lpw_order_trace(o, 8, &out) == LPW_OK);
  auto tr = take_json(out);
  CHECK(tr["values"].size() == 8);
  lpw_presentation* s = nullptr;
  REQUIRE(lpw_order_to_space(o, "3", &s) == LPW_OK);
  int definite = 0;
  REQUIRE(lpw_classify(s, "3", 10000, &definite, &out) == LPW_OK);
  auto v = take_json(out);
  CHECK(definite == 1);
  CHECK(v["verdict"] == "LpN_plus_Lp01");
  CHECK(v["n"] == 2);

  lpw_presentation* m = nullptr;
  REQUIRE(lpw_presentation_from_json(
              "{\"space\": \"sum\", \"a\": {\"space\": \"lpn\", \"n\": 2}, \"b\": {\"space\": \"lp01\"}}", "3", &m) ==
          LPW_OK);
  lpw_iso iso = LPW_ISO_UNDETERMINED;
  REQUIRE(lpw_iso_check(s, m, "3", 10000, &iso, &out) == LPW_OK);
  take(out);
  CHECK(iso == LPW_ISOMORPHIC);
  CHECK(lpw_iso_check(s, m, "2", 100, &iso, &out) == LPW_ERR_EXPONENT_TWO);

  lpw_order* bad = nullptr;
  REQUIRE(lpw_order_from_json("{\"kind\": \"matrix\", \"matrix\": [[true, true], [true, true]]}", &bad) == LPW_OK);
  lpw_presentation* bs = nullptr;
  CHECK(lpw_order_to_space(bad, "3", &bs) == LPW_ERR_INVALID_ORDER);

  lpw_order_free(bad);
  lpw_presentation_free(m);
  lpw_presentation_free(s);
  lpw_order_free(o);
}

TEST_CASE("monitors") {
  lpw_presentation* p = nullptr;
  REQUIRE(lpw_presentation_standard(LPW_SPACE_LPN, 2, "3", &p) == LPW_OK);
  lpw_name *f = nullptr, *g = nullptr, *h = nullptr;
  REQUIRE(lpw_name_of_presentation(p, &f) == LPW_OK);
  REQUIRE(lpw_name_of_tree(p, 4, &g) == LPW_OK);
  REQUIRE(lpw_name_of_exponent("3", &h) == LPW_OK);
  int violation = 1;
  char* out = nullptr;
  REQUIRE(lpw_monitor(LPW_MONITOR_DISINT, f, g, h, 500, &violation, &out) == LPW_OK);
  auto v = take_json(out);
  CHECK(violation == 0);
  CHECK(v["status"] == "OkAtStage");
  CHECK(v["stage"] == 500);
  CHECK(lpw_monitor(LPW_MONITOR_DISINT, f, nullptr, h, 500, &violation, &out) == LPW_ERR_NULL_ARGUMENT);

  lpw_name* bad = nullptr;
  REQUIRE(lpw_name_parse("0 1\n", &bad) == LPW_OK);  // claims 1/2 < ||0|| < 1
  REQUIRE(lpw_monitor(LPW_MONITOR_BANACH, bad, nullptr, nullptr, 10, &violation, &out) == LPW_OK);
  v = take_json(out);
  CHECK(violation == 1);
  CHECK(v["status"] == "Violation");

  // Monitoring against the estimated interval of p keeps a genuine l^3_2 clean.
  REQUIRE(lpw_lebesgue_probe(f, 20000, &out) == LPW_OK);
  v = take_json(out);
  CHECK(v["budget_relative"] == true);
  CHECK(v["lspace"]["status"] == "OkAtStage");

  lpw_name_free(bad);
  lpw_name_free(h);
  lpw_name_free(g);
  lpw_name_free(f);
  lpw_presentation_free(p);
}
