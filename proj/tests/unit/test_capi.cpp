/*
 * Copyright (c) 2026 The srsd-bench Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "srsd/srsd.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  srsd_string_free(s);
  return out;
}

srsd_expr* parse(const char* text) {
  srsd_expr* e = nullptr;
  REQUIRE(srsd_expr_parse(text, &e) == SRSD_OK);
  return e;
}

}  // namespace

TEST_CASE("expression handles") {
  srsd_expr* e = parse("3 * x1 + x1 * 2");
  char* s = nullptr;
  CHECK(srsd_expr_to_prefix(e, &s) == SRSD_OK);
  CHECK(take(s) == "mul2 C X1");
  CHECK(srsd_expr_to_infix(e, &s) == SRSD_OK);
  CHECK(take(s) == "3 * x1 + x1 * 2");
  srsd_expr* c = nullptr;
  CHECK(srsd_expr_canonicalize(e, &c) == SRSD_OK);
  CHECK(srsd_expr_to_infix(c, &s) == SRSD_OK);
  CHECK(take(s) == "5 * x1");
  size_t n = 0;
  CHECK(srsd_expr_node_count(c, &n) == SRSD_OK);
  CHECK(n == 3);
  CHECK(srsd_expr_op_count(c, &n) == SRSD_OK);
  CHECK(n == 1);
  const double x[] = {2.0};
  double y = 0.0;
  CHECK(srsd_expr_evaluate(e, x, 1, &y) == SRSD_OK);
  CHECK(y == 10.0);
  srsd_expr_free(c);
  srsd_expr_free(e);
  srsd_expr_free(nullptr);
}

TEST_CASE("error codes and messages") {
  srsd_expr* e = nullptr;
  CHECK(srsd_expr_parse("x1 + * x1", &e) == SRSD_E_PARSE);
  CHECK(e == nullptr);
  CHECK(std::string(srsd_last_error()).find("position 5") != std::string::npos);
  CHECK(srsd_expr_parse(nullptr, &e) == SRSD_E_INVALID_ARGUMENT);

  srsd_expr* l = parse("log(x1)");
  const double x[] = {-1.0};
  double y = 0.0;
  CHECK(srsd_expr_evaluate(l, x, 1, &y) == SRSD_E_DOMAIN);
  CHECK(std::strlen(srsd_last_error()) > 0);
  CHECK(srsd_expr_evaluate(l, x, 0, &y) == SRSD_E_INVALID_ARGUMENT);
  srsd_expr_free(l);

  srsd_expr* ok = parse("x1");
  CHECK(srsd_expr_evaluate(ok, x, 1, &y) == SRSD_OK);
  CHECK(std::strlen(srsd_last_error()) == 0);
  srsd_expr_free(ok);

  CHECK(srsd_expr_read_file("/nonexistent/eq.txt", &e) == SRSD_E_IO);
  srsd_catalog* cat = nullptr;
  CHECK(srsd_catalog_builtin("trivial", &cat) == SRSD_E_INVALID_ARGUMENT);
  CHECK(srsd_catalog_load_file("/nonexistent.json", &cat) == SRSD_E_IO);
}

TEST_CASE("normalized edit distance and solutions") {
  srsd_expr* truth = parse("8.99e9 * x1 / x2^2");
  srsd_expr* pred = parse("8.99e9 * x2^(-2)");
  double ned = -1;
  size_t d = 0, size = 0;
  CHECK(srsd_ned(pred, truth, &ned, &d, &size) == SRSD_OK);
  CHECK(ned == doctest::Approx(1.0 / 6.0));
  CHECK(d == 1);
  CHECK(size == 6);
  int sol = -1;
  CHECK(srsd_is_symbolic_solution(pred, truth, &sol) == SRSD_OK);
  CHECK(sol == 0);
  srsd_expr* twice = parse("2 * (8.99e9 * x1 / x2^2)");
  CHECK(srsd_is_symbolic_solution(twice, truth, &sol) == SRSD_OK);
  CHECK(sol == 1);
  srsd_expr_free(twice);
  srsd_expr_free(pred);
  srsd_expr_free(truth);

  const double p[] = {1, 2, 4}, t[] = {1, 2, 3};
  double r2 = 0;
  CHECK(srsd_r_squared(p, t, 3, &r2) == SRSD_OK);
  CHECK(std::abs(r2 - 0.5) < 1e-12);
  const double flat[] = {1, 1, 1};
  CHECK(srsd_r_squared(p, flat, 3, &r2) == SRSD_E_DATA);
}

TEST_CASE("catalog handles") {
  srsd_catalog* all = nullptr;
  REQUIRE(srsd_catalog_builtin("all", &all) == SRSD_OK);
  CHECK(srsd_catalog_size(all) == 120);
  srsd_catalog_free(all);

  srsd_catalog* easy = nullptr;
  REQUIRE(srsd_catalog_builtin("easy", &easy) == SRSD_OK);
  CHECK(srsd_catalog_size(easy) == 30);
  const char* s = nullptr;
  CHECK(srsd_catalog_id(easy, 0, &s) == SRSD_OK);
  CHECK(std::string(s) == "I.12.1");
  CHECK(srsd_catalog_set(easy, 0, &s) == SRSD_OK);
  CHECK(std::string(s) == "easy");
  CHECK(srsd_catalog_formula(easy, 0, &s) == SRSD_OK);
  CHECK(std::string(s) == "mu * N_n");
  double range = 0;
  int has = 0;
  CHECK(srsd_catalog_domain_range(easy, 0, &range, &has) == SRSD_OK);
  CHECK(has == 1);
  CHECK(range == doctest::Approx(0.004364805));
  srsd_expr* e = nullptr;
  CHECK(srsd_catalog_true_expr(easy, 0, &e) == SRSD_OK);
  char* text = nullptr;
  CHECK(srsd_expr_to_prefix(e, &text) == SRSD_OK);
  CHECK(take(text) == "mul2 X1 X2");
  srsd_expr_free(e);
  CHECK(srsd_catalog_id(easy, 30, &s) == SRSD_E_INVALID_ARGUMENT);
  CHECK(srsd_catalog_save(easy, &text) == SRSD_OK);
  CHECK(take(text).rfind("[\n  {\n", 0) == 0);
  srsd_catalog_free(easy);
  CHECK(srsd_catalog_size(nullptr) == 0);
}

TEST_CASE("option defaults") {
  srsd_generate_options g;
  srsd_generate_options_init(&g);
  CHECK(std::string(g.set) == "easy");
  CHECK(g.rows == 10000);
  CHECK(g.ratios[0] == 0.8);
  srsd_eval_options e;
  srsd_eval_options_init(&e);
  CHECK(e.tau == 0.999);
  srsd_synth_options s;
  srsd_synth_options_init(&s);
  CHECK(s.k_lo == -8);
  CHECK(s.k_hi == 8);
  CHECK(s.alpha == 1.0);
  srsd_discover_options d;
  srsd_discover_options_init(&d);
  CHECK(d.restarts == 5);

  char* out = nullptr;
  g.out_dir = nullptr;
  CHECK(srsd_run_generate(&g, &out) == SRSD_E_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  CHECK(srsd_run_generate(nullptr, &out) == SRSD_E_INVALID_ARGUMENT);
}

TEST_CASE("complexity report") {
  srsd_complexity_options o;
  srsd_complexity_options_init(&o);
  o.set = "hard";
  char* out = nullptr;
  REQUIRE(srsd_run_complexity(&o, &out) == SRSD_OK);
  const std::string csv = take(out);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 51);
}
