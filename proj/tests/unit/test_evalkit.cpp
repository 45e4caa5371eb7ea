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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "oracles.hpp"
#include "srsd/catalog.hpp"
#include "srsd/datagen.hpp"
#include "srsd/error.hpp"
#include "srsd/evalkit.hpp"
#include "srsd/treedist.hpp"

using namespace srsd::evalkit;
using srsd::catalog::Difficulty;
using srsd::catalog::load_builtin;
using srsd::expr::Expression;
using srsd::expr::Op;

namespace {

Expression P(std::string_view s) { return srsd::expr::parse(s, srsd::expr::indexed_variable_resolver()); }

srsd::datagen::Dataset table(std::vector<std::vector<double>> rows) {
  srsd::datagen::Dataset ds;
  for (std::size_t c = 0; c + 1 < rows[0].size(); ++c) ds.columns.push_back("x" + std::to_string(c + 1));
  ds.columns.push_back("y");
  for (const auto& r : rows) ds.values.insert(ds.values.end(), r.begin(), r.end());
  return ds;
}

EvalReport report(Difficulty set, std::optional<double> r2, bool solution, double ned) {
  EvalReport r;
  r.set = set;
  r.r_squared = r2;
  r.accuracy_hit = r2 && *r2 > kDefaultTau;
  r.symbolic_solution = solution;
  r.ned = ned;
  return r;
}

}  // namespace

TEST_CASE("r squared examples") {
  const std::vector<double> y{1, 2, 3};
  CHECK(*r_squared(y, y) == 1.0);
  CHECK(std::abs(*r_squared(std::vector<double>{2, 2, 2}, y)) < 1e-12);
  CHECK(std::abs(*r_squared(std::vector<double>{1, 2, 4}, y) - 0.5) < 1e-12);
  CHECK_FALSE(r_squared(std::vector<double>{1, 2, 3}, std::vector<double>{5, 5, 5}).has_value());
  CHECK_THROWS_AS(r_squared(std::vector<double>{1}, y), srsd::InvalidArgument);
}

TEST_CASE("r squared agrees with a two-pass reference") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(3.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> p(37), y(37);
    for (auto& v : y) v = n(rng);
    for (std::size_t i = 0; i < y.size(); ++i) p[i] = y[i] + 0.3 * n(rng);
    long double my = 0;
    for (double v : y) my += v;
    my /= y.size();
    long double sse = 0, sst = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      sse += (p[i] - (long double)y[i]) * (p[i] - (long double)y[i]);
      sst += (y[i] - my) * (y[i] - my);
    }
    CHECK(*r_squared(p, y) == doctest::Approx(static_cast<double>(1 - sse / sst)).epsilon(1e-12));
  }
}

TEST_CASE("symbolic solution") {
  const auto f = P("8.99e9 * x1 * x2 / x3^2");
  CHECK(is_symbolic_solution(f, f));
  CHECK(is_symbolic_solution(P("2 * (8.99e9 * x1 * x2 / x3^2)"), f));
  CHECK(is_symbolic_solution(P("8.99e9 * x1 * x2 / x3^2 + 7"), f));
  CHECK(is_symbolic_solution(P("x1 * x2 / x3^2"), f));
  CHECK_FALSE(is_symbolic_solution(P("8.99e9 * x1 * x2 / x3^2 + x1"), f));
  CHECK_FALSE(is_symbolic_solution(P("x1 * x2 / x3"), f));
  CHECK_FALSE(is_symbolic_solution(P("0 * x1"), f));
  CHECK(is_symbolic_solution(P("sin(x1) + 3"), P("sin(x1) - 1")));
  CHECK(is_symbolic_solution(P("x2 * x1 * 3"), P("x1 * x2")));
}

TEST_CASE("scalar and offset perturbations stay solutions with small distance") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> c(0.5, 5.0);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    const auto f = srsd::testing::random_expression(rng, 4);
    if (!srsd::expr::canonicalize(f).has_variables()) continue;
    const auto scaled = Expression::op(Op::Mul, {Expression::constant(c(rng)), f});
    const auto shifted = Expression::op(Op::Add, {f, Expression::constant(c(rng))});
    for (const auto& g : {scaled, shifted}) {
      CHECK(is_symbolic_solution(g, f));
      const auto d = srsd::treedist::compare_expressions(g, f);
      CHECK(d.distance <= 2);
    }
    ++checked;
  }
  CHECK(checked > 200);
}

TEST_CASE("identical constant-free skeletons are solutions") {
  std::mt19937_64 rng(22);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 60; ++t) {
    const auto f = srsd::expr::canonicalize(srsd::testing::random_expression(rng, 3));
    const auto sk = srsd::expr::skeletonize(f);
    if (!srsd::expr::constant_table(f).empty() || !f.has_variables()) continue;
    const auto g = srsd::expr::from_skeleton(sk, {});
    CHECK(srsd::treedist::compare_expressions(g, f).normalized == 0.0);
    CHECK(is_symbolic_solution(g, f));
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("selection score") {
  CHECK(selection_score(std::vector<double>{2, 4}, std::vector<double>{1, 4}).score == 0.5);
  const auto skip = selection_score(std::vector<double>{5, 2}, std::vector<double>{0.0, 1.0});
  CHECK(skip.score == 1.0);
  CHECK(skip.rows_used == 1);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto some = selection_score(std::vector<double>{nan, 2, 3}, std::vector<double>{1, 2, 3});
  CHECK(some.score == 0.0);
  CHECK(some.faults == 1);
  CHECK(std::isinf(selection_score(std::vector<double>{nan, nan, 3}, std::vector<double>{1, 2, 3}).score));

  const auto ds = table({{1, 2}, {2, 4}, {-1, -2}});
  CHECK(selection_score(P("2 * x1"), ds).score == 0.0);
  CHECK(selection_score(P("x1"), ds).score == doctest::Approx(0.25));
  CHECK(std::isinf(selection_score(P("log(x1) - 1 + x1"), table({{-1, 1}, {-2, 1}, {1, 1}})).score));
}

TEST_CASE("select best") {
  const auto& spec = load_builtin("I.12.1");
  const auto val = srsd::datagen::sample(spec, 200, 2);
  const auto& truth = spec.raw_expression();
  const std::vector<Expression> c{P("x1 * x2 + 1"), truth, P("x1")};
  CHECK(select_best(c, val).index == 1);

  std::vector<Expression> rev(c.rbegin(), c.rend());
  CHECK(select_best(rev, val).index == 1);

  const std::vector<Expression> tie{P("abs(x1) * x2"), P("x2 * x1"), P("x1 * x2")};
  CHECK(select_best(tie, val).index == 1);

  const std::vector<Expression> one{P("log(-x1)")};
  CHECK(select_best(one, val).index == 0);
  const std::vector<Expression> none{P("log(-x1)"), P("sqrt(-x2)")};
  CHECK_THROWS_AS(select_best(none, val), srsd::DataError);
}

TEST_CASE("evaluate problem") {
  const auto& spec = load_builtin("I.12.4");
  const auto test = srsd::datagen::sample(spec, 300, 4);
  const auto val = srsd::datagen::sample(spec, 100, 5);
  const auto exact = evaluate_problem(spec.raw_expression(), spec, test, kDefaultTau, &val);
  CHECK(exact.problem_id == "I.12.4");
  CHECK(exact.set == Difficulty::Easy);
  CHECK(exact.ned == 0.0);
  CHECK(exact.edit_distance == 0);
  CHECK(exact.symbolic_solution);
  CHECK(*exact.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact.accuracy_hit);
  CHECK(*exact.selection_score < 1e-20);

  const auto st = evaluate_problem(P("8.99e9 * x2^(-2)"), spec, test);
  CHECK(st.ned == doctest::Approx(1.0 / 6.0));
  CHECK(st.truth_size == 6);
  CHECK_FALSE(st.symbolic_solution);
  CHECK_FALSE(st.selection_score.has_value());

  const auto faulty = evaluate_problem(P("log(x1)"), spec, test);
  CHECK(faulty.prediction_faults > 0);
  CHECK_FALSE(faulty.r_squared.has_value());
  CHECK_FALSE(faulty.accuracy_hit);
  CHECK(faulty.ned >= 0.0);
  CHECK(faulty.ned <= 1.0);
}

TEST_CASE("rates") {
  std::vector<EvalReport> r;
  for (int i = 0; i < 30; ++i) r.push_back(report(Difficulty::Easy, i < 3 ? 1.0 : 0.5, i < 6, i < 6 ? 0.0 : 1.0));
  CHECK(accuracy_rate(r) == doctest::Approx(0.1));
  CHECK(solution_rate(r) == doctest::Approx(0.2));
  CHECK(mean_ned(r) == doctest::Approx(0.8));
  CHECK_THROWS_AS(accuracy_rate(std::vector<EvalReport>{}), srsd::InvalidArgument);

  const double before = accuracy_rate(r), sol = solution_rate(r);
  r.push_back(report(Difficulty::Easy, std::nullopt, false, 1.0));
  CHECK(accuracy_rate(r) <= before);
  CHECK(solution_rate(r) <= sol);

  std::vector<EvalReport> perfect(4, report(Difficulty::Hard, 1.0, true, 0.0));
  CHECK(accuracy_rate(perfect) == 1.0);
  CHECK(accuracy_rate(perfect, 1.0) == 0.0);
}

TEST_CASE("summary and report") {
  std::vector<EvalReport> r{report(Difficulty::Hard, 1.0, true, 0.0), report(Difficulty::Easy, 0.2, false, 0.5),
                            report(Difficulty::Easy, 1.0, true, 0.0)};
  r[0].problem_id = "b";
  r[1].problem_id = "a";
  r[2].problem_id = "c";
  const auto s = summarize(r);
  REQUIRE(s.sets.size() == 2);
  CHECK(s.sets[0].set == Difficulty::Easy);
  CHECK(s.sets[0].problems == 2);
  CHECK(s.sets[0].accuracy_rate == 0.5);
  CHECK(s.sets[1].set == Difficulty::Hard);
  CHECK(s.overall.problems == 3);
  CHECK(s.overall.mean_ned == doctest::Approx(0.5 / 3));
  CHECK_THROWS(summarize(std::vector<EvalReport>{}));

  const std::string text = report_json(r, s);
  CHECK(text == report_json(r, s));
  const auto j = nlohmann::json::parse(text);
  CHECK(j["problems"].size() == 3);
  CHECK(j["sets"]["easy"]["problems"] == 2);
  CHECK(j["overall"]["solution_rate"].get<double>() == doctest::Approx(2.0 / 3));
  CHECK(j["tau"] == kDefaultTau);
}
