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
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "srsd/error.hpp"
#include "srsd/expr.hpp"

using namespace srsd::expr;
using srsd::testing::random_expression;

namespace {

Expression C(double v) { return Expression::constant(v); }
Expression X(int i) { return Expression::variable(i); }
Expression O(Op op, std::vector<Expression> ch) { return Expression::op(op, std::move(ch)); }

Expression P(std::string_view text) { return parse(text, indexed_variable_resolver()); }

}  // namespace

TEST_CASE("parse: named variables") {
  std::vector<std::string> names{"mu", "Nn"};
  CHECK(parse("mu * Nn", names) == O(Op::Mul, {X(0), X(1)}));
  std::vector<std::string> one{"x"};
  CHECK(parse("x", one) == X(0));
}

TEST_CASE("parse: named constants and pi fold to literals") {
  std::vector<std::string> names{"q1", "r"};
  std::map<std::string, double, std::less<>> consts{{"epsilon", 8.854e-12}};
  Expression e = parse("q1/(4*pi*epsilon*r^2)", names, consts);
  REQUIRE(e.is_op(Op::Div));
  const auto& den = e.child(1);
  REQUIRE(den.is_op(Op::Mul));
  CHECK(den.child(1).value() == doctest::Approx(std::numbers::pi));
  CHECK(den.child(2).value() == 8.854e-12);
}

TEST_CASE("parse: precedence and associativity") {
  CHECK(P("-x1^2") == O(Op::Neg, {O(Op::Pow, {X(0), C(2)})}));
  CHECK(P("x1^-2") == O(Op::Pow, {X(0), C(-2)}));
  CHECK(P("x1**2") == O(Op::Pow, {X(0), C(2)}));
  CHECK(P("x1^2^3") == O(Op::Pow, {X(0), O(Op::Pow, {C(2), C(3)})}));
  CHECK(P("x1 - x2") == O(Op::Add, {X(0), O(Op::Neg, {X(1)})}));
  CHECK(P("x1/x2/x3") == O(Op::Div, {O(Op::Div, {X(0), X(1)}), X(2)}));
  CHECK(P("2.5e-3*x1") == O(Op::Mul, {C(2.5e-3), X(0)}));
  CHECK(P("sqrt(x1)") == O(Op::Sqrt, {X(0)}));
}

TEST_CASE("parse: errors") {
  std::vector<std::string> names{"x"};
  CHECK_THROWS_AS(parse("x +", names), srsd::ParseError);
  CHECK_THROWS_AS(parse("y", names), srsd::ParseError);
  CHECK_THROWS_AS(parse("sin(x, x)", names), srsd::ParseError);
  CHECK_THROWS_AS(parse("foo(x)", names), srsd::ParseError);
  CHECK_THROWS_AS(parse("(x", names), srsd::ParseError);
  CHECK_THROWS_AS(parse("", names), srsd::ParseError);
  try {
    parse("x + * x", names);
    FAIL("expected a parse error");
  } catch (const srsd::ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("to_infix round-trips through parse") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Expression e = random_expression(rng, 4);
    CHECK(P(to_infix(e)) == e);
  }
}

TEST_CASE("evaluate") {
  const double row[] = {0.5, 0.2};
  CHECK(evaluate(O(Op::Mul, {X(0), X(1)}), row) == doctest::Approx(0.1));
  const double two[] = {2.0};
  CHECK(evaluate(O(Op::Pow, {X(0), C(-2)}), two) == 0.25);
  const double zero[] = {0.0};
  CHECK_THROWS_AS(evaluate(O(Op::Log, {X(0)}), zero), srsd::DomainFault);
  CHECK_FALSE(try_evaluate(O(Op::Div, {C(1), X(0)}), zero).has_value());
  CHECK_FALSE(try_evaluate(O(Op::Pow, {X(0), C(-1)}), zero).has_value());
  const double big[] = {1000.0};
  CHECK_FALSE(try_evaluate(O(Op::Exp, {X(0)}), big).has_value());
  try {
    evaluate(O(Op::Add, {X(0), O(Op::Mul, {C(2), O(Op::Log, {X(0)})})}), zero);
    FAIL("expected a domain fault");
  } catch (const srsd::DomainFault& f) {
    CHECK(f.path() == "/1/1");
  }
  CHECK_THROWS_AS(evaluate(X(3), two), srsd::InvalidArgument);
}

TEST_CASE("batch evaluation agrees with scalar evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 300; ++k) {
    Expression e = random_expression(rng, 4);
    std::vector<double> c0(20), c1(20), c2(20);
    for (int r = 0; r < 20; ++r) c0[r] = u(rng), c1[r] = u(rng), c2[r] = r == 3 ? 0.0 : u(rng);
    const double* cols[] = {c0.data(), c1.data(), c2.data()};
    auto batch = evaluate_columns(e, cols, 20);
    for (int r = 0; r < 20; ++r) {
      const double row[] = {c0[r], c1[r], c2[r]};
      auto s = try_evaluate(e, row);
      if (s) {
        CHECK(batch[r] == *s);
      } else {
        CHECK(std::isnan(batch[r]));
      }
    }
  }
}

TEST_CASE("canonicalize: three spellings of 3x") {
  Expression a = canonicalize(P("x1 + x1 + x1"));
  Expression b = canonicalize(P("4*x1 - x1"));
  Expression c = canonicalize(P("x1 + 2*x1"));
  CHECK(a == O(Op::Mul, {C(3), X(0)}));
  CHECK(a == b);
  CHECK(b == c);
}

TEST_CASE("canonicalize: rule examples") {
  CHECK(canonicalize(O(Op::Add, {X(0), C(0)})) == X(0));
  CHECK(canonicalize(O(Op::Div, {X(0), O(Op::Pow, {X(1), C(2)})})) == O(Op::Mul, {X(0), O(Op::Pow, {X(1), C(-2)})}));
  CHECK(canonicalize(P("x1*0")) == C(0));
  CHECK(canonicalize(P("x1^1")) == X(0));
  CHECK(canonicalize(P("x1*1")) == X(0));
  CHECK(canonicalize(P("x1*x1^2")) == O(Op::Pow, {X(0), C(3)}));
  CHECK(canonicalize(P("x1/x1")) == C(1));
  CHECK(canonicalize(P("sqrt(x1)")) == O(Op::Pow, {X(0), C(0.5)}));
  CHECK(canonicalize(P("-x1")) == O(Op::Mul, {C(-1), X(0)}));
  CHECK(canonicalize(P("2*pi")).value() == doctest::Approx(2 * std::numbers::pi));
  CHECK(canonicalize(P("x1 - x1")) == C(0));
  CHECK(canonicalize(P("(x1*x2)^2")) == O(Op::Mul, {O(Op::Pow, {X(0), C(2)}), O(Op::Pow, {X(1), C(2)})}));
  CHECK(canonicalize(P("(4*x1)^0.5")) == O(Op::Mul, {C(2), O(Op::Pow, {X(0), C(0.5)})}));
}

TEST_CASE("canonicalize: physical constants fold into one coefficient") {
  std::vector<std::string> names{"q1", "r"};
  std::map<std::string, double, std::less<>> consts{{"epsilon", 8.854e-12}};
  Expression e = canonicalize(parse("q1/(4*pi*epsilon*r^2)", names, consts));
  REQUIRE(e.is_op(Op::Mul));
  REQUIRE(e.children().size() == 3);
  CHECK(e.child(0).value() == doctest::Approx(1.0 / (4 * std::numbers::pi * 8.854e-12)));
  CHECK(e.child(1) == X(0));
  CHECK(e.child(2) == O(Op::Pow, {X(1), C(-2)}));
}

TEST_CASE("canonicalize: commutation") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Expression a = random_expression(rng, 3), b = random_expression(rng, 3);
    CHECK(canonicalize(O(Op::Add, {a, b})) == canonicalize(O(Op::Add, {b, a})));
    CHECK(canonicalize(O(Op::Mul, {a, b})) == canonicalize(O(Op::Mul, {b, a})));
  }
}

TEST_CASE("canonicalize: idempotent, canonical shape, semantics preserved") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  long checked = 0, ill_conditioned = 0;
  for (int i = 0; i < 1000; ++i) {
    Expression e = random_expression(rng, 5);
    Expression c = canonicalize(e);
    CHECK(canonicalize(c) == c);
    CHECK(is_canonical_shape(c));
    for (int k = 0; k < 100; ++k) {
      const double row[] = {u(rng), u(rng), u(rng)};
      auto ve = try_evaluate(e, row);
      auto vc = try_evaluate(c, row);
      if (!ve || !vc) continue;
      if (!srsd::testing::well_conditioned(e, row, *ve)) {
        ++ill_conditioned;
        continue;
      }
      ++checked;
      CHECK(std::abs(*vc - *ve) <= 1e-9 * std::max(1.0, std::abs(*ve)));
    }
  }
  CHECK(checked > 20 * ill_conditioned);
}

TEST_CASE("skeletonize and count_ops") {
  CHECK(to_string(skeletonize(O(Op::Mul, {C(3), X(0)}))) == "mul(C1, X1)");
  Expression e = O(Op::Mul, {C(2), X(0), O(Op::Pow, {X(1), C(-2)})});
  SkeletonTree s = skeletonize(e);
  CHECK(to_string(s) == "mul(C1, X1, pow(X2, C2))");
  CHECK(s.node_count() == 6);
  CHECK(count_ops(e) == 2);
  CHECK(count_ops(C(3)) == 0);
  CHECK(count_ops(O(Op::Mul, {C(1.5), X(0), X(1)})) == 1);
  CHECK(from_skeleton(s, constant_table(e)) == e);
}

TEST_CASE("omega = 4 pi mu B / h skeleton") {
  std::vector<std::string> names{"mu", "B"};
  std::map<std::string, double, std::less<>> consts{{"h", 6.626e-34}};
  Expression e = canonicalize(parse("4*pi*mu*B/h", names, consts));
  CHECK(to_string(skeletonize(e)) == "mul(C1, X1, X2)");
}

TEST_CASE("preorder tokens") {
  SkeletonTree s = skeletonize(O(Op::Mul, {C(1), X(0), X(1)}));
  TokenSequence toks = to_preorder(s);
  CHECK(to_prefix_text(toks) == "mul3 C X1 X2");
  CHECK(from_preorder(toks) == s);
  CHECK(from_preorder(parse_prefix_text("mul3 C X1 X2")) == s);
  CHECK_THROWS_AS(from_preorder(TokenSequence{}), srsd::DecodeError);
  CHECK_THROWS_AS(from_preorder(parse_prefix_text("add2 X1")), srsd::DecodeError);
  CHECK_THROWS_AS(from_preorder(parse_prefix_text("sin X1 X2")), srsd::DecodeError);
  CHECK_THROWS_AS(parse_token("add"), srsd::DecodeError);
  CHECK_THROWS_AS(parse_token("frob"), srsd::DecodeError);
  CHECK_THROWS_AS(parse_token("X0"), srsd::DecodeError);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    SkeletonTree t = skeletonize(canonicalize(random_expression(rng, 5)));
    CHECK(from_preorder(to_preorder(t)) == t);
    CHECK(from_preorder(parse_prefix_text(to_prefix_text(to_preorder(t)))) == t);
  }
}

TEST_CASE("expression construction guards") {
  CHECK_THROWS_AS(Expression::constant(std::nan("")), srsd::InvalidArgument);
  CHECK_THROWS_AS(O(Op::Add, {X(0)}), srsd::InvalidArgument);
  CHECK_THROWS_AS(O(Op::Pow, {X(0)}), srsd::InvalidArgument);
  CHECK_THROWS_AS(Expression::variable(-1), srsd::InvalidArgument);
}
