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
#include <set>

#include "oracles.hpp"
#include "srsd/catalog.hpp"
#include "srsd/error.hpp"
#include "srsd/synthgen.hpp"
#include "srsd/treedist.hpp"

using namespace srsd::synthgen;
using namespace srsd::expr;
using srsd::catalog::builtin;
using srsd::catalog::builtin_set;
using srsd::catalog::Difficulty;

namespace {

TokenSequence S(std::string_view s) { return parse_prefix_text(s); }

const BigramModel& catalog_model() {
  static const BigramModel m = train_bigram(skeleton_corpus(builtin()));
  return m;
}

}  // namespace

TEST_CASE("bigram conditionals are proper and positive") {
  const auto& m = catalog_model();
  const std::size_t v = m.vocabulary().size();
  CHECK(v > 10);
  for (std::size_t ctx = 0; ctx <= m.start_context(); ++ctx) {
    const auto d = m.distribution(ctx);
    double sum = 0.0;
    for (double p : d) {
      CHECK(p > 0.0);
      sum += p;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("bigram counts") {
  const std::vector<TokenSequence> corpus{S("mul2 X1 X2"), S("mul2 X1 sin X1")};
  const auto m = train_bigram(corpus, 0.0);
  const auto mul = m.index_of(S("mul2 X1 X2")[0]);
  const auto x1 = m.index_of(S("X1")[0]);
  const auto x2 = m.index_of(S("X2")[0]);
  const auto sin = m.index_of(S("sin X1")[0]);
  CHECK(m.probability(m.start_context(), mul) == 1.0);
  CHECK(m.probability(mul, x1) == 1.0);
  CHECK(m.probability(x1, x2) == 0.5);
  CHECK(m.probability(x1, sin) == 0.5);
  CHECK(m.probability(x2, x1) == doctest::Approx(1.0 / 4));
  CHECK(m.probability(mul, x2) == 0.0);

  const auto s = train_bigram(corpus, 1.0);
  const double v = static_cast<double>(s.vocabulary().size());
  CHECK(s.probability(x1, x2) == doctest::Approx(2.0 / (2.0 + v)));
  CHECK(s.probability(mul, x2) == doctest::Approx(1.0 / (2.0 + v)));

  CHECK(m.index_of(S("cos X1")[0]) == m.vocabulary().size());
  CHECK_THROWS_AS(train_bigram(std::vector<TokenSequence>{}), srsd::InvalidArgument);
  CHECK_THROWS_AS(train_bigram(corpus, -1.0), srsd::InvalidArgument);
}

TEST_CASE("single-sequence corpus") {
  const std::vector<TokenSequence> corpus{S("add2 mul2 C X1 exp X2")};
  const auto exact = train_bigram(corpus, 0.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    CHECK(to_prefix_text(sample_sequence(exact, seed).tokens) == "add2 mul2 C X1 exp X2");

  const auto smooth = train_bigram(corpus, 1.0);
  const double best = smooth.log_likelihood(corpus[0]);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto t = sample_sequence(smooth, seed).tokens;
    if (t.size() == corpus[0].size() && to_prefix_text(t) != to_prefix_text(corpus[0]))
      CHECK(smooth.log_likelihood(t) < best);
  }
}

TEST_CASE("1000 sampled equations are valid and not constant") {
  const auto& m = catalog_model();
  SampleOptions opt;
  std::set<std::string> distinct;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto s = sample_sequence(m, seed, opt);
    CHECK(s.tokens.size() <= opt.max_tokens);
    const auto tree = from_preorder(s.tokens);
    CHECK(tree.node_count() == s.tokens.size());
    CHECK_FALSE(canonicalize(s.expression).is_constant());
    std::set<int> vars;
    for (const auto& t : s.tokens)
      if (t.label.kind == Label::Kind::Variable) vars.insert(t.label.index);
    CHECK(*vars.rbegin() == static_cast<int>(vars.size()));
    for (double c : constant_table(s.expression)) {
      CHECK(c >= 0.1 * (1 - 1e-12));
      CHECK(c <= 10.0 * (1 + 1e-12));
    }
    distinct.insert(to_prefix_text(s.tokens));
  }
  CHECK(distinct.size() > 300);
}

TEST_CASE("sampling is deterministic and honors the token budget") {
  const auto& m = catalog_model();
  CHECK(to_infix(sample_equation(m, 30, 5)) == to_infix(sample_equation(m, 30, 5)));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto e = sample_equation(m, 1, seed);
    CHECK(e.kind() == NodeKind::Variable);
    SampleOptions o;
    o.max_tokens = 4;
    CHECK(sample_sequence(m, seed, o).tokens.size() <= 4);
  }
  SampleOptions zero;
  zero.max_tokens = 0;
  CHECK_THROWS_AS(sample_sequence(m, 1, zero), srsd::InvalidArgument);
}

TEST_CASE("range assignment") {
  const auto e = parse("x1 * x2 + x3", indexed_variable_resolver());
  std::vector<int> k;
  const auto spec = assign_ranges(e, "S1", 7, {}, &k);
  REQUIRE(k.size() == 3);
  CHECK(spec.set() == Difficulty::Synthetic);
  CHECK(spec.sampled_names() == std::vector<std::string>{"x1", "x2", "x3"});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(k[i] >= -8);
    CHECK(k[i] <= 8);
    const auto& d = spec.variables()[i].dist;
    CHECK(d.kind == srsd::catalog::DistKind::LogUniform);
    CHECK(d.lo == doctest::Approx(std::pow(10.0, k[i] - 1)));
    CHECK(d.hi == doctest::Approx(std::pow(10.0, k[i] + 1)));
    CHECK(spec.variables()[i].sign == srsd::catalog::Sign::Positive);
  }
  CHECK(canonicalize(spec.raw_expression()) == canonicalize(e));

  const auto zero = assign_ranges(e, "S2", 1, {0, 0});
  for (const auto& v : zero.variables()) {
    CHECK(v.dist.lo == doctest::Approx(0.1));
    CHECK(v.dist.hi == doctest::Approx(10.0));
  }

  int differ = 0;
  std::set<int> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::vector<int> kk;
    assign_ranges(e, "S", seed, {}, &kk);
    differ += kk[0] != kk[1];
    seen.insert(kk.begin(), kk.end());
  }
  CHECK(differ > 150);
  CHECK(seen.size() == 17);

  std::vector<std::vector<int>> ks;
  const auto sets = assign_range_sets(e, "S9", 10, 3, {}, &ks);
  CHECK(sets.size() == 10);
  CHECK(ks.size() == 10);
  CHECK(sets[0].id() != sets[1].id());
  CHECK_THROWS_AS(assign_range_sets(e, "S9", 11, 3), srsd::InvalidArgument);
  CHECK_THROWS_AS(assign_ranges(parse("2", indexed_variable_resolver()), "c", 1), srsd::InvalidArgument);
}

TEST_CASE("interval IoU") {
  CHECK(domain_iou({0, 2}, {1, 3}) == doctest::Approx(1.0 / 3));
  CHECK(domain_iou({0, 1}, {0, 1}) == 1.0);
  CHECK(domain_iou({0, 1}, {2, 3}) == 0.0);
  CHECK(domain_iou({0, 1}, {1, 2}) == 0.0);
  CHECK(domain_iou({1, 1}, {1, 1}) == 1.0);
  CHECK(domain_iou({1, 1}, {2, 2}) == 0.0);
  CHECK(domain_iou({0, 4}, {1, 2}) == doctest::Approx(0.25));
  CHECK_THROWS_AS(domain_iou({2, 1}, {0, 1}), srsd::InvalidArgument);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int t = 0; t < 1000; ++t) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    const Interval x{std::min(a, b), std::max(a, b)}, y{std::min(c, d), std::max(c, d)};
    const double i = domain_iou(x, y);
    CHECK(i == domain_iou(y, x));
    CHECK(i >= 0.0);
    CHECK(i <= 1.0);
    CHECK(domain_iou(x, x) == 1.0);
  }
}

TEST_CASE("leakage report") {
  std::vector<LeakageItem> catalog;
  for (const auto& s : builtin_set(Difficulty::Easy)) {
    std::vector<Interval> r;
    for (const auto* v : s.sampled()) r.push_back({v->dist.lo, v->dist.hi});
    catalog.push_back({s.id(), s.true_expression(), r});
  }
  const auto same = leakage_report(catalog, catalog);
  CHECK(same.mean_iou == 1.0);
  CHECK(same.pairs_compared == catalog.size() * catalog.size());
  CHECK(same.targets.size() == catalog.size());
  for (const auto& t : same.targets) CHECK(t.matches >= 1);
  std::size_t per_variable = 0;
  for (const auto& p : same.matched_pairs) per_variable += p.ious.size();
  CHECK(same.iou_evaluations == per_variable);

  std::vector<LeakageItem> disjoint;
  for (int i = 0; i < 5; ++i) {
    std::string f = "x1";
    for (int j = 0; j <= i; ++j) f = "tanh(" + f + ")";
    disjoint.push_back({"D" + std::to_string(i), parse(f, indexed_variable_resolver()), {{0.0, 1.0}}});
  }
  const auto none = leakage_report(disjoint, catalog);
  CHECK(none.mean_iou == 0.0);
  CHECK(none.matched_pairs.empty());
  CHECK(none.iou_evaluations == 0);
  CHECK(none.pairs_compared == 5 * catalog.size());

  // A shifted copy keeps the skeleton, so IoU is computed and drops below 1.
  std::vector<LeakageItem> shifted{catalog[0]};
  for (auto& r : shifted[0].ranges) r = {r.first * 10, r.second * 10};
  const auto part = leakage_report(shifted, std::span(catalog).first(1));
  CHECK(part.matched_pairs.size() == 1);
  CHECK(part.iou_evaluations == shifted[0].ranges.size());
  CHECK(part.mean_iou > 0.0);
  CHECK(part.mean_iou < 1.0);

  CHECK_THROWS_AS(leakage_report({}, catalog), srsd::InvalidArgument);
}
