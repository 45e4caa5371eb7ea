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

#include <random>

#include "oracles.hpp"
#include "srsd/treedist.hpp"

using namespace srsd::expr;
using namespace srsd::treedist;
using srsd::testing::BruteForceTed;
using srsd::testing::random_skeleton;

namespace {

SkeletonTree T(std::string_view prefix) { return from_preorder(parse_prefix_text(prefix)); }

}  // namespace

TEST_CASE("edit distance basics") {
  CHECK(edit_distance(T("mul3 C X1 X2"), T("mul3 C X1 X2")) == 0);
  CHECK(edit_distance(T("mul2 X1 X2"), T("mul3 C X1 X2")) == 1);
  CHECK(edit_distance(T("X1"), T("X2")) == 1);
  CHECK(edit_distance(T("C"), T("C")) == 0);
  CHECK(BruteForceTed::distance(T("mul2 X1 X2"), T("mul3 C X1 X2")) == 1);
}

TEST_CASE("normalized distance uses the truth size") {
  const auto truth = T("mul3 C X1 pow X2 C");
  CHECK(normalized_edit_distance(T("mul2 C pow X2 C"), truth) == doctest::Approx(1.0 / 6.0));
  CHECK(normalized_edit_distance(T("mul2 X1 X2"), T("mul3 C X1 X2")) == doctest::Approx(0.25));
  CHECK(normalized_edit_distance(T("mul3 C X1 X2"), T("mul3 C X1 X2")) == 0.0);
  CHECK(normalized_edit_distance(T("add3 sin X1 cos X2 exp mul2 X1 X2"), T("X1")) == 1.0);
  auto r = compare_skeletons(T("X1"), T("add3 sin X1 cos X2 exp mul2 X1 X2"));
  CHECK(r.truth_size == 9);
  CHECK(r.distance == 8);
}

TEST_CASE("constant display index does not matter") {
  SkeletonTree a = T("add2 C mul2 C X1");
  SkeletonTree b = a;
  std::swap(b.children[0].label.index, b.children[1].children[0].label.index);
  CHECK(edit_distance(a, b) == 0);
}

TEST_CASE("Zhang-Shasha matches brute force on random small trees") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(1, 7);
  int mismatches = 0;
  for (int i = 0; i < 400; ++i) {
    auto a = random_skeleton(rng, size(rng));
    auto b = random_skeleton(rng, size(rng));
    if (edit_distance(a, b) != BruteForceTed::distance(a, b)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("metric properties") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> size(1, 9);
  for (int i = 0; i < 300; ++i) {
    auto a = random_skeleton(rng, size(rng));
    auto b = random_skeleton(rng, size(rng));
    auto c = random_skeleton(rng, size(rng));
    CHECK(edit_distance(a, a) == 0);
    CHECK(edit_distance(a, b) == edit_distance(b, a));
    CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
    const double n = normalized_edit_distance(a, b);
    CHECK(n >= 0.0);
    CHECK(n <= 1.0);
    CHECK((n == 0.0) == (edit_distance(a, b) == 0));
  }
}
