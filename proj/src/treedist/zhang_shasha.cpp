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

#include <algorithm>
#include <vector>

#include "srsd/treedist.hpp"

namespace srsd::treedist {

using expr::Label;
using expr::SkeletonTree;

bool labels_match(const Label& a, const Label& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Label::Kind::Constant:
      return true;
    case Label::Kind::Variable:
      return a.index == b.index;
    case Label::Kind::Operator:
      return a.op == b.op;
  }
  return false;
}

namespace {

// Postorder-indexed view of a tree: labels, leftmost leaf descendants, keyroots.
struct Flat {
  std::vector<Label> labels;
  std::vector<std::size_t> lml;
  std::vector<std::size_t> keyroots;

  explicit Flat(const SkeletonTree& t) {
    visit(t);
    std::vector<bool> seen(labels.size() + 1, false);
    for (std::size_t i = labels.size(); i-- > 0;) {
      if (!seen[lml[i]]) {
        keyroots.push_back(i);
        seen[lml[i]] = true;
      }
    }
    std::reverse(keyroots.begin(), keyroots.end());
  }

  std::size_t visit(const SkeletonTree& t) {
    std::size_t leftmost = 0;
    bool first = true;
    for (const auto& c : t.children) {
      const std::size_t l = visit(c);
      if (first) leftmost = l;
      first = false;
    }
    const std::size_t me = labels.size();
    labels.push_back(t.label);
    lml.push_back(first ? me : leftmost);
    return lml.back();
  }
};

}  // namespace

std::size_t edit_distance(const SkeletonTree& a, const SkeletonTree& b, const EditCostModel& costs) {
  const Flat A(a), B(b);
  const std::size_t n = A.labels.size(), m = B.labels.size();
  std::vector<std::size_t> td(n * m, 0);
  std::vector<std::size_t> fd((n + 1) * (m + 1), 0);
  auto T = [&](std::size_t i, std::size_t j) -> std::size_t& { return td[i * m + j]; };

  for (std::size_t i : A.keyroots) {
    for (std::size_t j : B.keyroots) {
      const std::size_t li = A.lml[i], lj = B.lml[j];
      const std::size_t rows = i - li + 2, cols = j - lj + 2;
      auto F = [&](std::size_t x, std::size_t y) -> std::size_t& { return fd[x * cols + y]; };
      F(0, 0) = 0;
      for (std::size_t x = 1; x < rows; ++x) F(x, 0) = F(x - 1, 0) + costs.delete_cost;
      for (std::size_t y = 1; y < cols; ++y) F(0, y) = F(0, y - 1) + costs.insert_cost;
      for (std::size_t x = 1; x < rows; ++x) {
        const std::size_t ai = li + x - 1;
        for (std::size_t y = 1; y < cols; ++y) {
          const std::size_t bj = lj + y - 1;
          const std::size_t del = F(x - 1, y) + costs.delete_cost;
          const std::size_t ins = F(x, y - 1) + costs.insert_cost;
          if (A.lml[ai] == li && B.lml[bj] == lj) {
            const std::size_t ren =
                F(x - 1, y - 1) + (labels_match(A.labels[ai], B.labels[bj]) ? 0 : costs.rename_cost);
            F(x, y) = std::min({del, ins, ren});
            T(ai, bj) = F(x, y);
          } else {
            const std::size_t px = A.lml[ai] - li, py = B.lml[bj] - lj;
            F(x, y) = std::min({del, ins, F(px, py) + T(ai, bj)});
          }
        }
      }
    }
  }
  return T(n - 1, m - 1);
}

DistanceResult compare_skeletons(const SkeletonTree& pred, const SkeletonTree& truth) {
  DistanceResult r;
  r.distance = edit_distance(pred, truth);
  r.truth_size = truth.node_count();
  r.normalized = std::min(1.0, static_cast<double>(r.distance) / static_cast<double>(r.truth_size));
  return r;
}

double normalized_edit_distance(const SkeletonTree& pred, const SkeletonTree& truth) {
  return compare_skeletons(pred, truth).normalized;
}

DistanceResult compare_expressions(const expr::Expression& pred, const expr::Expression& truth) {
  return compare_skeletons(expr::skeletonize(expr::canonicalize(pred)), expr::skeletonize(expr::canonicalize(truth)));
}

}  // namespace srsd::treedist
