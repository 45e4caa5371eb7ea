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

#ifndef SRSD_TREEDIST_HPP
#define SRSD_TREEDIST_HPP

#include <cstddef>

#include "srsd/expr.hpp"

namespace srsd::treedist {

/// Unit costs by default. Labels match when they are equal, except that every
/// constant matches every other constant regardless of display index.
struct EditCostModel {
  std::size_t insert_cost = 1;
  std::size_t delete_cost = 1;
  std::size_t rename_cost = 1;
};

bool labels_match(const expr::Label& a, const expr::Label& b);

/// Zhang-Shasha ordered tree edit distance.
std::size_t edit_distance(const expr::SkeletonTree& a, const expr::SkeletonTree& b, const EditCostModel& costs = {});

struct DistanceResult {
  std::size_t distance = 0;
  std::size_t truth_size = 1;
  /// min(1, distance / truth_size)
  double normalized = 0.0;
};

/// Normalization always uses the truth tree's node count.
DistanceResult compare_skeletons(const expr::SkeletonTree& pred, const expr::SkeletonTree& truth);
double normalized_edit_distance(const expr::SkeletonTree& pred, const expr::SkeletonTree& truth);

/// Canonicalizes and skeletonizes both expressions, then compares them.
DistanceResult compare_expressions(const expr::Expression& pred, const expr::Expression& truth);

}  // namespace srsd::treedist

#endif  // SRSD_TREEDIST_HPP
