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

#ifndef SRSD_GP_HPP
#define SRSD_GP_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "srsd/datagen.hpp"
#include "srsd/expr.hpp"

namespace srsd::gp {

struct GPConfig {
  std::size_t population_size = 500;
  std::size_t generations = 20;
  std::size_t tournament_size = 20;
  double p_crossover = 0.7;
  double p_subtree_mutation = 0.1;
  double p_point_mutation = 0.1;
  /// Per-node replacement chance inside a point mutation.
  double p_point_replace = 0.05;
  std::size_t init_depth_lo = 2;
  std::size_t init_depth_hi = 4;
  std::size_t max_depth = 6;
  double const_lo = -1.0;
  double const_hi = 1.0;
  /// Any of: add sub mul div sin cos tan tanh exp log sqrt abs neg.
  std::vector<std::string> function_set{"add", "sub", "mul", "div", "sin", "cos", "exp", "log"};
  /// Length penalty applied during tournaments only.
  double parsimony = 0.001;
  /// Stop once the best fitness is at or below this value.
  double stopping_fitness = 1e-12;
  /// Rows used for fitness (0 = all).
  std::size_t max_samples = 0;
  /// Hill-climb the constants of the generation's best program.
  bool refine_constants = true;
  std::size_t top_k = 10;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument.
  void validate() const;
};

/// Reads a JSON object whose keys are the field names above; unknown keys are
/// rejected with a SchemaError.
GPConfig parse_config(std::string_view json_text, GPConfig base = {});

struct Individual {
  expr::Expression expression;
  double fitness = 0.0;
  std::size_t length = 0;
  std::size_t depth = 0;
};

struct EvolveResult {
  /// Distinct programs, best fitness first, at most top_k.
  std::vector<Individual> best;
  /// Best fitness after each generation (index 0 is the initial population).
  std::vector<double> best_fitness;
  std::size_t generations_run = 0;
};

/// Generational GP on the training rows.
EvolveResult evolve(const datagen::Dataset& train, const GPConfig& config);

/// Relative squared error as in evalkit::selection_score; +inf for faulting programs.
double fitness(const expr::Expression& e, const datagen::Dataset& train);

}  // namespace srsd::gp

#endif  // SRSD_GP_HPP
