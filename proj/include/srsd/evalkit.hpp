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

#ifndef SRSD_EVALKIT_HPP
#define SRSD_EVALKIT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srsd/catalog.hpp"
#include "srsd/datagen.hpp"
#include "srsd/expr.hpp"

namespace srsd::evalkit {

inline constexpr double kDefaultTau = 0.999;

/// 1 - SSE/SST. nullopt when the targets have zero variance.
std::optional<double> r_squared(std::span<const double> predictions, std::span<const double> targets);

/// True iff pred - truth or pred / truth canonicalizes to a (nonzero) constant.
bool is_symbolic_solution(const expr::Expression& pred, const expr::Expression& truth);

struct SelectionScore {
  /// Mean squared relative error; +inf when more than half the rows fault.
  double score = 0.0;
  std::size_t rows_used = 0;
  std::size_t faults = 0;
};

/// Mean of ((f(x_i) - y_i) / y_i)^2, skipping rows with |y_i| < 1e-300 and rows
/// on which the expression faults.
SelectionScore selection_score(const expr::Expression& candidate, const datagen::Dataset& data);
/// Same, from precomputed predictions (NaN marks a fault).
SelectionScore selection_score(std::span<const double> predictions, std::span<const double> targets);

struct Selection {
  std::size_t index = 0;
  SelectionScore score;
};

/// Lowest score wins; ties go to the smaller skeleton, then the earlier candidate.
/// A single candidate is returned as is. Throws DataError if every candidate
/// scores +inf.
Selection select_best(std::span<const expr::Expression> candidates, const datagen::Dataset& validation);

struct EvalReport {
  std::string problem_id;
  catalog::Difficulty set = catalog::Difficulty::Easy;
  std::optional<double> r_squared;
  bool accuracy_hit = false;
  bool symbolic_solution = false;
  std::size_t edit_distance = 0;
  std::size_t truth_size = 1;
  double ned = 0.0;
  std::optional<double> selection_score;
  /// Test rows on which the prediction faulted; any fault leaves r_squared empty.
  std::size_t prediction_faults = 0;
};

/// Scores `pred` against `truth` on the test rows. R^2 compares the prediction
/// with the truth evaluated on the same inputs. The selection score is filled
/// when `validation` is given.
EvalReport evaluate_problem(const expr::Expression& pred, const expr::Expression& truth, const std::string& problem_id,
                            catalog::Difficulty set, const datagen::Dataset& test, double tau = kDefaultTau,
                            const datagen::Dataset* validation = nullptr);
EvalReport evaluate_problem(const expr::Expression& pred, const catalog::ProblemSpec& spec,
                            const datagen::Dataset& test, double tau = kDefaultTau,
                            const datagen::Dataset* validation = nullptr);

/// Fraction of reports with r_squared > tau. Throws InvalidArgument when empty.
double accuracy_rate(std::span<const EvalReport> reports, double tau = kDefaultTau);
double solution_rate(std::span<const EvalReport> reports);
double mean_ned(std::span<const EvalReport> reports);

struct SetSummary {
  catalog::Difficulty set = catalog::Difficulty::Easy;
  std::size_t problems = 0;
  double accuracy_rate = 0.0;
  double solution_rate = 0.0;
  double mean_ned = 0.0;
};

struct BenchmarkSummary {
  std::vector<SetSummary> sets;
  SetSummary overall;
  double tau = kDefaultTau;
};

/// Groups by difficulty set (in easy, medium, hard, synthetic order).
BenchmarkSummary summarize(std::span<const EvalReport> reports, double tau = kDefaultTau);

/// JSON document with per-problem records and per-set summaries, keys sorted.
std::string report_json(std::span<const EvalReport> reports, const BenchmarkSummary& summary);

}  // namespace srsd::evalkit

#endif  // SRSD_EVALKIT_HPP
