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

#include "srsd/evalkit.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "srsd/error.hpp"
#include "srsd/treedist.hpp"

namespace srsd::evalkit {

using expr::Expression;
using expr::Op;

std::optional<double> r_squared(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size()) throw InvalidArgument("predictions and targets differ in length");
  if (targets.empty()) throw InvalidArgument("r_squared needs at least one row");
  double mean = 0.0;
  for (double y : targets) mean += y;
  mean /= static_cast<double>(targets.size());
  double sse = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    sse += (predictions[i] - targets[i]) * (predictions[i] - targets[i]);
    sst += (targets[i] - mean) * (targets[i] - mean);
  }
  if (sst == 0.0) return std::nullopt;
  return 1.0 - sse / sst;
}

namespace {

// c * (a + b + ...) -> c*a + c*b + ..., bottom-up. Only applied to differences,
// where a negated sum must cancel term by term.
Expression distribute_numeric(const Expression& e) {
  if (e.kind() != expr::NodeKind::Operator) return e;
  std::vector<Expression> kids;
  for (const auto& c : e.children()) kids.push_back(distribute_numeric(c));
  if (e.op() == Op::Mul && kids.size() == 2 && kids[0].is_constant() && kids[1].is_op(Op::Add)) {
    std::vector<Expression> terms;
    for (const auto& t : kids[1].children()) terms.push_back(Expression::op(Op::Mul, {kids[0], t}));
    return Expression::op(Op::Add, std::move(terms));
  }
  return Expression::op(e.op(), std::move(kids));
}

Expression expanded_difference(const Expression& pred, const Expression& truth) {
  Expression d =
      expr::canonicalize(Expression::op(Op::Add, {pred, Expression::op(Op::Mul, {Expression::constant(-1.0), truth})}));
  for (int i = 0; i < 8; ++i) {
    Expression next = expr::canonicalize(distribute_numeric(d));
    if (next == d) break;
    d = std::move(next);
  }
  return d;
}

}  // namespace

bool is_symbolic_solution(const Expression& pred, const Expression& truth) {
  if (expanded_difference(pred, truth).is_constant()) return true;
  const Expression ratio =
      expr::canonicalize(Expression::op(Op::Mul, {pred, Expression::op(Op::Pow, {truth, Expression::constant(-1.0)})}));
  return ratio.is_constant() && ratio.value() != 0.0;
}

SelectionScore selection_score(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size()) throw InvalidArgument("predictions and targets differ in length");
  SelectionScore s;
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!std::isfinite(predictions[i])) {
      ++s.faults;
      continue;
    }
    if (std::abs(targets[i]) < 1e-300) continue;
    const double rel = (predictions[i] - targets[i]) / targets[i];
    sum += rel * rel;
    ++s.rows_used;
  }
  if (2 * s.faults > targets.size() || s.rows_used == 0 || !std::isfinite(sum)) {
    s.score = std::numeric_limits<double>::infinity();
  } else {
    s.score = sum / static_cast<double>(s.rows_used);
  }
  return s;
}

SelectionScore selection_score(const Expression& candidate, const datagen::Dataset& data) {
  const auto cols = data.feature_columns();
  std::vector<const double*> ptrs;
  for (const auto& c : cols) ptrs.push_back(c.data());
  const auto pred = expr::evaluate_columns(candidate, ptrs, data.rows());
  return selection_score(pred, data.targets());
}

Selection select_best(std::span<const Expression> candidates, const datagen::Dataset& validation) {
  if (candidates.empty()) throw InvalidArgument("no candidates to select from");
  if (validation.rows() == 0) throw InvalidArgument("validation data is empty");
  if (candidates.size() == 1) return {0, selection_score(candidates[0], validation)};
  std::optional<Selection> best;
  std::size_t best_size = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const SelectionScore s = selection_score(candidates[i], validation);
    if (std::isinf(s.score)) continue;
    const std::size_t size = expr::skeletonize(expr::canonicalize(candidates[i])).node_count();
    if (!best || s.score < best->score.score || (s.score == best->score.score && size < best_size)) {
      best = Selection{i, s};
      best_size = size;
    }
  }
  if (!best) throw DataError("no viable candidate: every candidate faults on most validation rows");
  return *best;
}

EvalReport evaluate_problem(const Expression& pred, const Expression& truth, const std::string& problem_id,
                            catalog::Difficulty set, const datagen::Dataset& test, double tau,
                            const datagen::Dataset* validation) {
  EvalReport r;
  r.problem_id = problem_id;
  r.set = set;
  const auto cols = test.feature_columns();
  std::vector<const double*> ptrs;
  for (const auto& c : cols) ptrs.push_back(c.data());
  const auto y_pred = expr::evaluate_columns(pred, ptrs, test.rows());
  const auto y_true = expr::evaluate_columns(truth, ptrs, test.rows());
  for (double v : y_pred)
    if (std::isnan(v)) ++r.prediction_faults;
  bool truth_ok = true;
  for (double v : y_true)
    if (std::isnan(v)) truth_ok = false;
  if (r.prediction_faults == 0 && truth_ok && test.rows() > 0) r.r_squared = r_squared(y_pred, y_true);
  r.accuracy_hit = r.r_squared && *r.r_squared > tau;
  r.symbolic_solution = is_symbolic_solution(pred, truth);
  const auto d = treedist::compare_expressions(pred, truth);
  r.edit_distance = d.distance;
  r.truth_size = d.truth_size;
  r.ned = d.normalized;
  if (validation) {
    const auto s = selection_score(pred, *validation);
    if (std::isfinite(s.score)) r.selection_score = s.score;
  }
  return r;
}

EvalReport evaluate_problem(const Expression& pred, const catalog::ProblemSpec& spec, const datagen::Dataset& test,
                            double tau, const datagen::Dataset* validation) {
  return evaluate_problem(pred, spec.true_expression(), spec.id(), spec.set(), test, tau, validation);
}

namespace {

void require_reports(std::span<const EvalReport> reports) {
  if (reports.empty()) throw InvalidArgument("no reports to aggregate");
}

}  // namespace

double accuracy_rate(std::span<const EvalReport> reports, double tau) {
  require_reports(reports);
  std::size_t hits = 0;
  for (const auto& r : reports)
    if (r.r_squared && *r.r_squared > tau) ++hits;
  return static_cast<double>(hits) / static_cast<double>(reports.size());
}

double solution_rate(std::span<const EvalReport> reports) {
  require_reports(reports);
  std::size_t hits = 0;
  for (const auto& r : reports)
    if (r.symbolic_solution) ++hits;
  return static_cast<double>(hits) / static_cast<double>(reports.size());
}

double mean_ned(std::span<const EvalReport> reports) {
  require_reports(reports);
  double sum = 0.0;
  for (const auto& r : reports) sum += r.ned;
  return sum / static_cast<double>(reports.size());
}

namespace {

SetSummary summarize_group(catalog::Difficulty set, std::span<const EvalReport> reports, double tau) {
  return {set, reports.size(), accuracy_rate(reports, tau), solution_rate(reports), mean_ned(reports)};
}

}  // namespace

BenchmarkSummary summarize(std::span<const EvalReport> reports, double tau) {
  require_reports(reports);
  BenchmarkSummary s;
  s.tau = tau;
  for (auto set : {catalog::Difficulty::Easy, catalog::Difficulty::Medium, catalog::Difficulty::Hard,
                   catalog::Difficulty::Synthetic}) {
    std::vector<EvalReport> group;
    for (const auto& r : reports)
      if (r.set == set) group.push_back(r);
    if (!group.empty()) s.sets.push_back(summarize_group(set, group, tau));
  }
  s.overall = summarize_group(catalog::Difficulty::Easy, reports, tau);
  return s;
}

namespace {

nlohmann::json summary_json(const SetSummary& s) {
  return {{"problems", s.problems},
          {"accuracy_rate", s.accuracy_rate},
          {"solution_rate", s.solution_rate},
          {"mean_ned", s.mean_ned}};
}

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

}  // namespace

std::string report_json(std::span<const EvalReport> reports, const BenchmarkSummary& summary) {
  nlohmann::json problems = nlohmann::json::array();
  for (const auto& r : reports) {
    problems.push_back({{"id", r.problem_id},
                        {"set", catalog::to_string(r.set)},
                        {"r_squared", optional_json(r.r_squared)},
                        {"accuracy_hit", r.accuracy_hit},
                        {"symbolic_solution", r.symbolic_solution},
                        {"edit_distance", r.edit_distance},
                        {"truth_size", r.truth_size},
                        {"ned", r.ned},
                        {"selection_score", optional_json(r.selection_score)},
                        {"prediction_faults", r.prediction_faults}});
  }
  nlohmann::json sets = nlohmann::json::object();
  for (const auto& s : summary.sets) sets[std::string(catalog::to_string(s.set))] = summary_json(s);
  nlohmann::json doc{{"tau", summary.tau}, {"problems", problems}, {"sets", sets}, {"overall", summary_json(summary.overall)}};
  return doc.dump(2) + "\n";
}

}  // namespace srsd::evalkit
