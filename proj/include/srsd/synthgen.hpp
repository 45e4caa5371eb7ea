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

#ifndef SRSD_SYNTHGEN_HPP
#define SRSD_SYNTHGEN_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srsd/catalog.hpp"
#include "srsd/datagen.hpp"
#include "srsd/expr.hpp"

namespace srsd::synthgen {

/// Smoothed bigram chain over preorder skeleton tokens with a start context.
class BigramModel {
 public:
  /// Throws InvalidArgument for an empty corpus or alpha < 0, DecodeError for
  /// an invalid sequence.
  static BigramModel train(std::span<const expr::TokenSequence> corpus, double alpha = 1.0);

  /// Vocabulary, sorted by token text. Constant tokens carry no display index.
  const std::vector<expr::Token>& vocabulary() const { return vocab_; }
  double alpha() const { return alpha_; }
  /// Context index vocabulary().size() is the start context.
  std::size_t start_context() const { return vocab_.size(); }
  /// P(next | context); falls back to uniform when the context has no mass.
  double probability(std::size_t context, std::size_t next) const;
  std::vector<double> distribution(std::size_t context) const;
  /// Index of `t` in the vocabulary, or vocabulary().size() if absent.
  std::size_t index_of(const expr::Token& t) const;
  double log_likelihood(const expr::TokenSequence& seq) const;

 private:
  std::vector<expr::Token> vocab_;
  std::vector<std::vector<double>> counts_;  // [context][next]
  std::vector<double> totals_;
  double alpha_ = 1.0;
};

BigramModel train_bigram(std::span<const expr::TokenSequence> corpus, double alpha = 1.0);

/// Preorder skeleton token sequences of the given problems' canonical formulas.
std::vector<expr::TokenSequence> skeleton_corpus(std::span<const catalog::ProblemSpec> specs);

struct SampleOptions {
  std::size_t max_tokens = 30;
  std::size_t max_retries = 1000;
  /// Sampled constants are log-uniform in magnitude over [lo, hi].
  double constant_lo = 0.1;
  double constant_hi = 10.0;
};

struct SampledEquation {
  expr::TokenSequence tokens;
  expr::Expression expression;
};

/// Samples a token sequence left to right, masking tokens that could no longer
/// complete a tree within max_tokens. Variables are renumbered to be contiguous
/// from X1. Sequences whose expression canonicalizes to a constant are redrawn.
/// Throws SamplingInfeasible when the retry budget runs out.
SampledEquation sample_sequence(const BigramModel& model, std::uint64_t seed, const SampleOptions& options = {});
expr::Expression sample_equation(const BigramModel& model, std::size_t max_tokens, std::uint64_t seed);

struct RangeOptions {
  int k_lo = -8;
  int k_hi = 8;
};

/// Each variable draws an integer k uniformly in [k_lo, k_hi] and gets
/// loguniform(10^(k-1), 10^(k+1)), positive float. Variables are named x1..xn.
catalog::ProblemSpec assign_ranges(const expr::Expression& e, const std::string& id, std::uint64_t seed,
                                   const RangeOptions& options = {}, std::vector<int>* k_out = nullptr);
/// Up to 10 independent range draws for one equation.
std::vector<catalog::ProblemSpec> assign_range_sets(const expr::Expression& e, const std::string& id_prefix,
                                                    std::size_t count, std::uint64_t seed,
                                                    const RangeOptions& options = {},
                                                    std::vector<std::vector<int>>* k_out = nullptr);

inline constexpr std::size_t kMaxRangeSets = 10;

using Interval = std::pair<double, double>;

/// |a ∩ b| / |hull(a, b)|. Zero-length hull gives 1 for identical points, else 0.
double domain_iou(Interval a, Interval b);

/// Observed [min, max] of each feature column.
std::vector<Interval> observed_ranges(const datagen::Dataset& ds);

struct LeakageItem {
  std::string id;
  expr::Expression expression;
  std::vector<Interval> ranges;
};

struct LeakagePair {
  std::string synth_id;
  std::string target_id;
  std::vector<double> ious;
  double mean_iou = 0.0;
};

struct TargetLeakage {
  std::string target_id;
  std::size_t matches = 0;
  /// Largest per-equation mean IoU over skeleton-identical corpus items; 0 if none.
  double iou = 0.0;
};

struct LeakageResult {
  /// Only pairs with NED == 0.
  std::vector<LeakagePair> matched_pairs;
  std::vector<TargetLeakage> targets;
  /// Mean of TargetLeakage::iou.
  double mean_iou = 0.0;
  /// Mean over matched pairs (0 if there are none).
  double mean_pair_iou = 0.0;
  std::size_t pairs_compared = 0;
  std::size_t iou_evaluations = 0;
};

/// Step 1: NED between canonical skeletons of every (corpus, target) pair.
/// Step 2: for NED == 0 pairs only, per-variable IoU of the observed ranges.
LeakageResult leakage_report(std::span<const LeakageItem> corpus, std::span<const LeakageItem> targets);

}  // namespace srsd::synthgen

#endif  // SRSD_SYNTHGEN_HPP
