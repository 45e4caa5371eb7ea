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

#include "srsd/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "srsd/error.hpp"
#include "srsd/treedist.hpp"

namespace srsd::synthgen {

using expr::Label;
using expr::Token;
using expr::TokenSequence;

namespace {

Token strip(Token t) {
  if (t.label.kind == Label::Kind::Constant) t.label.index = 0;
  return t;
}

}  // namespace

BigramModel BigramModel::train(std::span<const TokenSequence> corpus, double alpha) {
  if (corpus.empty()) throw InvalidArgument("bigram corpus is empty");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("smoothing alpha must be >= 0");
  std::map<std::string, Token> by_text;
  for (const auto& seq : corpus) {
    expr::from_preorder(seq);
    for (const auto& t : seq) by_text.emplace(expr::token_text(t), strip(t));
  }
  BigramModel m;
  m.alpha_ = alpha;
  for (const auto& [text, tok] : by_text) m.vocab_.push_back(tok);
  const std::size_t v = m.vocab_.size();
  m.counts_.assign(v + 1, std::vector<double>(v, 0.0));
  m.totals_.assign(v + 1, 0.0);
  for (const auto& seq : corpus) {
    std::size_t ctx = v;
    for (const auto& t : seq) {
      const std::size_t next = m.index_of(t);
      m.counts_[ctx][next] += 1.0;
      m.totals_[ctx] += 1.0;
      ctx = next;
    }
  }
  return m;
}

BigramModel train_bigram(std::span<const TokenSequence> corpus, double alpha) { return BigramModel::train(corpus, alpha); }

std::size_t BigramModel::index_of(const Token& t) const {
  const Token s = strip(t);
  for (std::size_t i = 0; i < vocab_.size(); ++i)
    if (vocab_[i] == s) return i;
  return vocab_.size();
}

double BigramModel::probability(std::size_t context, std::size_t next) const {
  if (context > vocab_.size() || next >= vocab_.size()) throw InvalidArgument("token index out of range");
  const double v = static_cast<double>(vocab_.size());
  const double denom = totals_[context] + alpha_ * v;
  if (denom == 0.0) return 1.0 / v;
  return (counts_[context][next] + alpha_) / denom;
}

std::vector<double> BigramModel::distribution(std::size_t context) const {
  std::vector<double> p(vocab_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = probability(context, i);
  return p;
}

double BigramModel::log_likelihood(const TokenSequence& seq) const {
  double ll = 0.0;
  std::size_t ctx = start_context();
  for (const auto& t : seq) {
    const std::size_t next = index_of(t);
    if (next == vocab_.size()) return -std::numeric_limits<double>::infinity();
    ll += std::log(probability(ctx, next));
    ctx = next;
  }
  return ll;
}

std::vector<TokenSequence> skeleton_corpus(std::span<const catalog::ProblemSpec> specs) {
  std::vector<TokenSequence> out;
  for (const auto& s : specs) out.push_back(expr::to_preorder(expr::skeletonize(s.true_expression())));
  return out;
}

namespace {

int arity_of(const Token& t) { return t.label.kind == Label::Kind::Operator ? t.arity : 0; }

TokenSequence draw_tokens(const BigramModel& model, std::size_t max_tokens, std::mt19937_64& rng) {
  const auto& vocab = model.vocabulary();
  TokenSequence out;
  std::size_t ctx = model.start_context();
  std::size_t need = 1;
  std::vector<double> w(vocab.size());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (need > 0) {
    const std::size_t budget = max_tokens - out.size() - 1;
    double total = 0.0;
    std::size_t feasible = 0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      const std::size_t a = static_cast<std::size_t>(arity_of(vocab[i]));
      const bool ok = need - 1 + a <= budget;
      w[i] = ok ? model.probability(ctx, i) : 0.0;
      total += w[i];
      feasible += ok;
    }
    if (feasible == 0) throw SamplingInfeasible("vocabulary has no leaf token");
    if (total == 0.0) {
      for (std::size_t i = 0; i < vocab.size(); ++i)
        if (need - 1 + static_cast<std::size_t>(arity_of(vocab[i])) <= budget) w[i] = 1.0;
      total = static_cast<double>(feasible);
    }
    double r = u(rng) * total;
    std::size_t pick = vocab.size();
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      if (w[i] == 0.0) continue;
      pick = i;
      if (r < w[i]) break;
      r -= w[i];
    }
    out.push_back(vocab[pick]);
    need = need - 1 + static_cast<std::size_t>(arity_of(vocab[pick]));
    ctx = pick;
  }
  return out;
}

void compact_variables(TokenSequence& seq) {
  std::set<int> used;
  for (const auto& t : seq)
    if (t.label.kind == Label::Kind::Variable) used.insert(t.label.index);
  std::map<int, int> remap;
  int next = 1;
  for (int v : used) remap[v] = next++;
  for (auto& t : seq)
    if (t.label.kind == Label::Kind::Variable) t.label.index = remap[t.label.index];
}

}  // namespace

SampledEquation sample_sequence(const BigramModel& model, std::uint64_t seed, const SampleOptions& options) {
  if (options.max_tokens < 1) throw InvalidArgument("max_tokens must be at least 1");
  if (!(options.constant_lo > 0.0 && options.constant_lo <= options.constant_hi))
    throw InvalidArgument("constant range must satisfy 0 < lo <= hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(std::log10(options.constant_lo), std::log10(options.constant_hi));
  for (std::size_t attempt = 0; attempt < options.max_retries; ++attempt) {
    TokenSequence seq = draw_tokens(model, options.max_tokens, rng);
    compact_variables(seq);
    const expr::SkeletonTree tree = expr::from_preorder(seq);
    std::vector<double> constants;
    for (const auto& t : seq)
      if (t.label.kind == Label::Kind::Constant) constants.push_back(std::pow(10.0, mag(rng)));
    expr::Expression e = expr::from_skeleton(tree, constants);
    if (expr::canonicalize(e).is_constant()) continue;
    return {expr::to_preorder(tree), std::move(e)};
  }
  throw SamplingInfeasible("no non-constant equation within " + std::to_string(options.max_retries) + " attempts");
}

expr::Expression sample_equation(const BigramModel& model, std::size_t max_tokens, std::uint64_t seed) {
  SampleOptions o;
  o.max_tokens = max_tokens;
  return sample_sequence(model, seed, o).expression;
}

catalog::ProblemSpec assign_ranges(const expr::Expression& e, const std::string& id, std::uint64_t seed,
                                   const RangeOptions& options, std::vector<int>* k_out) {
  if (options.k_lo > options.k_hi) throw InvalidArgument("k_lo must not exceed k_hi");
  const int n = e.max_var_index() + 1;
  if (n < 1) throw InvalidArgument("expression has no variables");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_k(options.k_lo, options.k_hi);
  std::vector<std::string> names;
  std::vector<catalog::VariableSpec> vars;
  if (k_out) k_out->clear();
  for (int i = 0; i < n; ++i) {
    const int k = pick_k(rng);
    if (k_out) k_out->push_back(k);
    names.push_back("x" + std::to_string(i + 1));
    vars.push_back({names.back(), catalog::Distribution::loguniform(std::pow(10.0, k - 1), std::pow(10.0, k + 1)),
                    catalog::ValueClass::Float, catalog::Sign::Positive});
  }
  return catalog::ProblemSpec(id, catalog::Difficulty::Synthetic, expr::to_infix(e, names), std::move(vars));
}

std::vector<catalog::ProblemSpec> assign_range_sets(const expr::Expression& e, const std::string& id_prefix,
                                                    std::size_t count, std::uint64_t seed,
                                                    const RangeOptions& options,
                                                    std::vector<std::vector<int>>* k_out) {
  if (count < 1 || count > kMaxRangeSets)
    throw InvalidArgument("range sets per equation must be between 1 and " + std::to_string(kMaxRangeSets));
  std::mt19937_64 seeder(seed);
  std::vector<catalog::ProblemSpec> out;
  if (k_out) k_out->clear();
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<int> ks;
    out.push_back(assign_ranges(e, id_prefix + "-r" + std::to_string(i), seeder(), options, &ks));
    if (k_out) k_out->push_back(std::move(ks));
  }
  return out;
}

double domain_iou(Interval a, Interval b) {
  if (!(a.first <= a.second) || !(b.first <= b.second)) throw InvalidArgument("interval needs min <= max");
  const double hull = std::max(a.second, b.second) - std::min(a.first, b.first);
  if (hull == 0.0) return a == b ? 1.0 : 0.0;
  const double inter = std::max(0.0, std::min(a.second, b.second) - std::max(a.first, b.first));
  return std::clamp(inter / hull, 0.0, 1.0);
}

std::vector<Interval> observed_ranges(const datagen::Dataset& ds) {
  std::vector<Interval> out;
  for (std::size_t c = 0; c < ds.n_features(); ++c) {
    const auto col = ds.column(c);
    if (col.empty()) {
      out.emplace_back(0.0, 0.0);
      continue;
    }
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    out.emplace_back(*lo, *hi);
  }
  return out;
}

namespace {

std::set<int> variables_of(const expr::Expression& e) {
  std::set<int> out;
  if (e.is_variable()) out.insert(e.var_index());
  for (const auto& c : e.children()) {
    auto sub = variables_of(c);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

}  // namespace

LeakageResult leakage_report(std::span<const LeakageItem> corpus, std::span<const LeakageItem> targets) {
  if (corpus.empty() || targets.empty()) throw InvalidArgument("leakage check needs a corpus and targets");
  std::vector<expr::SkeletonTree> corpus_sk, target_sk;
  std::vector<expr::Expression> target_canon;
  for (const auto& c : corpus) corpus_sk.push_back(expr::skeletonize(expr::canonicalize(c.expression)));
  for (const auto& t : targets) {
    target_canon.push_back(expr::canonicalize(t.expression));
    target_sk.push_back(expr::skeletonize(target_canon.back()));
  }

  LeakageResult r;
  double pair_sum = 0.0;
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    TargetLeakage tl{targets[ti].id, 0, 0.0};
    const auto vars = variables_of(target_canon[ti]);
    for (std::size_t ci = 0; ci < corpus.size(); ++ci) {
      ++r.pairs_compared;
      if (treedist::normalized_edit_distance(corpus_sk[ci], target_sk[ti]) != 0.0) continue;
      LeakagePair p{corpus[ci].id, targets[ti].id, {}, 0.0};
      for (int v : vars) {
        const auto i = static_cast<std::size_t>(v);
        double iou = 0.0;
        if (i < corpus[ci].ranges.size() && i < targets[ti].ranges.size()) {
          iou = domain_iou(corpus[ci].ranges[i], targets[ti].ranges[i]);
          ++r.iou_evaluations;
        }
        p.ious.push_back(iou);
      }
      if (!p.ious.empty()) {
        double s = 0.0;
        for (double x : p.ious) s += x;
        p.mean_iou = s / static_cast<double>(p.ious.size());
      }
      ++tl.matches;
      tl.iou = std::max(tl.iou, p.mean_iou);
      pair_sum += p.mean_iou;
      r.matched_pairs.push_back(std::move(p));
    }
    r.mean_iou += tl.iou;
    r.targets.push_back(std::move(tl));
  }
  r.mean_iou /= static_cast<double>(targets.size());
  if (!r.matched_pairs.empty()) r.mean_pair_iou = pair_sum / static_cast<double>(r.matched_pairs.size());
  return r;
}

}  // namespace srsd::synthgen
