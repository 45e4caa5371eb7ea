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

#include "srsd/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "srsd/error.hpp"
#include "srsd/evalkit.hpp"

namespace srsd::gp {

using expr::Expression;
using expr::Op;

namespace {

enum class Fn : std::uint8_t { Add, Sub, Mul, Div, Sin, Cos, Tan, Tanh, Exp, Log, Sqrt, Abs, Neg };

struct FnInfo {
  Fn fn;
  const char* name;
  int arity;
};

constexpr FnInfo kFns[] = {{Fn::Add, "add", 2},   {Fn::Sub, "sub", 2},   {Fn::Mul, "mul", 2},   {Fn::Div, "div", 2},
                           {Fn::Sin, "sin", 1},   {Fn::Cos, "cos", 1},   {Fn::Tan, "tan", 1},   {Fn::Tanh, "tanh", 1},
                           {Fn::Exp, "exp", 1},   {Fn::Log, "log", 1},   {Fn::Sqrt, "sqrt", 1}, {Fn::Abs, "abs", 1},
                           {Fn::Neg, "neg", 1}};

const FnInfo* find_fn(std::string_view name) {
  for (const auto& f : kFns)
    if (name == f.name) return &f;
  return nullptr;
}

int arity(Fn f) { return kFns[static_cast<int>(f)].arity; }

struct Node {
  enum Kind : std::uint8_t { Function, Variable, Constant } kind;
  Fn fn = Fn::Add;
  int var = 0;
  double value = 0.0;
};

using Program = std::vector<Node>;

int node_arity(const Node& n) { return n.kind == Node::Function ? arity(n.fn) : 0; }

std::size_t subtree_end(const Program& p, std::size_t start) {
  std::size_t end = start;
  long stack = 1;
  while (stack > static_cast<long>(end - start)) {
    stack += node_arity(p[end]);
    ++end;
  }
  return end;
}

std::size_t program_depth(const Program& p) {
  std::vector<int> open;
  std::size_t depth = 0;
  for (const auto& n : p) {
    depth = std::max(depth, open.size() + 1);
    if (node_arity(n) > 0) {
      open.push_back(node_arity(n));
      continue;
    }
    while (!open.empty() && --open.back() == 0) open.pop_back();
  }
  return depth;
}

Expression to_expression(const Program& p, std::size_t& i) {
  const Node& n = p[i++];
  if (n.kind == Node::Variable) return Expression::variable(n.var);
  if (n.kind == Node::Constant) return Expression::constant(n.value);
  if (arity(n.fn) == 1) {
    Expression a = to_expression(p, i);
    static constexpr Op unary[] = {Op::Sin, Op::Cos, Op::Tan, Op::Tanh, Op::Exp, Op::Log, Op::Sqrt, Op::Abs, Op::Neg};
    return Expression::op(unary[static_cast<int>(n.fn) - static_cast<int>(Fn::Sin)], {std::move(a)});
  }
  Expression a = to_expression(p, i);
  Expression b = to_expression(p, i);
  switch (n.fn) {
    case Fn::Add:
      return Expression::op(Op::Add, {std::move(a), std::move(b)});
    case Fn::Sub:
      return Expression::op(Op::Add, {std::move(a), Expression::op(Op::Neg, {std::move(b)})});
    case Fn::Mul:
      return Expression::op(Op::Mul, {std::move(a), std::move(b)});
    default:
      return Expression::op(Op::Div, {std::move(a), std::move(b)});
  }
}

Expression to_expression(const Program& p) {
  std::size_t i = 0;
  return to_expression(p, i);
}

std::string program_key(const Program& p) {
  std::string s;
  for (const auto& n : p) {
    if (n.kind == Node::Function) {
      s += kFns[static_cast<int>(n.fn)].name;
    } else if (n.kind == Node::Variable) {
      s += "x" + std::to_string(n.var);
    } else {
      s += expr::format_double(n.value);
    }
    s += ' ';
  }
  return s;
}

class Engine {
 public:
  Engine(const datagen::Dataset& train, const GPConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    const std::size_t n = cfg.max_samples ? std::min(cfg.max_samples, train.rows()) : train.rows();
    rows_ = n;
    n_features_ = train.n_features();
    for (std::size_t c = 0; c < n_features_; ++c) {
      std::vector<double> col(n);
      for (std::size_t r = 0; r < n; ++r) col[r] = train.at(r, c);
      cols_.push_back(std::move(col));
    }
    y_.resize(n);
    for (std::size_t r = 0; r < n; ++r) y_[r] = train.target(r);
    for (const auto& c : cols_) ptrs_.push_back(c.data());
    for (const auto& name : cfg.function_set) fns_.push_back(find_fn(name)->fn);
  }

  EvolveResult run() {
    std::vector<Program> pop;
    for (std::size_t i = 0; i < cfg_.population_size; ++i) pop.push_back(random_program(i % 2 == 0));
    std::vector<double> fit(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = score(pop[i]);

    EvolveResult result;
    std::size_t best = argmin(fit);
    result.best_fitness.push_back(fit[best]);
    for (std::size_t gen = 0; gen < cfg_.generations; ++gen) {
      if (fit[best] <= cfg_.stopping_fitness) break;
      if (cfg_.refine_constants) refine(pop[best], fit[best]);
      std::vector<Program> next{pop[best]};
      std::vector<double> next_fit{fit[best]};
      while (next.size() < cfg_.population_size) {
        const Program& parent = pop[tournament(pop, fit)];
        const double r = unit_(rng_);
        Program child;
        if (r < cfg_.p_crossover) {
          child = crossover(parent, pop[tournament(pop, fit)]);
        } else if (r < cfg_.p_crossover + cfg_.p_subtree_mutation) {
          child = crossover(parent, random_program(unit_(rng_) < 0.5));
        } else if (r < cfg_.p_crossover + cfg_.p_subtree_mutation + cfg_.p_point_mutation) {
          child = point_mutation(parent);
        } else {
          child = parent;
        }
        next_fit.push_back(score(child));
        next.push_back(std::move(child));
      }
      pop = std::move(next);
      fit = std::move(next_fit);
      best = argmin(fit);
      result.best_fitness.push_back(fit[best]);
      ++result.generations_run;
    }
    if (cfg_.refine_constants && !pop.empty()) refine(pop[best], fit[best]);

    std::vector<std::size_t> order(pop.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (fit[a] != fit[b]) return fit[a] < fit[b];
      return pop[a].size() < pop[b].size();
    });
    std::set<std::string> seen;
    for (std::size_t i : order) {
      if (result.best.size() >= cfg_.top_k) break;
      if (!seen.insert(program_key(pop[i])).second) continue;
      result.best.push_back({to_expression(pop[i]), fit[i], pop[i].size(), program_depth(pop[i])});
    }
    if (!result.best.empty()) result.best_fitness.back() = result.best.front().fitness;
    return result;
  }

 private:
  double score(const Program& p) const {
    const auto pred = expr::evaluate_columns(to_expression(p), ptrs_, rows_);
    return evalkit::selection_score(pred, y_).score;
  }

  static std::size_t argmin(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] < v[best]) best = i;
    return best;
  }

  Node random_terminal() {
    std::uniform_int_distribution<std::size_t> pick(0, n_features_);
    const std::size_t t = pick(rng_);
    if (t == n_features_) return {Node::Constant, Fn::Add, 0, std::uniform_real_distribution<double>(cfg_.const_lo, cfg_.const_hi)(rng_)};
    return {Node::Variable, Fn::Add, static_cast<int>(t), 0.0};
  }

  Node random_function() {
    return {Node::Function, fns_[std::uniform_int_distribution<std::size_t>(0, fns_.size() - 1)(rng_)], 0, 0.0};
  }

  Program random_program(bool full) {
    const std::size_t depth =
        std::uniform_int_distribution<std::size_t>(cfg_.init_depth_lo, cfg_.init_depth_hi)(rng_);
    Program p;
    if (depth <= 1) {
      p.push_back(random_terminal());
      return p;
    }
    p.push_back(random_function());
    std::vector<int> open{arity(p.back().fn)};
    const std::size_t choices = n_features_ + fns_.size();
    while (!open.empty()) {
      const std::size_t level = open.size() + 1;
      const std::size_t c = std::uniform_int_distribution<std::size_t>(0, choices)(rng_);
      if (level < depth && (full || c < fns_.size())) {
        p.push_back(random_function());
        open.push_back(arity(p.back().fn));
      } else {
        p.push_back(random_terminal());
        while (!open.empty() && --open.back() == 0) open.pop_back();
      }
    }
    return p;
  }

  std::size_t tournament(const std::vector<Program>& pop, const std::vector<double>& fit) {
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    std::size_t best = pick(rng_);
    auto penalized = [&](std::size_t i) { return fit[i] + cfg_.parsimony * static_cast<double>(pop[i].size()); };
    for (std::size_t k = 1; k < cfg_.tournament_size; ++k) {
      const std::size_t c = pick(rng_);
      if (penalized(c) < penalized(best)) best = c;
    }
    return best;
  }

  std::size_t random_subtree_start(const Program& p) {
    std::vector<double> w(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) w[i] = p[i].kind == Node::Function ? 0.9 : 0.1;
    return std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng_);
  }

  Program crossover(const Program& parent, const Program& donor) {
    for (int attempt = 0; attempt < 5; ++attempt) {
      const std::size_t s = random_subtree_start(parent);
      const std::size_t e = subtree_end(parent, s);
      const std::size_t ds = random_subtree_start(donor);
      const std::size_t de = subtree_end(donor, ds);
      Program child(parent.begin(), parent.begin() + static_cast<std::ptrdiff_t>(s));
      child.insert(child.end(), donor.begin() + static_cast<std::ptrdiff_t>(ds),
                   donor.begin() + static_cast<std::ptrdiff_t>(de));
      child.insert(child.end(), parent.begin() + static_cast<std::ptrdiff_t>(e), parent.end());
      if (program_depth(child) <= cfg_.max_depth) return child;
    }
    return parent;
  }

  Program point_mutation(const Program& parent) {
    Program child = parent;
    for (auto& n : child) {
      if (unit_(rng_) >= cfg_.p_point_replace) continue;
      if (n.kind == Node::Function) {
        std::vector<Fn> same;
        for (Fn f : fns_)
          if (arity(f) == arity(n.fn)) same.push_back(f);
        n.fn = same[std::uniform_int_distribution<std::size_t>(0, same.size() - 1)(rng_)];
      } else {
        n = random_terminal();
      }
    }
    return child;
  }

  void refine(Program& p, double& fit) {
    static constexpr double steps[] = {0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11};
    for (double s : steps) {
      for (auto& n : p) {
        if (n.kind != Node::Constant) continue;
        for (int round = 0; round < 8; ++round) {
          bool improved = false;
          const double v = n.value;
          for (double cand : {v * (1 + s), v * (1 - s), v + s, v - s}) {
            n.value = cand;
            const double f = score(p);
            if (f < fit) {
              fit = f;
              improved = true;
              break;
            }
            n.value = v;
          }
          if (!improved) break;
        }
      }
      if (fit <= cfg_.stopping_fitness) return;
    }
  }

  const GPConfig& cfg_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::size_t rows_ = 0;
  std::size_t n_features_ = 0;
  std::vector<std::vector<double>> cols_;
  std::vector<const double*> ptrs_;
  std::vector<double> y_;
  std::vector<Fn> fns_;
};

}  // namespace

void GPConfig::validate() const {
  if (population_size < 2) throw InvalidArgument("population_size must be at least 2");
  if (tournament_size < 1) throw InvalidArgument("tournament_size must be at least 1");
  for (double p : {p_crossover, p_subtree_mutation, p_point_mutation, p_point_replace})
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probabilities must lie in [0, 1]");
  if (p_crossover + p_subtree_mutation + p_point_mutation > 1.0 + 1e-12)
    throw InvalidArgument("crossover and mutation probabilities must sum to at most 1");
  if (max_depth < 1) throw InvalidArgument("max_depth must be at least 1");
  if (init_depth_lo < 1 || init_depth_lo > init_depth_hi || init_depth_hi > max_depth)
    throw InvalidArgument("init depth range must satisfy 1 <= lo <= hi <= max_depth");
  if (!(const_lo <= const_hi) || !std::isfinite(const_lo) || !std::isfinite(const_hi))
    throw InvalidArgument("constant range must satisfy lo <= hi");
  if (function_set.empty()) throw InvalidArgument("function_set is empty");
  for (const auto& f : function_set)
    if (!find_fn(f)) throw InvalidArgument("unknown function '" + f + "'");
  if (top_k < 1) throw InvalidArgument("top_k must be at least 1");
  if (!(parsimony >= 0.0)) throw InvalidArgument("parsimony must be >= 0");
}

GPConfig parse_config(std::string_view json_text, GPConfig cfg) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("$", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const auto& v = it.value();
    auto size = [&](std::size_t& out) {
      if (!v.is_number_unsigned()) throw SchemaError(k, "expected a non-negative integer");
      out = v.get<std::size_t>();
    };
    auto real = [&](double& out) {
      if (!v.is_number()) throw SchemaError(k, "expected a number");
      out = v.get<double>();
    };
    if (k == "population_size") size(cfg.population_size);
    else if (k == "generations") size(cfg.generations);
    else if (k == "tournament_size") size(cfg.tournament_size);
    else if (k == "p_crossover") real(cfg.p_crossover);
    else if (k == "p_subtree_mutation") real(cfg.p_subtree_mutation);
    else if (k == "p_point_mutation") real(cfg.p_point_mutation);
    else if (k == "p_point_replace") real(cfg.p_point_replace);
    else if (k == "init_depth_lo") size(cfg.init_depth_lo);
    else if (k == "init_depth_hi") size(cfg.init_depth_hi);
    else if (k == "max_depth") size(cfg.max_depth);
    else if (k == "const_lo") real(cfg.const_lo);
    else if (k == "const_hi") real(cfg.const_hi);
    else if (k == "parsimony") real(cfg.parsimony);
    else if (k == "stopping_fitness") real(cfg.stopping_fitness);
    else if (k == "max_samples") size(cfg.max_samples);
    else if (k == "top_k") size(cfg.top_k);
    else if (k == "function_set") {
      if (!v.is_array()) throw SchemaError(k, "expected an array of names");
      cfg.function_set.clear();
      for (const auto& f : v) {
        if (!f.is_string()) throw SchemaError(k, "expected an array of names");
        cfg.function_set.push_back(f.get<std::string>());
      }
    } else if (k == "refine_constants") {
      if (!v.is_boolean()) throw SchemaError(k, "expected a boolean");
      cfg.refine_constants = v.get<bool>();
    } else if (k == "seed") {
      std::size_t s = 0;
      size(s);
      cfg.seed = s;
    } else {
      throw SchemaError(k, "unknown key");
    }
  }
  cfg.validate();
  return cfg;
}

EvolveResult evolve(const datagen::Dataset& train, const GPConfig& config) {
  config.validate();
  if (train.rows() == 0) throw InvalidArgument("training data is empty");
  return Engine(train, config).run();
}

double fitness(const Expression& e, const datagen::Dataset& train) { return evalkit::selection_score(e, train).score; }

}  // namespace srsd::gp
