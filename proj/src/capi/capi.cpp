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

#include "srsd/srsd.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "srsd/catalog.hpp"
#include "srsd/datagen.hpp"
#include "srsd/error.hpp"
#include "srsd/evalkit.hpp"
#include "srsd/expr.hpp"
#include "srsd/treedist.hpp"
#include "srsd/workflow.hpp"

struct srsd_expr {
  srsd::expr::Expression e;
};

struct srsd_catalog {
  std::vector<srsd::catalog::ProblemSpec> specs;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
srsd_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SRSD_OK;
  } catch (const srsd::Error& e) {
    g_last_error = e.what();
    return static_cast<srsd_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return SRSD_E_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw srsd::InvalidArgument(std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::vector<std::string> strings(const char* const* items, size_t n) {
  if (n) require(items, "string list");
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) {
    require(items[i], "string list entry");
    out.emplace_back(items[i]);
  }
  return out;
}

std::string str_or(const char* s, const char* fallback) { return s ? s : fallback; }

const srsd::catalog::ProblemSpec& spec_at(const srsd_catalog* c, size_t i) {
  require(c, "catalog");
  if (i >= c->specs.size()) throw srsd::InvalidArgument("catalog index out of range");
  return c->specs[i];
}

}  // namespace

extern "C" {

const char* srsd_version(void) { return "0.1.0"; }

const char* srsd_last_error(void) { return g_last_error.c_str(); }

void srsd_string_free(char* s) { std::free(s); }

srsd_status srsd_expr_parse(const char* text, srsd_expr** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new srsd_expr{srsd::expr::parse(text, srsd::expr::indexed_variable_resolver())};
  });
}

srsd_status srsd_expr_read_file(const char* path, srsd_expr** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new srsd_expr{srsd::datagen::read_equation(path)};
  });
}

srsd_status srsd_expr_write_file(const srsd_expr* e, const char* path) {
  return guarded([&] {
    require(e, "expression");
    require(path, "path");
    srsd::datagen::write_equation(e->e, path);
  });
}

void srsd_expr_free(srsd_expr* e) { delete e; }

srsd_status srsd_expr_canonicalize(const srsd_expr* e, srsd_expr** out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "out");
    *out = new srsd_expr{srsd::expr::canonicalize(e->e)};
  });
}

srsd_status srsd_expr_to_infix(const srsd_expr* e, char** out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "out");
    *out = dup_string(srsd::expr::to_infix(e->e));
  });
}

srsd_status srsd_expr_to_prefix(const srsd_expr* e, char** out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "out");
    using namespace srsd::expr;
    *out = dup_string(to_prefix_text(to_preorder(skeletonize(canonicalize(e->e)))));
  });
}

srsd_status srsd_expr_node_count(const srsd_expr* e, size_t* out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "out");
    *out = e->e.node_count();
  });
}

srsd_status srsd_expr_op_count(const srsd_expr* e, size_t* out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "out");
    *out = srsd::expr::count_ops(e->e);
  });
}

srsd_status srsd_expr_evaluate(const srsd_expr* e, const double* x, size_t n_vars, double* out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "out");
    if (n_vars) require(x, "x");
    *out = srsd::expr::evaluate(e->e, std::span<const double>(x, n_vars));
  });
}

srsd_status srsd_ned(const srsd_expr* pred, const srsd_expr* truth, double* ned, size_t* distance, size_t* truth_size) {
  return guarded([&] {
    require(pred, "pred");
    require(truth, "truth");
    const auto d = srsd::treedist::compare_expressions(pred->e, truth->e);
    if (ned) *ned = d.normalized;
    if (distance) *distance = d.distance;
    if (truth_size) *truth_size = d.truth_size;
  });
}

srsd_status srsd_is_symbolic_solution(const srsd_expr* pred, const srsd_expr* truth, int* out) {
  return guarded([&] {
    require(pred, "pred");
    require(truth, "truth");
    require(out, "out");
    *out = srsd::evalkit::is_symbolic_solution(pred->e, truth->e) ? 1 : 0;
  });
}

srsd_status srsd_r_squared(const double* pred, const double* target, size_t n, double* out) {
  return guarded([&] {
    require(pred, "pred");
    require(target, "target");
    require(out, "out");
    const auto r = srsd::evalkit::r_squared({pred, n}, {target, n});
    if (!r) throw srsd::DataError("targets have zero variance");
    *out = *r;
  });
}

srsd_status srsd_catalog_builtin(const char* set, srsd_catalog** out) {
  return guarded([&] {
    require(out, "out");
    const std::string s = str_or(set, "all");
    auto* c = new srsd_catalog;
    if (s == "all") {
      c->specs = srsd::catalog::builtin();
    } else if (auto d = srsd::catalog::difficulty_from_string(s)) {
      c->specs = srsd::catalog::builtin_set(*d);
    } else {
      delete c;
      throw srsd::InvalidArgument("unknown set '" + s + "'");
    }
    *out = c;
  });
}

srsd_status srsd_catalog_load_file(const char* path, srsd_catalog** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new srsd_catalog{srsd::catalog::load_file(path)};
  });
}

void srsd_catalog_free(srsd_catalog* c) { delete c; }

size_t srsd_catalog_size(const srsd_catalog* c) { return c ? c->specs.size() : 0; }

srsd_status srsd_catalog_id(const srsd_catalog* c, size_t i, const char** out) {
  return guarded([&] {
    require(out, "out");
    *out = spec_at(c, i).id().c_str();
  });
}

srsd_status srsd_catalog_set(const srsd_catalog* c, size_t i, const char** out) {
  return guarded([&] {
    require(out, "out");
    *out = srsd::catalog::to_string(spec_at(c, i).set()).data();
  });
}

srsd_status srsd_catalog_formula(const srsd_catalog* c, size_t i, const char** out) {
  return guarded([&] {
    require(out, "out");
    *out = spec_at(c, i).formula().c_str();
  });
}

srsd_status srsd_catalog_true_expr(const srsd_catalog* c, size_t i, srsd_expr** out) {
  return guarded([&] {
    require(out, "out");
    *out = new srsd_expr{spec_at(c, i).true_expression()};
  });
}

srsd_status srsd_catalog_domain_range(const srsd_catalog* c, size_t i, double* out, int* has_value) {
  return guarded([&] {
    require(out, "out");
    require(has_value, "has_value");
    const auto r = srsd::catalog::domain_range(spec_at(c, i));
    *has_value = r ? 1 : 0;
    *out = r ? *r : 0.0;
  });
}

srsd_status srsd_catalog_save(const srsd_catalog* c, char** out) {
  return guarded([&] {
    require(c, "catalog");
    require(out, "out");
    *out = dup_string(srsd::catalog::save(c->specs));
  });
}

void srsd_generate_options_init(srsd_generate_options* o) {
  if (!o) return;
  srsd::workflow::GenerateOptions d;
  *o = {};
  o->set = "easy";
  o->rows = d.rows;
  for (int i = 0; i < 3; ++i) o->ratios[i] = d.ratios[i];
  o->noise_scale = SRSD_NOISE_MEAN;
}

void srsd_eval_options_init(srsd_eval_options* o) {
  if (!o) return;
  *o = {};
  o->tau = srsd::evalkit::kDefaultTau;
}

void srsd_complexity_options_init(srsd_complexity_options* o) {
  if (!o) return;
  *o = {};
  o->set = "all";
}

void srsd_synth_options_init(srsd_synth_options* o) {
  if (!o) return;
  srsd::workflow::SynthOptions d;
  *o = {};
  o->n_equations = d.n_equations;
  o->max_tokens = d.max_tokens;
  o->range_sets = d.range_sets;
  o->rows = d.rows;
  for (int i = 0; i < 3; ++i) o->ratios[i] = d.ratios[i];
  o->k_lo = d.k_lo;
  o->k_hi = d.k_hi;
  o->alpha = d.alpha;
  o->train_set = "all";
}

void srsd_leakcheck_options_init(srsd_leakcheck_options* o) {
  if (!o) return;
  *o = {};
  o->catalog = "all";
}

void srsd_discover_options_init(srsd_discover_options* o) {
  if (!o) return;
  *o = {};
  o->restarts = srsd::workflow::DiscoverOptions{}.restarts;
}

srsd_status srsd_run_generate(const srsd_generate_options* o, char** out) {
  return guarded([&] {
    require(o, "options");
    require(out, "out");
    srsd::workflow::GenerateOptions w;
    w.set = str_or(o->set, "easy");
    w.catalog_paths = strings(o->catalog_paths, o->n_catalog_paths);
    w.out_dir = str_or(o->out_dir, "");
    w.seed = o->seed;
    w.rows = o->rows;
    w.ratios = {o->ratios[0], o->ratios[1], o->ratios[2]};
    w.gamma = o->gamma;
    w.noise_scale = o->noise_scale == SRSD_NOISE_RMS ? srsd::datagen::NoiseScale::Rms : srsd::datagen::NoiseScale::MeanTarget;
    w.workers = o->workers;
    *out = dup_string(srsd::workflow::run_generate(w));
  });
}

srsd_status srsd_run_ned(const char* pred_path, const char* truth_path, char** out) {
  return guarded([&] {
    require(pred_path, "pred_path");
    require(truth_path, "truth_path");
    require(out, "out");
    *out = dup_string(srsd::workflow::run_ned(pred_path, truth_path));
  });
}

srsd_status srsd_run_eval(const srsd_eval_options* o, char** out) {
  return guarded([&] {
    require(o, "options");
    require(out, "out");
    srsd::workflow::EvalOptions w;
    w.pred_dir = str_or(o->pred_dir, "");
    w.data_dir = str_or(o->data_dir, "");
    if (w.pred_dir.empty() || w.data_dir.empty()) throw srsd::InvalidArgument("prediction and data directories are required");
    w.tau = o->tau;
    w.problems = strings(o->problems, o->n_problems);
    w.workers = o->workers;
    *out = dup_string(srsd::workflow::run_eval(w));
  });
}

srsd_status srsd_run_complexity(const srsd_complexity_options* o, char** out) {
  return guarded([&] {
    require(o, "options");
    require(out, "out");
    srsd::workflow::ComplexityOptions w;
    w.set = str_or(o->set, "all");
    w.catalog_paths = strings(o->catalog_paths, o->n_catalog_paths);
    *out = dup_string(srsd::workflow::run_complexity(w));
  });
}

srsd_status srsd_run_synth(const srsd_synth_options* o, char** out) {
  return guarded([&] {
    require(o, "options");
    require(out, "out");
    srsd::workflow::SynthOptions w;
    w.out_dir = str_or(o->out_dir, "");
    w.n_equations = o->n_equations;
    w.seed = o->seed;
    w.max_tokens = o->max_tokens;
    w.range_sets = o->range_sets;
    w.rows = o->rows;
    w.ratios = {o->ratios[0], o->ratios[1], o->ratios[2]};
    w.k_lo = o->k_lo;
    w.k_hi = o->k_hi;
    w.alpha = o->alpha;
    w.train_set = str_or(o->train_set, "all");
    w.workers = o->workers;
    *out = dup_string(srsd::workflow::run_synth(w));
  });
}

srsd_status srsd_run_leakcheck(const srsd_leakcheck_options* o, char** out) {
  return guarded([&] {
    require(o, "options");
    require(out, "out");
    srsd::workflow::LeakcheckOptions w;
    w.corpus_dir = str_or(o->corpus_dir, "");
    if (w.corpus_dir.empty()) throw srsd::InvalidArgument("a corpus directory is required");
    w.catalog = str_or(o->catalog, "all");
    *out = dup_string(srsd::workflow::run_leakcheck(w));
  });
}

srsd_status srsd_run_discover(const srsd_discover_options* o, char** out) {
  return guarded([&] {
    require(o, "options");
    require(out, "out");
    srsd::workflow::DiscoverOptions w;
    w.data_dir = str_or(o->data_dir, "");
    if (w.data_dir.empty()) throw srsd::InvalidArgument("a data directory is required");
    w.out_dir = str_or(o->out_dir, "");
    w.gp_config_json = str_or(o->gp_config_json, "");
    w.restarts = o->restarts;
    w.seed = o->seed;
    w.problems = strings(o->problems, o->n_problems);
    w.workers = o->workers;
    *out = dup_string(srsd::workflow::run_discover(w));
  });
}

}  // extern "C"
