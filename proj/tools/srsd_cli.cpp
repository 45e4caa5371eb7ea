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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srsd/srsd.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Failure {
  int code;
  std::string message;
};

void check(srsd_status st) {
  if (st == SRSD_OK) return;
  throw Failure{st == SRSD_E_INVALID_ARGUMENT ? kExitUsage : kExitData, srsd_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  srsd_string_free(s);
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure{kExitData, "cannot write '" + path + "'"};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitData, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic regression benchmark toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", srsd_version());

  std::uint64_t seed = 0;
  std::size_t workers = 0;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Master seed")->envname("SRSD_SEED");
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", workers, "Worker threads (0 = all cores)");
  };
  const std::vector<std::string> sets{"easy", "medium", "hard", "all"};

  auto* gen = app.add_subcommand("generate", "Sample train/val/test datasets for catalog problems");
  std::string g_set = "easy", g_out, g_scale = "mean";
  std::vector<std::string> g_catalogs;
  std::size_t g_rows = 10000;
  double g_noise = 0.0;
  std::vector<double> g_ratios{0.8, 0.1, 0.1};
  gen->add_option("--set", g_set, "Difficulty set")->check(CLI::IsMember(sets));
  gen->add_option("--catalog", g_catalogs, "Spec files replacing the builtin catalog");
  gen->add_option("--rows", g_rows, "Rows per problem before splitting")->check(CLI::PositiveNumber);
  gen->add_option("--noise", g_noise, "Noise level gamma")->check(CLI::NonNegativeNumber);
  gen->add_option("--noise-scale", g_scale, "mean or rms")->check(CLI::IsMember({"mean", "rms"}));
  gen->add_option("--ratios", g_ratios, "Train, val and test fractions")->expected(3)->delimiter(',');
  gen->add_option("--out", g_out, "Output directory")->required();
  add_seed(gen);
  add_workers(gen);

  auto* ned = app.add_subcommand("ned", "Normalized edit distance between two equation files");
  std::string n_pred, n_truth, n_out;
  ned->add_option("--pred", n_pred)->required();
  ned->add_option("--truth", n_truth)->required();
  ned->add_option("--out", n_out, "Report file (default stdout)");

  auto* ev = app.add_subcommand("eval", "Score predicted equations against generated datasets");
  std::string e_pred, e_data, e_out;
  double e_tau = 0.999;
  std::vector<std::string> e_problems;
  ev->add_option("--pred-dir", e_pred)->required();
  ev->add_option("--data-dir", e_data)->required();
  ev->add_option("--tau", e_tau, "R^2 accuracy threshold")->check(CLI::Range(0.0, 1.0));
  ev->add_option("--problem", e_problems, "Restrict to these problem ids");
  ev->add_option("--out", e_out, "Report file (default stdout)");
  add_workers(ev);

  auto* cx = app.add_subcommand("complexity", "Operation count and domain range per problem (CSV)");
  std::string c_set = "all", c_out;
  std::vector<std::string> c_catalogs;
  cx->add_option("--set", c_set)->check(CLI::IsMember(sets));
  cx->add_option("--catalog", c_catalogs);
  cx->add_option("--out", c_out, "CSV file (default stdout)");

  auto* sy = app.add_subcommand("synth", "Generate a synthetic equation corpus with datasets");
  std::string s_out, s_train = "all";
  std::size_t s_n = 100, s_tokens = 30, s_sets = 3, s_rows = 1000;
  int s_klo = -8, s_khi = 8;
  double s_alpha = 1.0;
  sy->add_option("--n", s_n, "Number of equations")->check(CLI::PositiveNumber);
  sy->add_option("--max-tokens", s_tokens)->check(CLI::PositiveNumber);
  sy->add_option("--range-sets", s_sets, "Range draws per equation")->check(CLI::Range(1, 10));
  sy->add_option("--rows", s_rows)->check(CLI::PositiveNumber);
  sy->add_option("--k-lo", s_klo);
  sy->add_option("--k-hi", s_khi);
  sy->add_option("--alpha", s_alpha, "Bigram smoothing")->check(CLI::NonNegativeNumber);
  sy->add_option("--train-set", s_train)->check(CLI::IsMember(sets));
  sy->add_option("--out", s_out, "Output directory")->required();
  add_seed(sy);
  add_workers(sy);

  auto* lk = app.add_subcommand("leakcheck", "Range overlap between a corpus and the benchmark problems");
  std::string l_corpus, l_catalog = "all", l_out;
  lk->add_option("--corpus", l_corpus, "Problem directory")->required();
  lk->add_option("--catalog", l_catalog, "Problem directory or set name");
  lk->add_option("--out", l_out, "Report file (default stdout)");

  auto* dc = app.add_subcommand("discover", "Fit equations with genetic programming");
  std::string d_data, d_config, d_out;
  std::size_t d_restarts = 5;
  std::vector<std::string> d_problems;
  dc->add_option("--data-dir", d_data)->required();
  dc->add_option("--gp-config", d_config, "GP settings (JSON)");
  dc->add_option("--restarts", d_restarts, "Independent GP runs per problem")->check(CLI::PositiveNumber);
  dc->add_option("--problem", d_problems, "Restrict to these problem ids");
  dc->add_option("--out", d_out, "Prediction directory")->required();
  add_seed(dc);
  add_workers(dc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    char* out = nullptr;
    if (gen->parsed()) {
      if (g_ratios.size() != 3) throw Failure{kExitUsage, "--ratios needs three values"};
      auto paths = c_strings(g_catalogs);
      srsd_generate_options o;
      srsd_generate_options_init(&o);
      o.set = g_set.c_str();
      o.catalog_paths = paths.data();
      o.n_catalog_paths = paths.size();
      o.out_dir = g_out.c_str();
      o.seed = seed;
      o.rows = g_rows;
      for (int i = 0; i < 3; ++i) o.ratios[i] = g_ratios[i];
      o.gamma = g_noise;
      o.noise_scale = g_scale == "rms" ? SRSD_NOISE_RMS : SRSD_NOISE_MEAN;
      o.workers = workers;
      check(srsd_run_generate(&o, &out));
      emit(take(out), "");
    } else if (ned->parsed()) {
      check(srsd_run_ned(n_pred.c_str(), n_truth.c_str(), &out));
      emit(take(out), n_out);
    } else if (ev->parsed()) {
      auto ids = c_strings(e_problems);
      srsd_eval_options o;
      srsd_eval_options_init(&o);
      o.pred_dir = e_pred.c_str();
      o.data_dir = e_data.c_str();
      o.tau = e_tau;
      o.problems = ids.data();
      o.n_problems = ids.size();
      o.workers = workers;
      check(srsd_run_eval(&o, &out));
      emit(take(out), e_out);
    } else if (cx->parsed()) {
      auto paths = c_strings(c_catalogs);
      srsd_complexity_options o;
      srsd_complexity_options_init(&o);
      o.set = c_set.c_str();
      o.catalog_paths = paths.data();
      o.n_catalog_paths = paths.size();
      check(srsd_run_complexity(&o, &out));
      emit(take(out), c_out);
    } else if (sy->parsed()) {
      srsd_synth_options o;
      srsd_synth_options_init(&o);
      o.out_dir = s_out.c_str();
      o.n_equations = s_n;
      o.seed = seed;
      o.max_tokens = s_tokens;
      o.range_sets = s_sets;
      o.rows = s_rows;
      o.k_lo = s_klo;
      o.k_hi = s_khi;
      o.alpha = s_alpha;
      o.train_set = s_train.c_str();
      o.workers = workers;
      check(srsd_run_synth(&o, &out));
      emit(take(out), "");
    } else if (lk->parsed()) {
      srsd_leakcheck_options o;
      srsd_leakcheck_options_init(&o);
      o.corpus_dir = l_corpus.c_str();
      o.catalog = l_catalog.c_str();
      check(srsd_run_leakcheck(&o, &out));
      emit(take(out), l_out);
    } else if (dc->parsed()) {
      const std::string config = d_config.empty() ? std::string() : slurp(d_config);
      auto ids = c_strings(d_problems);
      srsd_discover_options o;
      srsd_discover_options_init(&o);
      o.data_dir = d_data.c_str();
      o.out_dir = d_out.c_str();
      o.gp_config_json = config.empty() ? nullptr : config.c_str();
      o.restarts = d_restarts;
      o.seed = seed;
      o.problems = ids.data();
      o.n_problems = ids.size();
      o.workers = workers;
      check(srsd_run_discover(&o, &out));
      emit(take(out), "");
    }
  } catch (const Failure& f) {
    std::cerr << "srsd: error: " << f.message << "\n";
    return f.code;
  }
  return 0;
}
