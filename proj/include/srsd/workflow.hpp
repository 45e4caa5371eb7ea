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

#ifndef SRSD_WORKFLOW_HPP
#define SRSD_WORKFLOW_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "srsd/datagen.hpp"
#include "srsd/evalkit.hpp"

namespace srsd::workflow {

/// Problem directory layout shared by generate and synth:
/// <root>/<id>/{train,val,test}.txt, <root>/<id>/true_eq.txt, <root>/manifest.json.

struct GenerateOptions {
  /// easy, medium, hard or all.
  std::string set = "easy";
  /// Spec files to use instead of the builtin catalog.
  std::vector<std::string> catalog_paths;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::size_t rows = 10000;
  datagen::Ratios ratios = datagen::kDefaultRatios;
  double gamma = 0.0;
  datagen::NoiseScale noise_scale = datagen::NoiseScale::MeanTarget;
  /// 0 picks the hardware concurrency.
  std::size_t workers = 0;
};

/// Returns the manifest, which is also written to <out_dir>/manifest.json.
std::string run_generate(const GenerateOptions& options);

std::string run_ned(const std::string& pred_path, const std::string& truth_path);

struct EvalOptions {
  std::string pred_dir;
  std::string data_dir;
  double tau = evalkit::kDefaultTau;
  /// Empty means every problem under data_dir.
  std::vector<std::string> problems;
  std::size_t workers = 0;
};

/// Predictions are read from <pred_dir>/<id>/pred_eq.txt, falling back to
/// true_eq.txt. Missing predictions count as misses and are listed.
std::string run_eval(const EvalOptions& options);

struct ComplexityOptions {
  std::string set = "all";
  std::vector<std::string> catalog_paths;
};

/// CSV with header id,set,op_count,domain_range; degenerate ranges are left empty.
std::string run_complexity(const ComplexityOptions& options);

struct SynthOptions {
  std::string out_dir;
  std::size_t n_equations = 100;
  std::uint64_t seed = 0;
  std::size_t max_tokens = 30;
  /// Range draws per equation, at most 10. Infeasible draws are skipped.
  std::size_t range_sets = 3;
  std::size_t rows = 1000;
  datagen::Ratios ratios = datagen::kDefaultRatios;
  int k_lo = -8;
  int k_hi = 8;
  double alpha = 1.0;
  /// Difficulty set whose skeletons train the bigram model.
  std::string train_set = "all";
  std::size_t workers = 0;
};

std::string run_synth(const SynthOptions& options);

struct LeakcheckOptions {
  std::string corpus_dir;
  /// A problem directory, or a set name to use the catalog's declared ranges.
  std::string catalog = "all";
};

std::string run_leakcheck(const LeakcheckOptions& options);

struct DiscoverOptions {
  std::string data_dir;
  std::string out_dir;
  /// GP settings as JSON; empty uses the defaults.
  std::string gp_config_json;
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  std::vector<std::string> problems;
  std::size_t workers = 0;
};

/// Runs GP `restarts` times per problem, picks the best candidate on the
/// validation split and writes <out_dir>/<id>/pred_eq.txt.
std::string run_discover(const DiscoverOptions& options);

}  // namespace srsd::workflow

#endif  // SRSD_WORKFLOW_HPP
