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

#include "srsd/workflow.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "srsd/catalog.hpp"
#include "srsd/error.hpp"
#include "srsd/gp.hpp"
#include "srsd/synthgen.hpp"
#include "srsd/treedist.hpp"

namespace srsd::workflow {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string shortest(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::size_t worker_count(std::size_t requested, std::size_t items) {
  std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(n, items));
}

/// Runs fn(i) for i in [0, n) on a bounded pool. The exception of the lowest
/// failing index is rethrown, so failures do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t w = worker_count(workers, n);
  if (w == 1) {
    loop();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < w; ++t) pool.emplace_back(loop);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<catalog::ProblemSpec> select_specs(const std::string& set, const std::vector<std::string>& paths) {
  std::optional<catalog::Difficulty> want;
  if (set != "all") {
    want = catalog::difficulty_from_string(set);
    if (!want) throw InvalidArgument("unknown set '" + set + "' (expected easy, medium, hard or all)");
  }
  std::vector<catalog::ProblemSpec> all;
  if (paths.empty()) {
    all = catalog::builtin();
  } else {
    for (const auto& p : paths) {
      auto specs = catalog::load_file(p);
      all.insert(all.end(), specs.begin(), specs.end());
    }
  }
  std::vector<catalog::ProblemSpec> out;
  for (auto& s : all)
    if (!want || s.set() == *want) out.push_back(std::move(s));
  return out;
}

void check_ratios(const datagen::Ratios& r) {
  double sum = 0.0;
  for (double x : r) {
    if (!(x > 0.0)) throw InvalidArgument("split ratios must be positive");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("split ratios must sum to 1");
}

json ratios_json(const datagen::Ratios& r) { return json::array({r[0], r[1], r[2]}); }

struct SplitCounts {
  std::size_t train = 0, val = 0, test = 0;
};

SplitCounts write_problem(const catalog::ProblemSpec& spec, const fs::path& dir, std::uint64_t seed, std::size_t rows,
                          const datagen::Ratios& ratios, double gamma, datagen::NoiseScale scale) {
  auto parts = datagen::split(datagen::sample(spec, rows, seed), ratios);
  make_dirs(dir);
  auto emit = [&](datagen::Dataset& ds, const char* name) {
    if (gamma > 0.0) ds = datagen::inject_noise(ds, gamma, datagen::derive_seed(seed, std::string("noise/") + name), scale);
    datagen::write(ds, (dir / (std::string(name) + ".txt")).string());
    return ds.rows();
  };
  SplitCounts c;
  c.train = emit(parts.train, "train");
  c.val = emit(parts.val, "val");
  c.test = emit(parts.test, "test");
  datagen::write_equation(spec.raw_expression(), (dir / "true_eq.txt").string());
  return c;
}

struct ProblemDir {
  std::string id;
  fs::path dir;
  catalog::Difficulty set = catalog::Difficulty::Synthetic;
};

catalog::Difficulty guess_set(const std::string& id) {
  for (const auto& s : catalog::builtin())
    if (s.id() == id) return s.set();
  return catalog::Difficulty::Synthetic;
}

/// Problems under `root`, in manifest order when a manifest lists them,
/// otherwise sorted by directory name.
std::vector<ProblemDir> list_problems(const fs::path& root) {
  if (!fs::is_directory(root)) throw IoError("not a directory: '" + root.string() + "'");
  std::vector<ProblemDir> out;
  const fs::path manifest = root / "manifest.json";
  if (fs::exists(manifest)) {
    json m;
    try {
      m = json::parse(read_text(manifest));
    } catch (const json::parse_error&) {
      throw DataError(manifest.string() + ": malformed JSON");
    }
    if (m.contains("problems") && m["problems"].is_array()) {
      for (const auto& p : m["problems"]) {
        if (!p.contains("id") || !p["id"].is_string()) throw DataError(manifest.string() + ": problem without id");
        ProblemDir d{p["id"].get<std::string>(), root / p["id"].get<std::string>()};
        std::optional<catalog::Difficulty> set;
        if (p.contains("set") && p["set"].is_string()) set = catalog::difficulty_from_string(p["set"].get<std::string>());
        d.set = set ? *set : guess_set(d.id);
        out.push_back(std::move(d));
      }
      return out;
    }
  }
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory() || !fs::exists(entry.path() / "true_eq.txt")) continue;
    const std::string id = entry.path().filename().string();
    out.push_back({id, entry.path(), guess_set(id)});
  }
  std::sort(out.begin(), out.end(), [](const ProblemDir& a, const ProblemDir& b) { return a.id < b.id; });
  return out;
}

std::vector<ProblemDir> filter_problems(std::vector<ProblemDir> all, const std::vector<std::string>& wanted) {
  if (wanted.empty()) return all;
  std::vector<ProblemDir> out;
  for (const auto& id : wanted) {
    auto it = std::find_if(all.begin(), all.end(), [&](const ProblemDir& p) { return p.id == id; });
    if (it == all.end()) throw NotFound("problem '" + id + "' not found");
    out.push_back(*it);
  }
  return out;
}

datagen::Dataset read_split(const fs::path& dir, const char* name) {
  return datagen::read((dir / (std::string(name) + ".txt")).string());
}

std::vector<synthgen::Interval> observed_over_splits(const fs::path& dir) {
  std::vector<synthgen::Interval> ranges;
  for (const char* name : {"train", "val", "test"}) {
    if (!fs::exists(dir / (std::string(name) + ".txt"))) continue;
    const auto r = synthgen::observed_ranges(read_split(dir, name));
    if (ranges.empty()) {
      ranges = r;
      continue;
    }
    if (r.size() != ranges.size()) throw DataError(dir.string() + ": splits disagree on the column count");
    for (std::size_t i = 0; i < r.size(); ++i) {
      ranges[i].first = std::min(ranges[i].first, r[i].first);
      ranges[i].second = std::max(ranges[i].second, r[i].second);
    }
  }
  if (ranges.empty()) throw DataError(dir.string() + ": no data splits");
  return ranges;
}

synthgen::Interval declared_range(const catalog::VariableSpec& v) {
  const auto& d = v.dist;
  if (d.kind == catalog::DistKind::Uniform) return {d.lo, d.hi};
  switch (v.sign) {
    case catalog::Sign::Negative:
      return {-d.hi, -d.lo};
    case catalog::Sign::Any:
      return {-d.hi, d.hi};
    default:
      return {d.lo, d.hi};
  }
}

std::vector<synthgen::LeakageItem> items_from_dir(const fs::path& root) {
  std::vector<synthgen::LeakageItem> items;
  for (const auto& p : list_problems(root))
    items.push_back({p.id, datagen::read_equation((p.dir / "true_eq.txt").string()), observed_over_splits(p.dir)});
  return items;
}

}  // namespace

std::string run_generate(const GenerateOptions& o) {
  if (o.out_dir.empty()) throw InvalidArgument("an output directory is required");
  if (o.rows == 0) throw InvalidArgument("rows must be at least 1");
  if (!(o.gamma >= 0.0)) throw InvalidArgument("noise level must be >= 0");
  check_ratios(o.ratios);
  const auto specs = select_specs(o.set, o.catalog_paths);
  if (specs.empty()) throw DataError("no problems selected");
  const fs::path root(o.out_dir);
  make_dirs(root);

  std::vector<SplitCounts> counts(specs.size());
  std::vector<std::uint64_t> seeds(specs.size());
  parallel_for(specs.size(), o.workers, [&](std::size_t i) {
    seeds[i] = datagen::derive_seed(o.seed, specs[i].id());
    counts[i] = write_problem(specs[i], root / specs[i].id(), seeds[i], o.rows, o.ratios, o.gamma, o.noise_scale);
  });

  json m;
  m["command"] = "generate";
  m["config"] = {{"set", o.set},
                 {"catalogs", o.catalog_paths},
                 {"out", o.out_dir},
                 {"seed", o.seed},
                 {"rows", o.rows},
                 {"ratios", ratios_json(o.ratios)},
                 {"gamma", o.gamma},
                 {"noise_scale", o.noise_scale == datagen::NoiseScale::Rms ? "rms" : "mean"}};
  json problems = json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    problems.push_back({{"id", specs[i].id()},
                        {"set", catalog::to_string(specs[i].set())},
                        {"formula", specs[i].formula()},
                        {"columns", specs[i].sampled_names()},
                        {"seed", seeds[i]},
                        {"rows", {{"train", counts[i].train}, {"val", counts[i].val}, {"test", counts[i].test}}}});
  }
  m["problems"] = std::move(problems);
  const std::string text = dump(m);
  write_text(root / "manifest.json", text);
  return text;
}

std::string run_ned(const std::string& pred_path, const std::string& truth_path) {
  const auto pred = datagen::read_equation(pred_path);
  const auto truth = datagen::read_equation(truth_path);
  const auto d = treedist::compare_expressions(pred, truth);
  json j;
  j["distance"] = d.distance;
  j["truth_size"] = d.truth_size;
  j["ned"] = d.normalized;
  j["pred_skeleton"] = expr::to_prefix_text(expr::to_preorder(expr::skeletonize(expr::canonicalize(pred))));
  j["truth_skeleton"] = expr::to_prefix_text(expr::to_preorder(expr::skeletonize(expr::canonicalize(truth))));
  return dump(j);
}

std::string run_eval(const EvalOptions& o) {
  if (!(o.tau >= 0.0 && o.tau <= 1.0)) throw InvalidArgument("tau must lie in [0, 1]");
  const auto problems = filter_problems(list_problems(o.data_dir), o.problems);
  if (problems.empty()) throw DataError("no problems under '" + o.data_dir + "'");
  std::vector<evalkit::EvalReport> reports(problems.size());
  std::vector<char> missing(problems.size(), 0);
  parallel_for(problems.size(), o.workers, [&](std::size_t i) {
    const auto& p = problems[i];
    const auto truth = datagen::read_equation((p.dir / "true_eq.txt").string());
    const fs::path pdir = fs::path(o.pred_dir) / p.id;
    fs::path pred_file = pdir / "pred_eq.txt";
    if (!fs::exists(pred_file)) pred_file = pdir / "true_eq.txt";
    if (!fs::exists(pred_file)) {
      missing[i] = 1;
      auto& r = reports[i];
      r.problem_id = p.id;
      r.set = p.set;
      r.truth_size = expr::skeletonize(expr::canonicalize(truth)).node_count();
      r.edit_distance = r.truth_size;
      r.ned = 1.0;
      return;
    }
    const auto pred = datagen::read_equation(pred_file.string());
    const auto test = read_split(p.dir, "test");
    std::optional<datagen::Dataset> val;
    if (fs::exists(p.dir / "val.txt")) val = read_split(p.dir, "val");
    reports[i] = evalkit::evaluate_problem(pred, truth, p.id, p.set, test, o.tau, val ? &*val : nullptr);
  });
  json j = json::parse(evalkit::report_json(reports, evalkit::summarize(reports, o.tau)));
  json miss = json::array();
  for (std::size_t i = 0; i < problems.size(); ++i)
    if (missing[i]) miss.push_back(problems[i].id);
  j["missing_predictions"] = std::move(miss);
  return dump(j);
}

std::string run_complexity(const ComplexityOptions& o) {
  const auto specs = select_specs(o.set, o.catalog_paths);
  std::string csv = "id,set,op_count,domain_range\n";
  for (const auto& row : catalog::emit_scatter(specs)) {
    csv += row.id + "," + std::string(catalog::to_string(row.set)) + "," + std::to_string(row.op_count) + ",";
    if (row.domain_range) csv += shortest(*row.domain_range);
    csv += "\n";
  }
  return csv;
}

std::string run_synth(const SynthOptions& o) {
  if (o.out_dir.empty()) throw InvalidArgument("an output directory is required");
  if (o.n_equations == 0) throw InvalidArgument("equation count must be at least 1");
  if (o.max_tokens == 0) throw InvalidArgument("max_tokens must be at least 1");
  if (o.range_sets == 0 || o.range_sets > synthgen::kMaxRangeSets)
    throw InvalidArgument("range sets per equation must lie in [1, 10]");
  if (o.rows == 0) throw InvalidArgument("rows must be at least 1");
  if (o.k_lo > o.k_hi) throw InvalidArgument("k range is empty");
  check_ratios(o.ratios);

  const auto train_specs = select_specs(o.train_set, {});
  const auto model = synthgen::train_bigram(synthgen::skeleton_corpus(train_specs), o.alpha);
  synthgen::SampleOptions sopt;
  sopt.max_tokens = o.max_tokens;
  const synthgen::RangeOptions ropt{o.k_lo, o.k_hi};

  const int width = static_cast<int>(std::to_string(o.n_equations).size());
  struct Equation {
    std::string id;
    synthgen::SampledEquation eq;
    std::vector<catalog::ProblemSpec> specs;
    std::vector<std::vector<int>> ks;
  };
  std::vector<Equation> equations;
  for (std::size_t i = 0; i < o.n_equations; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "S%0*zu", width, i + 1);
    Equation e{buf, synthgen::sample_sequence(model, datagen::derive_seed(o.seed, buf), sopt), {}, {}};
    e.specs = synthgen::assign_range_sets(e.eq.expression, e.id, o.range_sets,
                                          datagen::derive_seed(o.seed, e.id + "/ranges"), ropt, &e.ks);
    equations.push_back(std::move(e));
  }

  struct Job {
    std::size_t eq, set;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < equations.size(); ++i)
    for (std::size_t s = 0; s < equations[i].specs.size(); ++s) jobs.push_back({i, s});
  const fs::path root(o.out_dir);
  make_dirs(root);
  std::vector<char> ok(jobs.size(), 0);
  parallel_for(jobs.size(), o.workers, [&](std::size_t j) {
    const auto& spec = equations[jobs[j].eq].specs[jobs[j].set];
    try {
      write_problem(spec, root / spec.id(), datagen::derive_seed(o.seed, spec.id()), o.rows, o.ratios, 0.0,
                    datagen::NoiseScale::MeanTarget);
      ok[j] = 1;
    } catch (const SamplingInfeasible&) {
      std::error_code ec;
      fs::remove_all(root / spec.id(), ec);
    }
  });

  json m;
  m["command"] = "synth";
  m["config"] = {{"out", o.out_dir},         {"equations", o.n_equations}, {"seed", o.seed},
                 {"max_tokens", o.max_tokens}, {"range_sets", o.range_sets}, {"rows", o.rows},
                 {"ratios", ratios_json(o.ratios)}, {"k_lo", o.k_lo},       {"k_hi", o.k_hi},
                 {"alpha", o.alpha},           {"train_set", o.train_set}};
  json eqs = json::array();
  json problems = json::array();
  std::size_t datasets = 0, skipped = 0;
  for (std::size_t j = 0, i = 0; i < equations.size(); ++i) {
    const auto& e = equations[i];
    json ds = json::array();
    json skip = json::array();
    for (std::size_t s = 0; s < e.specs.size(); ++s, ++j) {
      if (!ok[j]) {
        skip.push_back(e.specs[s].id());
        ++skipped;
        continue;
      }
      ds.push_back({{"id", e.specs[s].id()}, {"k", e.ks[s]}});
      problems.push_back({{"id", e.specs[s].id()}, {"set", "synthetic"}, {"equation", e.id}});
      ++datasets;
    }
    eqs.push_back({{"id", e.id},
                   {"tokens", expr::to_prefix_text(e.eq.tokens)},
                   {"formula", expr::to_infix(e.eq.expression)},
                   {"datasets", std::move(ds)},
                   {"skipped", std::move(skip)}});
  }
  m["equations"] = std::move(eqs);
  m["problems"] = std::move(problems);
  m["counts"] = {{"equations", equations.size()}, {"datasets", datasets}, {"skipped", skipped}};
  const std::string text = dump(m);
  write_text(root / "manifest.json", text);
  return text;
}

std::string run_leakcheck(const LeakcheckOptions& o) {
  const auto corpus = items_from_dir(o.corpus_dir);
  std::vector<synthgen::LeakageItem> targets;
  if (fs::is_directory(o.catalog)) {
    targets = items_from_dir(o.catalog);
  } else {
    for (const auto& s : select_specs(o.catalog, {})) {
      std::vector<synthgen::Interval> ranges;
      for (const auto* v : s.sampled()) ranges.push_back(declared_range(*v));
      targets.push_back({s.id(), s.true_expression(), std::move(ranges)});
    }
  }
  if (corpus.empty() || targets.empty()) throw DataError("leakage check needs a nonempty corpus and target list");
  const auto r = synthgen::leakage_report(corpus, targets);
  json j;
  j["mean_iou"] = r.mean_iou;
  j["mean_pair_iou"] = r.mean_pair_iou;
  j["pairs_compared"] = r.pairs_compared;
  j["iou_evaluations"] = r.iou_evaluations;
  j["corpus_size"] = corpus.size();
  j["target_count"] = targets.size();
  json pairs = json::array();
  for (const auto& p : r.matched_pairs)
    pairs.push_back({{"corpus_id", p.synth_id}, {"target_id", p.target_id}, {"ious", p.ious}, {"mean_iou", p.mean_iou}});
  j["matched_pairs"] = std::move(pairs);
  json ts = json::array();
  for (const auto& t : r.targets) ts.push_back({{"id", t.target_id}, {"matches", t.matches}, {"iou", t.iou}});
  j["targets"] = std::move(ts);
  return dump(j);
}

std::string run_discover(const DiscoverOptions& o) {
  if (o.out_dir.empty()) throw InvalidArgument("an output directory is required");
  if (o.restarts == 0) throw InvalidArgument("restarts must be at least 1");
  const gp::GPConfig base = o.gp_config_json.empty() ? gp::GPConfig{} : gp::parse_config(o.gp_config_json);
  base.validate();
  const auto problems = filter_problems(list_problems(o.data_dir), o.problems);
  if (problems.empty()) throw DataError("no problems under '" + o.data_dir + "'");
  const fs::path root(o.out_dir);
  make_dirs(root);

  std::vector<json> records(problems.size());
  parallel_for(problems.size(), o.workers, [&](std::size_t i) {
    const auto& p = problems[i];
    const auto train = read_split(p.dir, "train");
    const auto val = read_split(p.dir, "val");
    std::vector<expr::Expression> candidates;
    json runs = json::array();
    for (std::size_t r = 0; r < o.restarts; ++r) {
      gp::GPConfig cfg = base;
      cfg.seed = datagen::derive_seed(o.seed + r, p.id);
      const auto res = gp::evolve(train, cfg);
      runs.push_back({{"seed", cfg.seed},
                      {"generations", res.generations_run},
                      {"best_fitness", res.best.front().fitness},
                      {"best", expr::to_infix(res.best.front().expression)}});
      for (const auto& ind : res.best) candidates.push_back(ind.expression);
    }
    json rec = {{"id", p.id}, {"set", catalog::to_string(p.set)}, {"runs", std::move(runs)}, {"candidates", candidates.size()}};
    try {
      const auto sel = evalkit::select_best(candidates, val);
      const auto& best = candidates[sel.index];
      make_dirs(root / p.id);
      datagen::write_equation(best, (root / p.id / "pred_eq.txt").string());
      rec["expression"] = expr::to_infix(best);
      rec["canonical"] = expr::to_infix(expr::canonicalize(best));
      rec["validation_score"] = sel.score.score;
      rec["status"] = "ok";
    } catch (const DataError&) {
      rec["status"] = "no_viable_candidate";
    }
    records[i] = std::move(rec);
  });

  json m;
  m["command"] = "discover";
  m["config"] = {{"data_dir", o.data_dir}, {"out", o.out_dir}, {"restarts", o.restarts}, {"seed", o.seed},
                 {"gp", json::parse(o.gp_config_json.empty() ? "{}" : o.gp_config_json)}};
  json problems_json = json::array();
  for (auto& r : records) problems_json.push_back(std::move(r));
  m["problems"] = std::move(problems_json);
  const std::string text = dump(m);
  write_text(root / "manifest.json", text);
  return text;
}

}  // namespace srsd::workflow
