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

#include "srsd/datagen.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "srsd/error.hpp"

namespace srsd::datagen {

using catalog::DistKind;
using catalog::Sign;
using catalog::ValueClass;
using catalog::VariableSpec;

std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train:
      return "train";
    case Split::Val:
      return "val";
    case Split::Test:
      return "test";
    case Split::All:
      break;
  }
  return "all";
}

std::vector<double> Dataset::column(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = at(r, c);
  return out;
}

std::vector<std::vector<double>> Dataset::feature_columns() const {
  std::vector<std::vector<double>> cols;
  for (std::size_t c = 0; c < n_features(); ++c) cols.push_back(column(c));
  return cols;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view problem_id) {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a
  for (unsigned char c : problem_id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

double draw(const VariableSpec& v, std::mt19937_64& rng) {
  const auto& d = v.dist;
  for (;;) {
    double x;
    if (d.kind == DistKind::LogUniform) {
      std::uniform_real_distribution<double> u(std::log10(d.lo), std::log10(d.hi));
      x = std::pow(10.0, u(rng));
      bool negative = v.sign == Sign::Negative;
      if (v.sign == Sign::Any) negative = std::bernoulli_distribution(0.5)(rng);
      if (negative) x = -x;
    } else {
      x = std::uniform_real_distribution<double>(d.lo, d.hi)(rng);
    }
    if (v.value_class != ValueClass::Float) x = std::round(x);
    if (x == 0.0 && (v.sign == Sign::Positive || v.sign == Sign::Negative)) continue;
    return x;
  }
}

}  // namespace

Dataset sample(const catalog::ProblemSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("row count must be at least 1");
  constexpr std::size_t kWindow = 1000;
  constexpr std::size_t kMinAcceptedPerWindow = 10;

  const auto vars = spec.sampled();
  const auto& f = spec.raw_expression();
  Dataset ds;
  ds.problem_id = spec.id();
  ds.columns = spec.sampled_names();
  ds.columns.push_back("y");
  ds.seed = seed;
  ds.values.reserve(n * ds.columns.size());

  std::mt19937_64 rng(seed);
  std::vector<double> row(vars.size());
  std::size_t accepted = 0, window_attempts = 0, window_accepted = 0;
  while (accepted < n) {
    for (std::size_t j = 0; j < vars.size(); ++j) row[j] = draw(*vars[j], rng);
    ++window_attempts;
    if (auto y = expr::try_evaluate(f, row)) {
      ds.values.insert(ds.values.end(), row.begin(), row.end());
      ds.values.push_back(*y);
      ++accepted;
      ++window_accepted;
    }
    if (window_attempts == kWindow) {
      if (window_accepted < kMinAcceptedPerWindow)
        throw SamplingInfeasible(spec.id() + ": " + std::to_string(kWindow - window_accepted) + " of " +
                                 std::to_string(kWindow) + " draws rejected by domain faults");
      window_attempts = window_accepted = 0;
    }
  }
  return ds;
}

SplitResult split(const Dataset& ds, const Ratios& ratios) {
  for (double r : ratios)
    if (!(r > 0.0)) throw InvalidArgument("split ratios must be positive");
  if (std::abs(ratios[0] + ratios[1] + ratios[2] - 1.0) > 1e-9) throw InvalidArgument("split ratios must sum to 1");
  const std::size_t n = ds.rows();
  const std::size_t n_train = std::min(n, static_cast<std::size_t>(std::llround(static_cast<double>(n) * ratios[0])));
  const std::size_t n_val =
      std::min(n - n_train, static_cast<std::size_t>(std::llround(static_cast<double>(n) * ratios[1])));
  auto part = [&](std::size_t from, std::size_t to, Split tag) {
    Dataset d = ds;
    d.split = tag;
    d.values.assign(ds.values.begin() + static_cast<std::ptrdiff_t>(from * ds.n_cols()),
                    ds.values.begin() + static_cast<std::ptrdiff_t>(to * ds.n_cols()));
    return d;
  };
  return {part(0, n_train, Split::Train), part(n_train, n_train + n_val, Split::Val),
          part(n_train + n_val, n, Split::Test)};
}

double noise_sigma(std::span<const double> y, double gamma, NoiseScale scale) {
  if (y.empty()) return 0.0;
  const double n = static_cast<double>(y.size());
  if (scale == NoiseScale::Rms) {
    const double ss = std::accumulate(y.begin(), y.end(), 0.0, [](double a, double v) { return a + v * v; });
    return gamma * std::sqrt(ss / n);
  }
  return gamma * std::sqrt(std::abs(std::accumulate(y.begin(), y.end(), 0.0) / n));
}

Dataset inject_noise(const Dataset& ds, double gamma, std::uint64_t seed, NoiseScale scale) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("noise level must be a finite value >= 0");
  Dataset out = ds;
  out.gamma = gamma;
  if (gamma == 0.0 || ds.rows() == 0) return out;
  const double sigma = noise_sigma(ds.targets(), gamma, scale);
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> eps(0.0, sigma);
  const std::size_t t = ds.n_features();
  for (std::size_t r = 0; r < out.rows(); ++r) out.values[r * out.n_cols() + t] += eps(rng);
  return out;
}

std::string to_text(const Dataset& ds) {
  std::string out;
  out.reserve(ds.values.size() * 24);
  char buf[64];
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    for (std::size_t c = 0; c < ds.n_cols(); ++c) {
      if (c) out += ' ';
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, ds.at(r, c));
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

Dataset from_text(std::string_view text) {
  Dataset ds;
  std::size_t width = 0, line_no = 0, pos = 0;
  std::vector<double> fields;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    fields.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
      if (ec != std::errc() || ptr != line.data() + j || !std::isfinite(v))
        throw DataError("not a finite number: '" + std::string(line.substr(i, j - i)) + "'", line_no);
      fields.push_back(v);
      i = j;
    }
    if (fields.empty()) continue;
    if (width == 0) {
      if (fields.size() < 2) throw DataError("need at least one feature and a target", line_no);
      width = fields.size();
    } else if (fields.size() != width) {
      throw DataError("expected " + std::to_string(width) + " values, found " + std::to_string(fields.size()), line_no);
    }
    ds.values.insert(ds.values.end(), fields.begin(), fields.end());
  }
  if (width == 0) throw DataError("dataset is empty");
  for (std::size_t c = 0; c + 1 < width; ++c) ds.columns.push_back("x" + std::to_string(c + 1));
  ds.columns.push_back("y");
  return ds;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

void write(const Dataset& ds, const std::string& path) { spill(path, to_text(ds)); }

Dataset read(const std::string& path) {
  try {
    return from_text(slurp(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string equation_text(const expr::Expression& e) {
  const expr::Expression c = expr::canonicalize(e);
  std::string out = expr::to_prefix_text(expr::to_preorder(expr::skeletonize(c)));
  out += "\nconstants:";
  for (double v : expr::constant_table(c)) {
    out += ' ';
    out += expr::format_double(v);
  }
  out += '\n';
  return out;
}

expr::Expression parse_equation_text(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) lines.push_back(line);
    pos = eol + 1;
  }
  if (lines.empty()) throw DataError("equation file is empty");

  std::vector<double> constants;
  bool has_table = false;
  if (lines.size() >= 2) {
    std::string_view t = lines[1];
    const auto start = t.find_first_not_of(" \t");
    t.remove_prefix(start);
    if (t.substr(0, 10) != "constants:") throw DataError("expected 'constants:'", 2);
    has_table = true;
    std::istringstream in{std::string(t.substr(10))};
    std::string tok;
    while (in >> tok) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw DataError("bad constant '" + tok + "'", 2);
      constants.push_back(v);
    }
    if (lines.size() > 2) throw DataError("unexpected content", 3);
  }

  expr::SkeletonTree tree;
  try {
    tree = expr::from_preorder(expr::parse_prefix_text(lines[0]));
  } catch (const DecodeError& prefix_error) {
    if (has_table) throw DataError(prefix_error.what(), 1);
    try {
      return expr::parse(lines[0], expr::indexed_variable_resolver());
    } catch (const ParseError& e) {
      throw DataError(std::string("neither a token sequence nor an infix formula: ") + e.what(), 1);
    }
  }
  const std::size_t n_c = [&] {
    std::size_t k = 0;
    for (const auto& t : expr::to_preorder(tree))
      if (t.label.kind == expr::Label::Kind::Constant) ++k;
    return k;
  }();
  if (n_c != constants.size())
    throw DataError("skeleton has " + std::to_string(n_c) + " constant(s) but the table lists " +
                        std::to_string(constants.size()),
                    2);
  return expr::from_skeleton(tree, constants);
}

void write_equation(const expr::Expression& e, const std::string& path) { spill(path, equation_text(e)); }

expr::Expression read_equation(const std::string& path) {
  try {
    return parse_equation_text(slurp(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace srsd::datagen
