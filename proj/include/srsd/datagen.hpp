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

#ifndef SRSD_DATAGEN_HPP
#define SRSD_DATAGEN_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srsd/catalog.hpp"
#include "srsd/expr.hpp"

namespace srsd::datagen {

enum class Split { All, Train, Val, Test };
std::string_view to_string(Split s);

/// Row-major table; the last column is the target.
struct Dataset {
  std::string problem_id;
  /// Feature names followed by the target name.
  std::vector<std::string> columns;
  std::vector<double> values;
  Split split = Split::All;
  std::uint64_t seed = 0;
  double gamma = 0.0;

  std::size_t n_cols() const { return columns.size(); }
  std::size_t n_features() const { return columns.size() - 1; }
  std::size_t rows() const { return columns.empty() ? 0 : values.size() / columns.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * columns.size() + c]; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * n_cols(), n_cols()}; }
  std::span<const double> features(std::size_t r) const { return {values.data() + r * n_cols(), n_features()}; }
  double target(std::size_t r) const { return at(r, n_features()); }
  std::vector<double> column(std::size_t c) const;
  std::vector<double> targets() const { return column(n_features()); }
  /// Column-major copy of the feature columns, for expr::evaluate_columns.
  std::vector<std::vector<double>> feature_columns() const;
};

/// Per-problem generator seed derived from the master seed and the problem id,
/// so a problem's data does not depend on which other problems run alongside it.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view problem_id);

/// Draws `n` rows from the spec's distributions, rejecting rows on which the
/// formula faults. Throws InvalidArgument for n == 0 and SamplingInfeasible
/// when more than 99% of a 1000-draw window is rejected.
Dataset sample(const catalog::ProblemSpec& spec, std::size_t n, std::uint64_t seed);

using Ratios = std::array<double, 3>;
inline constexpr Ratios kDefaultRatios{0.8, 0.1, 0.1};

struct SplitResult {
  Dataset train, val, test;
};

/// Contiguous, order-preserving split. Train gets round(n*r0) rows, val
/// round(n*r1), test the remainder.
SplitResult split(const Dataset& ds, const Ratios& ratios = kDefaultRatios);

enum class NoiseScale {
  /// sigma = gamma * sqrt(|mean(y)|)
  MeanTarget,
  /// sigma = gamma * sqrt(mean(y^2))
  Rms,
};

/// y <- y + N(0, sigma). gamma == 0 leaves the data untouched.
Dataset inject_noise(const Dataset& ds, double gamma, std::uint64_t seed, NoiseScale scale = NoiseScale::MeanTarget);
double noise_sigma(std::span<const double> targets, double gamma, NoiseScale scale = NoiseScale::MeanTarget);

/// One row per line, whitespace-separated shortest round-trip doubles, target last.
std::string to_text(const Dataset& ds);
/// Column names are set to x1..xn, y.
Dataset from_text(std::string_view text);
void write(const Dataset& ds, const std::string& path);
Dataset read(const std::string& path);

/// Equation file: line 1 is the preorder token skeleton of the canonical
/// expression, line 2 is "constants:" followed by the constant table.
std::string equation_text(const expr::Expression& e);
/// Also accepts a single infix line over x1, x2, ...
expr::Expression parse_equation_text(std::string_view text);
void write_equation(const expr::Expression& e, const std::string& path);
expr::Expression read_equation(const std::string& path);

}  // namespace srsd::datagen

#endif  // SRSD_DATAGEN_HPP
