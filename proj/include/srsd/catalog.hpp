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

#ifndef SRSD_CATALOG_HPP
#define SRSD_CATALOG_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srsd/expr.hpp"

namespace srsd::catalog {

enum class DistKind { Uniform, LogUniform, Fixed };
enum class ValueClass { Float, Integer, WideInteger };
enum class Sign { Positive, Negative, NonNegative, Any };
/// Synthetic is only used for generated corpora, never by the builtin catalog.
enum class Difficulty { Easy, Medium, Hard, Synthetic };

std::string_view to_string(DistKind k);
std::string_view to_string(ValueClass c);
std::string_view to_string(Sign s);
std::string_view to_string(Difficulty d);
std::optional<Difficulty> difficulty_from_string(std::string_view s);

struct Distribution {
  DistKind kind = DistKind::Uniform;
  double lo = 0.0;
  double hi = 0.0;
  /// Only for Fixed.
  double value = 0.0;

  static Distribution uniform(double lo, double hi) { return {DistKind::Uniform, lo, hi, 0.0}; }
  static Distribution loguniform(double lo, double hi) { return {DistKind::LogUniform, lo, hi, 0.0}; }
  static Distribution fixed(double value) { return {DistKind::Fixed, 0.0, 0.0, value}; }
  bool ranged() const { return kind != DistKind::Fixed; }
};

struct VariableSpec {
  std::string name;
  Distribution dist;
  ValueClass value_class = ValueClass::Float;
  Sign sign = Sign::Positive;

  bool is_constant() const { return dist.kind == DistKind::Fixed; }
};

/// One benchmark problem. Sampled variables come first in `variables`, fixed
/// constants after them; both are bound by name in `formula`.
class ProblemSpec {
 public:
  /// Validates and parses the formula. Throws SchemaError with a field path.
  ProblemSpec(std::string id, Difficulty set, std::string formula, std::vector<VariableSpec> variables);

  const std::string& id() const { return id_; }
  Difficulty set() const { return set_; }
  const std::string& formula() const { return formula_; }
  const std::vector<VariableSpec>& variables() const { return variables_; }

  /// Sampled (non-constant) variables, in column order.
  std::vector<const VariableSpec*> sampled() const;
  std::vector<std::string> sampled_names() const;
  std::size_t n_sampled() const;
  std::map<std::string, double, std::less<>> constants() const;

  /// Formula as written, constants substituted, over the sampled columns.
  const expr::Expression& raw_expression() const { return *raw_; }
  /// Canonical form of raw_expression().
  const expr::Expression& true_expression() const { return *canonical_; }

  friend bool operator==(const ProblemSpec& a, const ProblemSpec& b);

 private:
  std::string id_;
  Difficulty set_;
  std::string formula_;
  std::vector<VariableSpec> variables_;
  std::shared_ptr<const expr::Expression> raw_;
  std::shared_ptr<const expr::Expression> canonical_;
};

/// Problem-spec JSON: an array of {id, set, formula, variables[{name, dist, class, sign}]}.
/// `source` prefixes schema error paths.
std::vector<ProblemSpec> parse_specs(std::string_view json_text, std::string_view source = "");
std::vector<ProblemSpec> load_file(const std::string& path);
/// Canonical file form: keys sorted, two-space indent, trailing newline.
std::string save(std::span<const ProblemSpec> specs);
void save_file(const std::string& path, std::span<const ProblemSpec> specs);

/// All 120 builtin problems: easy, then medium, then hard, each in table order.
const std::vector<ProblemSpec>& builtin();
std::vector<ProblemSpec> builtin_set(Difficulty set);
/// Throws NotFound.
const ProblemSpec& load_builtin(std::string_view id);

/// |log10|max S - min S|| over the ranged endpoints S of the sampled variables;
/// nullopt when degenerate (no ranged variable, or max S == min S).
std::optional<double> domain_range(const ProblemSpec& spec);

struct ComplexityScore {
  std::size_t op_count = 0;
  std::optional<double> domain_range;
};

ComplexityScore complexity(const ProblemSpec& spec);

struct ScatterRow {
  std::string id;
  std::size_t op_count = 0;
  std::optional<double> domain_range;
  Difficulty set = Difficulty::Easy;
};

std::vector<ScatterRow> emit_scatter(std::span<const ProblemSpec> specs);

}  // namespace srsd::catalog

#endif  // SRSD_CATALOG_HPP
