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

#include "srsd/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "builtin_data.hpp"
#include "srsd/error.hpp"

namespace srsd::catalog {

using json = nlohmann::json;

namespace {

constexpr std::pair<DistKind, std::string_view> kDistNames[] = {
    {DistKind::Uniform, "uniform"}, {DistKind::LogUniform, "loguniform"}, {DistKind::Fixed, "fixed"}};
constexpr std::pair<ValueClass, std::string_view> kClassNames[] = {
    {ValueClass::Float, "float"}, {ValueClass::Integer, "integer"}, {ValueClass::WideInteger, "wide_integer"}};
constexpr std::pair<Sign, std::string_view> kSignNames[] = {
    {Sign::Positive, "positive"}, {Sign::Negative, "negative"}, {Sign::NonNegative, "nonnegative"}, {Sign::Any, "any"}};
constexpr std::pair<Difficulty, std::string_view> kSetNames[] = {{Difficulty::Easy, "easy"},
                                                                 {Difficulty::Medium, "medium"},
                                                                 {Difficulty::Hard, "hard"},
                                                                 {Difficulty::Synthetic, "synthetic"}};

template <typename E, std::size_t N>
std::string_view name_of(const std::pair<E, std::string_view> (&table)[N], E v) {
  for (const auto& [k, n] : table)
    if (k == v) return n;
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::pair<E, std::string_view> (&table)[N], std::string_view s) {
  for (const auto& [k, n] : table)
    if (n == s) return k;
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string choices(const std::pair<E, std::string_view> (&table)[N]) {
  std::string out;
  for (const auto& [k, n] : table) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

std::string_view to_string(DistKind k) { return name_of(kDistNames, k); }
std::string_view to_string(ValueClass c) { return name_of(kClassNames, c); }
std::string_view to_string(Sign s) { return name_of(kSignNames, s); }
std::string_view to_string(Difficulty d) { return name_of(kSetNames, d); }
std::optional<Difficulty> difficulty_from_string(std::string_view s) { return lookup(kSetNames, s); }

ProblemSpec::ProblemSpec(std::string id, Difficulty set, std::string formula, std::vector<VariableSpec> variables)
    : id_(std::move(id)), set_(set), formula_(std::move(formula)), variables_(std::move(variables)) {
  if (id_.empty()) throw SchemaError("id", "must be a non-empty string");
  bool seen_constant = false;
  std::size_t n_sampled = 0;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto& v = variables_[i];
    const std::string path = "variables[" + std::to_string(i) + "]";
    if (!is_identifier(v.name) || v.name == "pi") throw SchemaError(path + ".name", "invalid name '" + v.name + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (variables_[j].name == v.name) throw SchemaError(path + ".name", "duplicate name '" + v.name + "'");
    const auto& d = v.dist;
    if (d.kind == DistKind::Fixed) {
      if (!std::isfinite(d.value)) throw SchemaError(path + ".dist.value", "must be finite");
      seen_constant = true;
      continue;
    }
    if (seen_constant) throw SchemaError(path, "sampled variables must precede fixed constants");
    ++n_sampled;
    if (!std::isfinite(d.lo) || !std::isfinite(d.hi)) throw SchemaError(path + ".dist", "bounds must be finite");
    if (!(d.lo < d.hi)) throw SchemaError(path + ".dist", "lo must be less than hi");
    if (d.kind == DistKind::LogUniform && d.lo <= 0.0) throw SchemaError(path + ".dist.lo", "loguniform needs lo > 0");
    if (d.kind == DistKind::Uniform) {
      if ((v.sign == Sign::Positive || v.sign == Sign::NonNegative) && d.lo < 0.0)
        throw SchemaError(path + ".sign", "range reaches below zero");
      if (v.sign == Sign::Negative && d.hi > 0.0) throw SchemaError(path + ".sign", "range reaches above zero");
    }
  }
  if (n_sampled == 0) throw SchemaError("variables", "needs at least one sampled variable");

  try {
    raw_ = std::make_shared<const expr::Expression>(expr::parse(formula_, sampled_names(), constants()));
  } catch (const ParseError& e) {
    throw SchemaError("formula", e.what());
  }
  canonical_ = std::make_shared<const expr::Expression>(expr::canonicalize(*raw_));
}

std::vector<const VariableSpec*> ProblemSpec::sampled() const {
  std::vector<const VariableSpec*> out;
  for (const auto& v : variables_)
    if (!v.is_constant()) out.push_back(&v);
  return out;
}

std::vector<std::string> ProblemSpec::sampled_names() const {
  std::vector<std::string> out;
  for (const auto& v : variables_)
    if (!v.is_constant()) out.push_back(v.name);
  return out;
}

std::size_t ProblemSpec::n_sampled() const {
  return static_cast<std::size_t>(
      std::count_if(variables_.begin(), variables_.end(), [](const VariableSpec& v) { return !v.is_constant(); }));
}

std::map<std::string, double, std::less<>> ProblemSpec::constants() const {
  std::map<std::string, double, std::less<>> out;
  for (const auto& v : variables_)
    if (v.is_constant()) out.emplace(v.name, v.dist.value);
  return out;
}

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
  if (a.id_ != b.id_ || a.set_ != b.set_ || a.formula_ != b.formula_ || a.variables_.size() != b.variables_.size())
    return false;
  for (std::size_t i = 0; i < a.variables_.size(); ++i) {
    const auto& x = a.variables_[i];
    const auto& y = b.variables_[i];
    if (x.name != y.name || x.value_class != y.value_class || x.sign != y.sign || x.dist.kind != y.dist.kind)
      return false;
    if (x.is_constant() ? x.dist.value != y.dist.value : (x.dist.lo != y.dist.lo || x.dist.hi != y.dist.hi))
      return false;
  }
  return true;
}

namespace {

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

double number_field(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) throw SchemaError(path + "." + key, "expected a number");
  return v.get<double>();
}

template <typename E, std::size_t N>
E enum_field(const json& obj, const char* key, const std::string& path,
             const std::pair<E, std::string_view> (&table)[N]) {
  const std::string s = string_field(obj, key, path);
  if (auto v = lookup(table, s)) return *v;
  throw SchemaError(path + "." + key, "unknown value '" + s + "' (expected one of: " + choices(table) + ")");
}

VariableSpec parse_variable(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  VariableSpec v;
  v.name = string_field(j, "name", path);
  const json& d = field(j, "dist", path);
  const std::string dpath = path + ".dist";
  if (!d.is_object()) throw SchemaError(dpath, "expected an object");
  v.dist.kind = enum_field(d, "kind", dpath, kDistNames);
  if (v.dist.kind == DistKind::Fixed) {
    v.dist.value = number_field(d, "value", dpath);
  } else {
    v.dist.lo = number_field(d, "lo", dpath);
    v.dist.hi = number_field(d, "hi", dpath);
  }
  v.value_class = enum_field(j, "class", path, kClassNames);
  v.sign = enum_field(j, "sign", path, kSignNames);
  return v;
}

std::string number_text(double v) {
  std::string t = expr::format_double(v);
  if (t.find_first_of(".e") == std::string::npos) t += ".0";
  return t;
}

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

// Hand-rolled so that numbers use the shortest round-trip form.
void write_spec(const ProblemSpec& s, std::string& out) {
  out += "  {\n";
  out += "    \"formula\": " + json_string(s.formula()) + ",\n";
  out += "    \"id\": " + json_string(s.id()) + ",\n";
  out += "    \"set\": " + json_string(to_string(s.set())) + ",\n";
  out += "    \"variables\": [";
  const auto& vars = s.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& v = vars[i];
    out += i ? ",\n" : "\n";
    out += "      {\n";
    out += "        \"class\": " + json_string(to_string(v.value_class)) + ",\n";
    out += "        \"dist\": {\n";
    if (v.is_constant()) {
      out += "          \"kind\": \"fixed\",\n";
      out += "          \"value\": " + number_text(v.dist.value) + "\n";
    } else {
      out += "          \"hi\": " + number_text(v.dist.hi) + ",\n";
      out += "          \"kind\": " + json_string(to_string(v.dist.kind)) + ",\n";
      out += "          \"lo\": " + number_text(v.dist.lo) + "\n";
    }
    out += "        },\n";
    out += "        \"name\": " + json_string(v.name) + ",\n";
    out += "        \"sign\": " + json_string(to_string(v.sign)) + "\n";
    out += "      }";
  }
  out += vars.empty() ? "]\n" : "\n    ]\n";
  out += "  }";
}

}  // namespace

std::vector<ProblemSpec> parse_specs(std::string_view json_text, std::string_view source) {
  const std::string prefix = source.empty() ? std::string() : std::string(source) + ":";
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(prefix + "$", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_array()) throw SchemaError(prefix + "$", "expected an array of problems");
  std::vector<ProblemSpec> out;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const std::string path = prefix + "[" + std::to_string(i) + "]";
    const json& p = root[i];
    if (!p.is_object()) throw SchemaError(path, "expected an object");
    const std::string id = string_field(p, "id", path);
    const Difficulty set = enum_field(p, "set", path, kSetNames);
    const std::string formula = string_field(p, "formula", path);
    const json& vars = field(p, "variables", path);
    if (!vars.is_array()) throw SchemaError(path + ".variables", "expected an array");
    std::vector<VariableSpec> variables;
    for (std::size_t k = 0; k < vars.size(); ++k)
      variables.push_back(parse_variable(vars[k], path + ".variables[" + std::to_string(k) + "]"));
    try {
      out.emplace_back(id, set, formula, std::move(variables));
    } catch (const SchemaError& e) {
      throw SchemaError(path + "." + e.field_path(), std::string(e.what()).substr(e.field_path().size() + 2));
    }
    for (std::size_t k = 0; k + 1 < out.size(); ++k)
      if (out[k].id() == id) throw SchemaError(path + ".id", "duplicate id '" + id + "'");
  }
  return out;
}

std::vector<ProblemSpec> load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open problem-spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_specs(ss.str(), path);
}

std::string save(std::span<const ProblemSpec> specs) {
  if (specs.empty()) return "[]\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (i) out += ",\n";
    write_spec(specs[i], out);
  }
  out += "\n]\n";
  return out;
}

void save_file(const std::string& path, std::span<const ProblemSpec> specs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << save(specs);
  if (!out) throw IoError("write failed for '" + path + "'");
}

const std::vector<ProblemSpec>& builtin() {
  static const std::vector<ProblemSpec> all = [] {
    std::vector<ProblemSpec> v;
    for (auto [text, name] : {std::pair{detail::kBuiltinEasy, "easy.json"},
                              std::pair{detail::kBuiltinMedium, "medium.json"},
                              std::pair{detail::kBuiltinHard, "hard.json"}}) {
      auto part = parse_specs(text, name);
      v.insert(v.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return v;
  }();
  return all;
}

std::vector<ProblemSpec> builtin_set(Difficulty set) {
  std::vector<ProblemSpec> out;
  for (const auto& s : builtin())
    if (s.set() == set) out.push_back(s);
  return out;
}

const ProblemSpec& load_builtin(std::string_view id) {
  for (const auto& s : builtin())
    if (s.id() == id) return s;
  throw NotFound("unknown problem id '" + std::string(id) + "'");
}

std::optional<double> domain_range(const ProblemSpec& spec) {
  std::vector<double> s;
  for (const auto* v : spec.sampled()) {
    s.push_back(v->dist.lo);
    s.push_back(v->dist.hi);
  }
  if (s.empty()) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  if (*hi == *lo) return std::nullopt;
  return std::abs(std::log10(*hi - *lo));
}

ComplexityScore complexity(const ProblemSpec& spec) {
  return {expr::count_ops(spec.true_expression()), domain_range(spec)};
}

std::vector<ScatterRow> emit_scatter(std::span<const ProblemSpec> specs) {
  std::vector<ScatterRow> rows;
  for (const auto& s : specs) {
    const auto c = complexity(s);
    rows.push_back({s.id(), c.op_count, c.domain_range, s.set()});
  }
  return rows;
}

}  // namespace srsd::catalog
