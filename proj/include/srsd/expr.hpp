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

#ifndef SRSD_EXPR_HPP
#define SRSD_EXPR_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace srsd::expr {

// Declaration order is the label rank used by the canonical operand ordering.
enum class Op : std::uint8_t { Add, Mul, Pow, Div, Neg, Sin, Cos, Tan, Tanh, Exp, Log, Sqrt, Abs };

enum class NodeKind : std::uint8_t { Constant, Variable, Operator };

std::string_view op_name(Op op);
std::optional<Op> op_from_name(std::string_view name);
/// Fixed arity, or 0 for the n-ary add/mul.
int op_arity(Op op);
bool is_nary(Op op);

/// N-ary expression tree over constants, zero-based variables and operators.
/// Value type: copies are deep, instances are immutable after construction.
class Expression {
 public:
  /// Throws InvalidArgument for NaN/Inf.
  static Expression constant(double value);
  static Expression variable(int index);
  /// Validates arity: add/mul need >= 2 children, pow/div 2, the rest 1.
  static Expression op(Op op, std::vector<Expression> children);

  NodeKind kind() const noexcept { return kind_; }
  bool is_constant() const noexcept { return kind_ == NodeKind::Constant; }
  bool is_variable() const noexcept { return kind_ == NodeKind::Variable; }
  bool is_op() const noexcept { return kind_ == NodeKind::Operator; }
  bool is_op(Op o) const noexcept { return kind_ == NodeKind::Operator && op_ == o; }

  Op op() const noexcept { return op_; }
  double value() const noexcept { return value_; }
  int var_index() const noexcept { return index_; }
  const std::vector<Expression>& children() const noexcept { return children_; }
  const Expression& child(std::size_t i) const { return children_.at(i); }

  std::size_t node_count() const;
  std::size_t depth() const;
  /// -1 when the expression has no variables.
  int max_var_index() const;
  bool has_variables() const { return max_var_index() >= 0; }

  /// Exact structural equality (constants compared bitwise as doubles).
  friend bool operator==(const Expression& a, const Expression& b);

 private:
  Expression() = default;

  NodeKind kind_ = NodeKind::Constant;
  Op op_ = Op::Add;
  double value_ = 0.0;
  int index_ = -1;
  std::vector<Expression> children_;
};

/// Total order used for commutative operands: constants < variables < operators;
/// constants by value (equal within relative 1e-12), variables by index,
/// operators by label rank, then child count, then children lexicographically.
int compare(const Expression& a, const Expression& b);
bool approx_equal(const Expression& a, const Expression& b);

// ---------------------------------------------------------------------------
// Parsing and printing

/// Maps an identifier to a variable index, or nullopt if it is not a variable.
using VariableResolver = std::function<std::optional<int>(std::string_view)>;

/// Parses an infix formula. Grammar: decimal/scientific literals, identifiers,
/// `+ - * / ^` (also `**`), unary minus, parentheses, calls of
/// sin cos tan tanh exp log sqrt abs, and `pi`. Named constants are folded to
/// literals. The result is raw: sub becomes add(a, neg(b)), division stays div.
Expression parse(std::string_view text, std::span<const std::string> variable_names,
                 const std::map<std::string, double, std::less<>>& constants = {});
Expression parse(std::string_view text, const VariableResolver& resolve_variable,
                 const std::map<std::string, double, std::less<>>& constants = {});

/// Resolver for `x1, x2, ...` / `X1, X2, ...` (1-based names, 0-based indices).
VariableResolver indexed_variable_resolver();

/// Infix rendering that `parse` reads back. Constants use shortest round-trip form.
std::string to_infix(const Expression& e, std::span<const std::string> variable_names = {});

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

// ---------------------------------------------------------------------------
// Evaluation

/// Strict IEEE-754 evaluation. Throws DomainFault (with the subexpression path)
/// on log of a non-positive value, division by zero, 0^negative, or any
/// non-finite intermediate result.
double evaluate(const Expression& e, std::span<const double> row);

/// Same as evaluate() but reports a fault as nullopt.
std::optional<double> try_evaluate(const Expression& e, std::span<const double> row);

/// Column-major batch evaluation over `n_rows` rows. `columns[j]` points at the
/// values of variable j. Faulting rows come back as NaN.
std::vector<double> evaluate_columns(const Expression& e, std::span<const double* const> columns,
                                     std::size_t n_rows);

// ---------------------------------------------------------------------------
// Canonical form

/// Deterministic rewrite to canonical form: constants folded, div/neg/sqrt
/// eliminated, add/mul flattened and sorted, identities dropped, like terms and
/// like bases combined, zero annihilation.
Expression canonicalize(const Expression& e);

/// True if `e` contains no div/neg/sqrt node and every add/mul is flat.
bool is_canonical_shape(const Expression& e);

/// Operator (internal) node count.
std::size_t count_ops(const Expression& e);

// ---------------------------------------------------------------------------
// Skeletons and preorder tokens

struct Label {
  enum class Kind : std::uint8_t { Operator, Constant, Variable };
  Kind kind = Kind::Constant;
  Op op = Op::Add;
  /// Constant display index (C1, C2, ...) or 1-based variable number (X1, ...).
  int index = 0;

  friend bool operator==(const Label&, const Label&) = default;
};

/// Ordered labeled tree; constants collapsed to C, variable i to X_{i+1}.
struct SkeletonTree {
  Label label;
  std::vector<SkeletonTree> children;

  std::size_t node_count() const;
  friend bool operator==(const SkeletonTree&, const SkeletonTree&) = default;
};

/// C-display indices are assigned in preorder starting at 1.
SkeletonTree skeletonize(const Expression& canonical);

/// Rebuilds an expression from a skeleton and its constant table (indexed by
/// C display index - 1).
Expression from_skeleton(const SkeletonTree& tree, std::span<const double> constants);

/// Constants of `e` in preorder, matching skeletonize()'s display indices.
std::vector<double> constant_table(const Expression& e);

struct Token {
  Label label;
  /// Child count; only meaningful for operators.
  int arity = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

using TokenSequence = std::vector<Token>;

TokenSequence to_preorder(const SkeletonTree& tree);
/// Throws DecodeError for empty, truncated or over-long sequences.
SkeletonTree from_preorder(std::span<const Token> tokens);

/// `add3 mul2 pow sin ... C X1 X2`. The C display index is not printed.
std::string token_text(const Token& t);
std::string to_prefix_text(const TokenSequence& tokens);
/// Throws DecodeError on an unknown token.
Token parse_token(std::string_view text);
TokenSequence parse_prefix_text(std::string_view line);

std::string to_string(const SkeletonTree& tree);

}  // namespace srsd::expr

#endif  // SRSD_EXPR_HPP
