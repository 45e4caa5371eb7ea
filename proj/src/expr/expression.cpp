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

#include "srsd/expr.hpp"

#include <algorithm>
#include <cmath>

#include "srsd/error.hpp"

namespace srsd::expr {

namespace {

struct OpInfo {
  Op op;
  std::string_view name;
  int arity;
};

constexpr OpInfo kOps[] = {
    {Op::Add, "add", 0}, {Op::Mul, "mul", 0},   {Op::Pow, "pow", 2},   {Op::Div, "div", 2},   {Op::Neg, "neg", 1},
    {Op::Sin, "sin", 1}, {Op::Cos, "cos", 1},   {Op::Tan, "tan", 1},   {Op::Tanh, "tanh", 1}, {Op::Exp, "exp", 1},
    {Op::Log, "log", 1}, {Op::Sqrt, "sqrt", 1}, {Op::Abs, "abs", 1},
};

constexpr double kRelTol = 1e-12;

}  // namespace

std::string_view op_name(Op op) { return kOps[static_cast<int>(op)].name; }

std::optional<Op> op_from_name(std::string_view name) {
  for (const auto& info : kOps)
    if (info.name == name) return info.op;
  return std::nullopt;
}

int op_arity(Op op) { return kOps[static_cast<int>(op)].arity; }

bool is_nary(Op op) { return op == Op::Add || op == Op::Mul; }

Expression Expression::constant(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("constant must be finite");
  Expression e;
  e.kind_ = NodeKind::Constant;
  e.value_ = value == 0.0 ? 0.0 : value;  // no negative zero
  return e;
}

Expression Expression::variable(int index) {
  if (index < 0) throw InvalidArgument("variable index must be non-negative");
  Expression e;
  e.kind_ = NodeKind::Variable;
  e.index_ = index;
  return e;
}

Expression Expression::op(Op op, std::vector<Expression> children) {
  const int arity = op_arity(op);
  if (arity == 0) {
    if (children.size() < 2)
      throw InvalidArgument(std::string(op_name(op)) + " needs at least 2 operands, got " +
                            std::to_string(children.size()));
  } else if (children.size() != static_cast<std::size_t>(arity)) {
    throw InvalidArgument(std::string(op_name(op)) + " takes " + std::to_string(arity) + " operand(s), got " +
                          std::to_string(children.size()));
  }
  Expression e;
  e.kind_ = NodeKind::Operator;
  e.op_ = op;
  e.children_ = std::move(children);
  return e;
}

std::size_t Expression::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.node_count();
  return n;
}

std::size_t Expression::depth() const {
  std::size_t d = 0;
  for (const auto& c : children_) d = std::max(d, c.depth());
  return d + 1;
}

int Expression::max_var_index() const {
  if (kind_ == NodeKind::Variable) return index_;
  int m = -1;
  for (const auto& c : children_) m = std::max(m, c.max_var_index());
  return m;
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case NodeKind::Constant:
      return a.value_ == b.value_;
    case NodeKind::Variable:
      return a.index_ == b.index_;
    case NodeKind::Operator:
      return a.op_ == b.op_ && a.children_ == b.children_;
  }
  return false;
}

int compare(const Expression& a, const Expression& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case NodeKind::Constant: {
      const double x = a.value(), y = b.value();
      if (std::abs(x - y) <= kRelTol * std::max(std::abs(x), std::abs(y))) return 0;
      return x < y ? -1 : 1;
    }
    case NodeKind::Variable:
      return a.var_index() == b.var_index() ? 0 : (a.var_index() < b.var_index() ? -1 : 1);
    case NodeKind::Operator: {
      if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
      const auto& ca = a.children();
      const auto& cb = b.children();
      if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
      for (std::size_t i = 0; i < ca.size(); ++i)
        if (int c = compare(ca[i], cb[i])) return c;
      return 0;
    }
  }
  return 0;
}

bool approx_equal(const Expression& a, const Expression& b) { return compare(a, b) == 0; }

std::size_t count_ops(const Expression& e) {
  if (!e.is_op()) return 0;
  std::size_t n = 1;
  for (const auto& c : e.children()) n += count_ops(c);
  return n;
}

}  // namespace srsd::expr
