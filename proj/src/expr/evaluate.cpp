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

#include <algorithm>
#include <cmath>
#include <limits>

#include "srsd/error.hpp"
#include "srsd/expr.hpp"

namespace srsd::expr {

namespace {

enum class Fault { None, Log, Sqrt, DivZero, ZeroNegPow, NegBasePow, NonFinite };

const char* fault_message(Fault f) {
  switch (f) {
    case Fault::Log:
      return "log of non-positive value";
    case Fault::Sqrt:
      return "sqrt of negative value";
    case Fault::DivZero:
      return "division by zero";
    case Fault::ZeroNegPow:
      return "zero raised to a negative power";
    case Fault::NegBasePow:
      return "negative base raised to a non-integer power";
    case Fault::NonFinite:
      return "non-finite result";
    case Fault::None:
      break;
  }
  return "domain fault";
}

// Applies a fixed-arity operator; reports a fault instead of producing NaN/Inf.
Fault apply(Op op, double a, double b, double& out) {
  switch (op) {
    case Op::Pow:
      if (a == 0.0 && b < 0.0) return Fault::ZeroNegPow;
      if (a < 0.0 && b != std::trunc(b)) return Fault::NegBasePow;
      out = std::pow(a, b);
      break;
    case Op::Div:
      if (b == 0.0) return Fault::DivZero;
      out = a / b;
      break;
    case Op::Neg:
      out = -a;
      break;
    case Op::Sin:
      out = std::sin(a);
      break;
    case Op::Cos:
      out = std::cos(a);
      break;
    case Op::Tan:
      out = std::tan(a);
      break;
    case Op::Tanh:
      out = std::tanh(a);
      break;
    case Op::Exp:
      out = std::exp(a);
      break;
    case Op::Log:
      if (a <= 0.0) return Fault::Log;
      out = std::log(a);
      break;
    case Op::Sqrt:
      if (a < 0.0) return Fault::Sqrt;
      out = std::sqrt(a);
      break;
    case Op::Abs:
      out = std::abs(a);
      break;
    case Op::Add:
    case Op::Mul:
      break;
  }
  return std::isfinite(out) ? Fault::None : Fault::NonFinite;
}

struct FaultInfo {
  Fault fault = Fault::None;
  std::string path;
};

Fault eval(const Expression& e, std::span<const double> row, double& out, FaultInfo* info) {
  switch (e.kind()) {
    case NodeKind::Constant:
      out = e.value();
      return Fault::None;
    case NodeKind::Variable: {
      const auto i = static_cast<std::size_t>(e.var_index());
      if (i >= row.size())
        throw InvalidArgument("row has " + std::to_string(row.size()) + " values but expression uses x" +
                              std::to_string(i + 1));
      out = row[i];
      return std::isfinite(out) ? Fault::None : Fault::NonFinite;
    }
    case NodeKind::Operator:
      break;
  }
  const auto& ch = e.children();
  double vals[2] = {0.0, 0.0};
  double acc = e.op() == Op::Mul ? 1.0 : 0.0;
  for (std::size_t i = 0; i < ch.size(); ++i) {
    double v = 0.0;
    if (Fault f = eval(ch[i], row, v, info); f != Fault::None) {
      if (info) info->path = "/" + std::to_string(i) + info->path;
      return f;
    }
    if (e.op() == Op::Add) {
      acc += v;
    } else if (e.op() == Op::Mul) {
      acc *= v;
    } else {
      vals[i] = v;
    }
  }
  if (is_nary(e.op())) {
    out = acc;
    return std::isfinite(out) ? Fault::None : Fault::NonFinite;
  }
  return apply(e.op(), vals[0], vals[1], out);
}

}  // namespace

double evaluate(const Expression& e, std::span<const double> row) {
  double out = 0.0;
  FaultInfo info;
  if (Fault f = eval(e, row, out, &info); f != Fault::None) throw DomainFault(fault_message(f), info.path);
  return out;
}

std::optional<double> try_evaluate(const Expression& e, std::span<const double> row) {
  double out = 0.0;
  if (eval(e, row, out, nullptr) != Fault::None) return std::nullopt;
  return out;
}

namespace {

void eval_columns(const Expression& e, std::span<const double* const> columns, std::size_t n, std::vector<double>& out) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  out.assign(n, 0.0);
  switch (e.kind()) {
    case NodeKind::Constant:
      std::fill(out.begin(), out.end(), e.value());
      return;
    case NodeKind::Variable: {
      const auto j = static_cast<std::size_t>(e.var_index());
      if (j >= columns.size())
        throw InvalidArgument("expression uses x" + std::to_string(j + 1) + " but only " +
                              std::to_string(columns.size()) + " columns were given");
      for (std::size_t r = 0; r < n; ++r) out[r] = std::isfinite(columns[j][r]) ? columns[j][r] : nan;
      return;
    }
    case NodeKind::Operator:
      break;
  }
  const auto& ch = e.children();
  std::vector<double> tmp;
  if (is_nary(e.op())) {
    eval_columns(ch[0], columns, n, out);
    for (std::size_t i = 1; i < ch.size(); ++i) {
      eval_columns(ch[i], columns, n, tmp);
      if (e.op() == Op::Add) {
        for (std::size_t r = 0; r < n; ++r) out[r] += tmp[r];
      } else {
        for (std::size_t r = 0; r < n; ++r) out[r] *= tmp[r];
      }
    }
    for (double& v : out)
      if (!std::isfinite(v)) v = nan;
    return;
  }
  eval_columns(ch[0], columns, n, out);
  if (ch.size() == 2) eval_columns(ch[1], columns, n, tmp);
  for (std::size_t r = 0; r < n; ++r) {
    const double a = out[r];
    const double b = ch.size() == 2 ? tmp[r] : 0.0;
    if (std::isnan(a) || std::isnan(b)) {
      out[r] = nan;
      continue;
    }
    double v = 0.0;
    out[r] = apply(e.op(), a, b, v) == Fault::None ? v : nan;
  }
}

}  // namespace

std::vector<double> evaluate_columns(const Expression& e, std::span<const double* const> columns, std::size_t n_rows) {
  std::vector<double> out;
  eval_columns(e, columns, n_rows, out);
  return out;
}

}  // namespace srsd::expr
