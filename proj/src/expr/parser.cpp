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

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>

#include "srsd/error.hpp"
#include "srsd/expr.hpp"

namespace srsd::expr {

namespace {

using ConstantMap = std::map<std::string, double, std::less<>>;

class Parser {
 public:
  Parser(std::string_view text, const VariableResolver& resolve, const ConstantMap& constants)
      : text_(text), resolve_(resolve), constants_(constants) {}

  Expression parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    Expression e = parse_sum();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept_pow() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return true;
    }
    if (text_.substr(pos_, 2) == "**") {
      pos_ += 2;
      return true;
    }
    return false;
  }

  Expression parse_sum() {
    std::vector<Expression> terms;
    terms.push_back(parse_product());
    for (;;) {
      if (accept('+')) {
        terms.push_back(parse_product());
      } else if (accept('-')) {
        terms.push_back(Expression::op(Op::Neg, {parse_product()}));
      } else {
        break;
      }
    }
    if (terms.size() == 1) return std::move(terms.front());
    return Expression::op(Op::Add, std::move(terms));
  }

  Expression parse_product() {
    std::vector<Expression> factors;
    factors.push_back(parse_unary());
    auto collapse = [&] {
      if (factors.size() == 1) return std::move(factors.front());
      return Expression::op(Op::Mul, std::move(factors));
    };
    for (;;) {
      skip_ws();
      if (text_.substr(pos_, 2) == "**") break;
      if (accept('*')) {
        factors.push_back(parse_unary());
      } else if (accept('/')) {
        Expression lhs = collapse();
        Expression rhs = parse_unary();
        factors.clear();
        factors.push_back(Expression::op(Op::Div, {std::move(lhs), std::move(rhs)}));
      } else {
        break;
      }
    }
    return collapse();
  }

  Expression parse_unary() {
    if (accept('-')) {
      skip_ws();
      const bool literal = pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.');
      Expression inner = parse_unary();
      if (literal && inner.is_constant()) return Expression::constant(-inner.value());
      return Expression::op(Op::Neg, {std::move(inner)});
    }
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expression parse_power() {
    Expression base = parse_primary();
    if (accept_pow()) {
      Expression exponent = parse_unary();
      return Expression::op(Op::Pow, {std::move(base), std::move(exponent)});
    }
    return base;
  }

  Expression parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression e = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expression parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        pos_ = p;
      }
    }
    double v = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) throw ParseError("numeric literal out of range", start);
    if (ec != std::errc() || ptr != last) throw ParseError("malformed number", start);
    return Expression::constant(v);
  }

  Expression parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (peek_is('(')) {
      auto op = op_from_name(name);
      if (!op || is_nary(*op) || *op == Op::Div || *op == Op::Neg)
        throw ParseError("unknown function '" + std::string(name) + "'", start);
      accept('(');
      std::vector<Expression> args;
      if (!peek_is(')')) {
        args.push_back(parse_sum());
        while (accept(',')) args.push_back(parse_sum());
      }
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      if (args.size() != static_cast<std::size_t>(op_arity(*op)))
        throw ParseError("arity mismatch for '" + std::string(name) + "': expected " +
                             std::to_string(op_arity(*op)) + ", got " + std::to_string(args.size()),
                         start);
      return Expression::op(*op, std::move(args));
    }

    if (auto idx = resolve_(name)) return Expression::variable(*idx);
    if (auto it = constants_.find(name); it != constants_.end()) return Expression::constant(it->second);
    if (name == "pi") return Expression::constant(std::numbers::pi);
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  const VariableResolver& resolve_;
  const ConstantMap& constants_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse(std::string_view text, const VariableResolver& resolve_variable, const ConstantMap& constants) {
  return Parser(text, resolve_variable, constants).parse();
}

Expression parse(std::string_view text, std::span<const std::string> variable_names, const ConstantMap& constants) {
  for (std::size_t i = 0; i < variable_names.size(); ++i)
    for (std::size_t j = i + 1; j < variable_names.size(); ++j)
      if (variable_names[i] == variable_names[j])
        throw InvalidArgument("duplicate variable name '" + variable_names[i] + "'");
  VariableResolver resolve = [variable_names](std::string_view name) -> std::optional<int> {
    for (std::size_t i = 0; i < variable_names.size(); ++i)
      if (variable_names[i] == name) return static_cast<int>(i);
    return std::nullopt;
  };
  return parse(text, resolve, constants);
}

VariableResolver indexed_variable_resolver() {
  return [](std::string_view name) -> std::optional<int> {
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'X')) return std::nullopt;
    int n = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
    if (ec != std::errc() || ptr != name.data() + name.size() || n < 1 || name[1] == '0') return std::nullopt;
    return n - 1;
  };
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

int precedence(const Expression& e) {
  if (e.is_constant()) return e.value() < 0 ? 3 : 5;
  if (e.is_variable()) return 5;
  switch (e.op()) {
    case Op::Add:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

void render(const Expression& e, std::span<const std::string> names, std::string& out);

void render_child(const Expression& c, int required, std::span<const std::string> names, std::string& out) {
  if (precedence(c) < required) {
    out += '(';
    render(c, names, out);
    out += ')';
  } else {
    render(c, names, out);
  }
}

void render(const Expression& e, std::span<const std::string> names, std::string& out) {
  if (e.is_constant()) {
    out += format_double(e.value());
    return;
  }
  if (e.is_variable()) {
    const auto i = static_cast<std::size_t>(e.var_index());
    out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
    return;
  }
  const auto& ch = e.children();
  switch (e.op()) {
    case Op::Add:
    case Op::Mul: {
      const char* sep = e.op() == Op::Add ? " + " : " * ";
      const int required = e.op() == Op::Add ? 2 : 3;
      for (std::size_t i = 0; i < ch.size(); ++i) {
        if (i) out += sep;
        render_child(ch[i], required, names, out);
      }
      return;
    }
    case Op::Div:
      render_child(ch[0], 3, names, out);
      out += " / ";
      render_child(ch[1], 3, names, out);
      return;
    case Op::Neg:
      out += '-';
      render_child(ch[0], ch[0].is_constant() ? 6 : 4, names, out);
      return;
    case Op::Pow:
      render_child(ch[0], 5, names, out);
      out += '^';
      render_child(ch[1], 5, names, out);
      return;
    default:
      out += op_name(e.op());
      out += '(';
      render(ch[0], names, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_infix(const Expression& e, std::span<const std::string> variable_names) {
  std::string out;
  render(e, variable_names, out);
  return out;
}

}  // namespace srsd::expr
