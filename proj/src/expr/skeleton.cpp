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

#include <charconv>
#include <sstream>

#include "srsd/error.hpp"
#include "srsd/expr.hpp"

namespace srsd::expr {

std::size_t SkeletonTree::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

namespace {

SkeletonTree skeletonize_impl(const Expression& e, int& next_c) {
  SkeletonTree t;
  switch (e.kind()) {
    case NodeKind::Constant:
      t.label = {Label::Kind::Constant, Op::Add, ++next_c};
      break;
    case NodeKind::Variable:
      t.label = {Label::Kind::Variable, Op::Add, e.var_index() + 1};
      break;
    case NodeKind::Operator:
      t.label = {Label::Kind::Operator, e.op(), 0};
      for (const auto& c : e.children()) t.children.push_back(skeletonize_impl(c, next_c));
      break;
  }
  return t;
}

void collect_constants(const Expression& e, std::vector<double>& out) {
  if (e.is_constant()) out.push_back(e.value());
  for (const auto& c : e.children()) collect_constants(c, out);
}

void preorder(const SkeletonTree& t, TokenSequence& out) {
  out.push_back({t.label, static_cast<int>(t.children.size())});
  for (const auto& c : t.children) preorder(c, out);
}

SkeletonTree decode(std::span<const Token> tokens, std::size_t& pos, int& next_c) {
  if (pos >= tokens.size()) throw DecodeError("truncated token sequence: expected " + std::to_string(pos + 1) +
                                              " or more tokens, got " + std::to_string(tokens.size()));
  const Token& tok = tokens[pos++];
  SkeletonTree t;
  t.label = tok.label;
  switch (tok.label.kind) {
    case Label::Kind::Constant:
      t.label.index = ++next_c;
      t.label.op = Op::Add;
      return t;
    case Label::Kind::Variable:
      if (tok.label.index < 1) throw DecodeError("variable token index must be >= 1");
      t.label.op = Op::Add;
      return t;
    case Label::Kind::Operator:
      break;
  }
  t.label.index = 0;
  const int fixed = op_arity(tok.label.op);
  if (fixed == 0 ? tok.arity < 2 : tok.arity != fixed)
    throw DecodeError("invalid arity " + std::to_string(tok.arity) + " for " + std::string(op_name(tok.label.op)));
  for (int i = 0; i < tok.arity; ++i) t.children.push_back(decode(tokens, pos, next_c));
  return t;
}

}  // namespace

SkeletonTree skeletonize(const Expression& canonical) {
  int next_c = 0;
  return skeletonize_impl(canonical, next_c);
}

std::vector<double> constant_table(const Expression& e) {
  std::vector<double> out;
  collect_constants(e, out);
  return out;
}

Expression from_skeleton(const SkeletonTree& tree, std::span<const double> constants) {
  switch (tree.label.kind) {
    case Label::Kind::Constant:
      if (tree.label.index < 1 || static_cast<std::size_t>(tree.label.index) > constants.size())
        throw InvalidArgument("constant C" + std::to_string(tree.label.index) + " has no value (table has " +
                              std::to_string(constants.size()) + ")");
      return Expression::constant(constants[static_cast<std::size_t>(tree.label.index) - 1]);
    case Label::Kind::Variable:
      return Expression::variable(tree.label.index - 1);
    case Label::Kind::Operator:
      break;
  }
  std::vector<Expression> ch;
  for (const auto& c : tree.children) ch.push_back(from_skeleton(c, constants));
  return Expression::op(tree.label.op, std::move(ch));
}

TokenSequence to_preorder(const SkeletonTree& tree) {
  TokenSequence out;
  preorder(tree, out);
  return out;
}

SkeletonTree from_preorder(std::span<const Token> tokens) {
  if (tokens.empty()) throw DecodeError("empty token sequence");
  std::size_t pos = 0;
  int next_c = 0;
  SkeletonTree t = decode(tokens, pos, next_c);
  if (pos != tokens.size())
    throw DecodeError("over-long token sequence: " + std::to_string(tokens.size() - pos) + " trailing token(s)");
  return t;
}

std::string token_text(const Token& t) {
  switch (t.label.kind) {
    case Label::Kind::Constant:
      return "C";
    case Label::Kind::Variable:
      return "X" + std::to_string(t.label.index);
    case Label::Kind::Operator:
      break;
  }
  std::string s(op_name(t.label.op));
  if (is_nary(t.label.op)) s += std::to_string(t.arity);
  return s;
}

std::string to_prefix_text(const TokenSequence& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += token_text(t);
  }
  return out;
}

namespace {

std::optional<int> parse_suffix(std::string_view digits) {
  if (digits.empty()) return std::nullopt;
  int v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return v;
}

}  // namespace

Token parse_token(std::string_view text) {
  Token t;
  if (text == "C") {
    t.label.kind = Label::Kind::Constant;
    return t;
  }
  if (text.size() >= 2 && text[0] == 'C') {
    if (auto v = parse_suffix(text.substr(1)); v && *v >= 1) {
      t.label = {Label::Kind::Constant, Op::Add, *v};
      return t;
    }
  }
  if (text.size() >= 2 && text[0] == 'X') {
    if (auto v = parse_suffix(text.substr(1)); v && *v >= 1) {
      t.label = {Label::Kind::Variable, Op::Add, *v};
      return t;
    }
    throw DecodeError("bad variable token '" + std::string(text) + "'");
  }
  for (Op nary : {Op::Add, Op::Mul}) {
    const auto name = op_name(nary);
    if (text.substr(0, name.size()) == name && text.size() > name.size()) {
      auto v = parse_suffix(text.substr(name.size()));
      if (!v || *v < 2) throw DecodeError("bad arity suffix in token '" + std::string(text) + "'");
      t.label = {Label::Kind::Operator, nary, 0};
      t.arity = *v;
      return t;
    }
  }
  auto op = op_from_name(text);
  if (!op) throw DecodeError("unknown token '" + std::string(text) + "'");
  if (is_nary(*op)) throw DecodeError("token '" + std::string(text) + "' needs an arity suffix");
  t.label = {Label::Kind::Operator, *op, 0};
  t.arity = op_arity(*op);
  return t;
}

TokenSequence parse_prefix_text(std::string_view line) {
  TokenSequence out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(parse_token(tok));
  return out;
}

std::string to_string(const SkeletonTree& tree) {
  std::string s = token_text({tree.label, static_cast<int>(tree.children.size())});
  if (tree.label.kind == Label::Kind::Constant) s += std::to_string(tree.label.index);
  if (tree.children.empty()) return s;
  if (is_nary(tree.label.op)) s.resize(s.size() - std::to_string(tree.children.size()).size());
  s += '(';
  for (std::size_t i = 0; i < tree.children.size(); ++i) {
    if (i) s += ", ";
    s += to_string(tree.children[i]);
  }
  s += ')';
  return s;
}

}  // namespace srsd::expr
