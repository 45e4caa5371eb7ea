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

#include "srsd/expr.hpp"

namespace srsd::expr {

namespace {

constexpr double kRelTol = 1e-12;
constexpr int kMaxPasses = 16;

using E = Expression;

bool near(double a, double b) { return std::abs(a - b) <= kRelTol * std::max(std::abs(a), std::abs(b)); }

bool is_integer(double v) { return std::abs(v) < 9.007199254740992e15 && v == std::trunc(v); }

bool is_const(const E& e, double v) { return e.is_constant() && near(e.value(), v); }

// Sum with cancellation snapping: a result that is tiny relative to its summands is zero.
class Accumulator {
 public:
  void add(double v) {
    sum_ += v;
    mag_ += std::abs(v);
  }
  double value() const { return std::abs(sum_) <= kRelTol * mag_ ? 0.0 : sum_; }

 private:
  double sum_ = 0.0;
  double mag_ = 0.0;
};

std::optional<double> fold_unary(Op op, double a) {
  double r = 0.0;
  switch (op) {
    case Op::Sin:
      r = std::sin(a);
      break;
    case Op::Cos:
      r = std::cos(a);
      break;
    case Op::Tan:
      r = std::tan(a);
      break;
    case Op::Tanh:
      r = std::tanh(a);
      break;
    case Op::Exp:
      r = std::exp(a);
      break;
    case Op::Log:
      if (a <= 0.0) return std::nullopt;
      r = std::log(a);
      break;
    case Op::Abs:
      r = std::abs(a);
      break;
    default:
      return std::nullopt;
  }
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

void sort_operands(std::vector<E>& v) {
  std::stable_sort(v.begin(), v.end(), [](const E& a, const E& b) { return compare(a, b) < 0; });
}

E make_add(std::vector<E> terms);
E make_mul(std::vector<E> factors, int depth = 0);
E make_pow(const E& base, const E& exponent);

// k * rest, where rest is canonical and free of constant factors.
E scale(double k, const E& rest) {
  if (k == 1.0) return rest;
  std::vector<E> f{E::constant(k)};
  if (rest.is_op(Op::Mul)) {
    f.insert(f.end(), rest.children().begin(), rest.children().end());
  } else {
    f.push_back(rest);
  }
  return E::op(Op::Mul, std::move(f));
}

std::pair<double, E> split_coefficient(const E& t) {
  if (t.is_op(Op::Mul) && t.child(0).is_constant()) {
    const auto& c = t.children();
    if (c.size() == 2) return {c[0].value(), c[1]};
    return {c[0].value(), E::op(Op::Mul, std::vector<E>(c.begin() + 1, c.end()))};
  }
  return {1.0, t};
}

E make_add(std::vector<E> in) {
  std::vector<E> flat;
  for (auto& t : in) {
    if (t.is_op(Op::Add)) {
      flat.insert(flat.end(), t.children().begin(), t.children().end());
    } else {
      flat.push_back(std::move(t));
    }
  }

  Accumulator constant;
  std::vector<std::pair<double, E>> terms;
  for (const auto& t : flat) {
    if (t.is_constant()) {
      constant.add(t.value());
    } else {
      terms.push_back(split_coefficient(t));
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return compare(a.second, b.second) < 0; });

  std::vector<E> out;
  if (double c = constant.value(); c != 0.0) out.push_back(E::constant(c));
  for (std::size_t i = 0; i < terms.size();) {
    Accumulator coeff;
    std::size_t j = i;
    while (j < terms.size() && compare(terms[i].second, terms[j].second) == 0) coeff.add(terms[j++].first);
    if (double k = coeff.value(); k != 0.0) out.push_back(scale(k, terms[i].second));
    i = j;
  }
  sort_operands(out);
  if (out.empty()) return E::constant(0.0);
  if (out.size() == 1) return out.front();
  return E::op(Op::Add, std::move(out));
}

E make_mul(std::vector<E> in, int depth) {
  std::vector<E> flat;
  for (auto& f : in) {
    if (f.is_op(Op::Mul)) {
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    } else {
      flat.push_back(std::move(f));
    }
  }

  double k = 1.0;
  std::vector<std::pair<E, E>> powers;  // (base, exponent)
  for (const auto& f : flat) {
    if (f.is_constant()) {
      k *= f.value();
    } else if (f.is_op(Op::Pow)) {
      powers.emplace_back(f.child(0), f.child(1));
    } else {
      powers.emplace_back(f, E::constant(1.0));
    }
  }
  if (k == 0.0) return E::constant(0.0);
  if (!std::isfinite(k)) {
    // Overflowing product of constants: keep the factors unfolded.
    k = 1.0;
    for (const auto& f : flat)
      if (f.is_constant()) powers.emplace_back(f, E::constant(1.0));
  }

  std::stable_sort(powers.begin(), powers.end(),
                   [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });

  std::vector<E> out;
  bool reflatten = false;
  for (std::size_t i = 0; i < powers.size();) {
    std::vector<E> exps;
    std::size_t j = i;
    while (j < powers.size() && compare(powers[i].first, powers[j].first) == 0) exps.push_back(powers[j++].second);
    E merged = exps.size() == 1 && !is_const(exps.front(), 1.0) ? make_pow(powers[i].first, exps.front())
               : exps.size() == 1                               ? powers[i].first
                                                                : make_pow(powers[i].first, make_add(std::move(exps)));
    if (merged.is_constant() || merged.is_op(Op::Mul)) reflatten = true;
    out.push_back(std::move(merged));
    i = j;
  }
  if (reflatten && depth < 4) {
    out.push_back(E::constant(k));
    return make_mul(std::move(out), depth + 1);
  }
  sort_operands(out);
  if (k != 1.0) out.insert(out.begin(), E::constant(k));
  if (out.empty()) return E::constant(k);
  if (out.size() == 1) return out.front();
  return E::op(Op::Mul, std::move(out));
}

E make_pow(const E& base, const E& exponent) {
  if (exponent.is_constant()) {
    const double c = exponent.value();
    if (c == 0.0) return E::constant(1.0);
    if (near(c, 1.0)) return base;
    if (base.is_constant()) {
      const double b = base.value();
      if ((b > 0.0 || is_integer(c)) && !(b == 0.0 && c < 0.0)) {
        const double r = std::pow(b, c);
        if (std::isfinite(r)) return E::constant(r);
      }
      return E::op(Op::Pow, {base, exponent});
    }
    if (base.is_op(Op::Pow) && is_integer(c)) return make_pow(base.child(0), make_mul({base.child(1), exponent}));
    if (base.is_op(Op::Mul)) {
      if (is_integer(c)) {
        std::vector<E> f;
        for (const auto& b : base.children()) f.push_back(make_pow(b, exponent));
        return make_mul(std::move(f));
      }
      const auto [k, rest] = split_coefficient(base);
      if (k > 0.0 && k != 1.0) {
        const double r = std::pow(k, c);
        if (std::isfinite(r) && r != 0.0) return make_mul({E::constant(r), make_pow(rest, exponent)});
      }
    }
  }
  if (is_const(base, 1.0)) return E::constant(1.0);
  if (base.is_constant() && base.value() == 0.0 && exponent.is_constant() && exponent.value() > 0.0)
    return E::constant(0.0);
  return E::op(Op::Pow, {base, exponent});
}

E pass(const E& e) {
  if (!e.is_op()) return e;
  std::vector<E> ch;
  ch.reserve(e.children().size());
  for (const auto& c : e.children()) ch.push_back(pass(c));
  switch (e.op()) {
    case Op::Add:
      return make_add(std::move(ch));
    case Op::Mul:
      return make_mul(std::move(ch));
    case Op::Pow:
      return make_pow(ch[0], ch[1]);
    case Op::Div:
      return make_mul({ch[0], make_pow(ch[1], E::constant(-1.0))});
    case Op::Neg:
      return make_mul({E::constant(-1.0), ch[0]});
    case Op::Sqrt:
      return make_pow(ch[0], E::constant(0.5));
    default:
      if (ch[0].is_constant())
        if (auto v = fold_unary(e.op(), ch[0].value())) return E::constant(*v);
      return E::op(e.op(), std::move(ch));
  }
}

}  // namespace

Expression canonicalize(const Expression& e) {
  Expression cur = pass(e);
  for (int i = 0; i < kMaxPasses; ++i) {
    Expression next = pass(cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

bool is_canonical_shape(const Expression& e) {
  if (!e.is_op()) return true;
  if (e.op() == Op::Div || e.op() == Op::Neg || e.op() == Op::Sqrt) return false;
  for (const auto& c : e.children()) {
    if (is_nary(e.op()) && c.is_op(e.op())) return false;
    if (!is_canonical_shape(c)) return false;
  }
  return true;
}

}  // namespace srsd::expr
