// Copyright 2026 The pimkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pim/error.hpp"
#include "pim/options.hpp"

namespace pim::dsl {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
  auto operator<=>(const SourcePos&) const = default;
  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

enum class UnaryOp { kNot, kNeg };
enum class BinaryOp { kAdd, kSub, kMul, kLt, kLe, kEq, kNe, kGt, kGe, kAnd, kOr };

struct Expr {
  enum class Kind { kInt, kBool, kVar, kGetOpt, kGetParam, kUnary, kBinary, kCall };

  Kind kind = Kind::kInt;
  SourcePos pos;
  std::int64_t int_value = 0;
  bool bool_value = false;
  // Variable, option, parameter or callee name.
  std::string name;
  UnaryOp unary_op = UnaryOp::kNot;
  BinaryOp binary_op = BinaryOp::kAdd;
  // Operands, or call arguments.
  std::vector<Expr> args;
};

struct Stmt {
  enum class Kind { kLet, kAssign, kIf, kWhile, kCall, kCost, kReturn };

  Kind kind = Kind::kCost;
  SourcePos pos;
  // Dense index in source (pre-)order, unique per program.
  std::size_t id = 0;
  // Target of let/assign.
  std::string name;
  // Value, condition, call, or returned expression.
  Expr expr;
  bool has_expr = false;
  double cost = 0.0;
  // Literal as written, so printing reproduces it exactly.
  std::string cost_text;
  // Then-branch or loop body.
  std::vector<Stmt> body;
  std::vector<Stmt> else_body;
  bool has_else = false;
};

struct Function {
  std::string name;
  SourcePos pos;
  std::vector<std::string> params;
  std::vector<Stmt> body;
};

// A parsed and checked program. Immutable once built.
class Program {
 public:
  Program() = default;
  Program(std::vector<Function> functions, std::size_t statement_count)
      : functions_(std::move(functions)), statement_count_(statement_count) {
    std::vector<std::string> opts;
    for (std::size_t i = 0; i < functions_.size(); ++i) {
      index_[functions_[i].name] = i;
      for (const auto& s : functions_[i].body) collect(s, opts);
    }
    options_ = Universe(std::move(opts));
  }

  const std::vector<Function>& functions() const { return functions_; }
  const Function& function(std::size_t i) const { return functions_.at(i); }
  std::size_t find_function(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ProgramError("undefined function '" + name + "'");
    return it->second;
  }
  bool has_function(const std::string& name) const { return index_.count(name) > 0; }
  std::size_t main_index() const { return find_function("main"); }

  // Distinct getopt names in lexicographic order.
  const Universe& options() const { return options_; }
  // Distinct getparam names.
  const std::set<std::string>& params() const { return params_; }
  std::size_t statement_count() const { return statement_count_; }

 private:
  void collect(const Stmt& s, std::vector<std::string>& opts) {
    if (s.has_expr) collect(s.expr, opts);
    for (const auto& c : s.body) collect(c, opts);
    for (const auto& c : s.else_body) collect(c, opts);
  }
  void collect(const Expr& e, std::vector<std::string>& opts) {
    if (e.kind == Expr::Kind::kGetOpt) opts.push_back(e.name);
    if (e.kind == Expr::Kind::kGetParam) params_.insert(e.name);
    for (const auto& a : e.args) collect(a, opts);
  }

  std::vector<Function> functions_;
  std::map<std::string, std::size_t> index_;
  Universe options_;
  std::set<std::string> params_;
  std::size_t statement_count_ = 0;
};

inline std::vector<std::string> list_options(const Program& p) {
  return p.options().names();
}

// Structural equality, ignoring source positions and statement ids.
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Stmt& a, const Stmt& b);
bool same_structure(const Program& a, const Program& b);

namespace detail {
template <class T>
bool same_list(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_structure(a[i], b[i])) return false;
  }
  return true;
}
}  // namespace detail

inline bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::kInt:
      return a.int_value == b.int_value;
    case Expr::Kind::kBool:
      return a.bool_value == b.bool_value;
    case Expr::Kind::kVar:
    case Expr::Kind::kGetOpt:
    case Expr::Kind::kGetParam:
      return a.name == b.name;
    case Expr::Kind::kUnary:
      return a.unary_op == b.unary_op && detail::same_list(a.args, b.args);
    case Expr::Kind::kBinary:
      return a.binary_op == b.binary_op && detail::same_list(a.args, b.args);
    case Expr::Kind::kCall:
      return a.name == b.name && detail::same_list(a.args, b.args);
  }
  return false;
}

inline bool same_structure(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name || a.has_expr != b.has_expr ||
      a.has_else != b.has_else || a.cost != b.cost) {
    return false;
  }
  if (a.has_expr && !same_structure(a.expr, b.expr)) return false;
  return detail::same_list(a.body, b.body) &&
         detail::same_list(a.else_body, b.else_body);
}

inline bool same_structure(const Program& a, const Program& b) {
  if (a.functions().size() != b.functions().size()) return false;
  for (std::size_t i = 0; i < a.functions().size(); ++i) {
    const auto& fa = a.function(i);
    const auto& fb = b.function(i);
    if (fa.name != fb.name || fa.params != fb.params ||
        !detail::same_list(fa.body, fb.body)) {
      return false;
    }
  }
  return true;
}

}  // namespace pim::dsl
