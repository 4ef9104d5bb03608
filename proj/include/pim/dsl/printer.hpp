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

#include <string>

#include "pim/dsl/ast.hpp"

namespace pim::dsl {

namespace detail {

inline int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::kUnary) return 6;
  if (e.kind != Expr::Kind::kBinary) return 7;
  switch (e.binary_op) {
    case BinaryOp::kOr:
      return 1;
    case BinaryOp::kAnd:
      return 2;
    case BinaryOp::kAdd:
    case BinaryOp::kSub:
      return 4;
    case BinaryOp::kMul:
      return 5;
    default:
      return 3;
  }
}

inline const char* op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
  }
  return "?";
}

inline void print_stmts(const std::vector<Stmt>& body, int indent, std::string& out);

}  // namespace detail

inline std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kInt:
      return std::to_string(e.int_value);
    case Expr::Kind::kBool:
      return e.bool_value ? "true" : "false";
    case Expr::Kind::kVar:
      return e.name;
    case Expr::Kind::kGetOpt:
      return "getopt(\"" + e.name + "\")";
    case Expr::Kind::kGetParam:
      return "getparam(\"" + e.name + "\")";
    case Expr::Kind::kUnary: {
      std::string inner = print_expr(e.args[0]);
      if (detail::precedence(e.args[0]) < 6) inner = "(" + inner + ")";
      return (e.unary_op == UnaryOp::kNot ? "!" : "-") + inner;
    }
    case Expr::Kind::kBinary: {
      const int p = detail::precedence(e);
      std::string lhs = print_expr(e.args[0]);
      std::string rhs = print_expr(e.args[1]);
      // Left-associative: a right operand of equal precedence needs parens.
      if (detail::precedence(e.args[0]) < p) lhs = "(" + lhs + ")";
      if (detail::precedence(e.args[1]) <= p) rhs = "(" + rhs + ")";
      return lhs + " " + detail::op_text(e.binary_op) + " " + rhs;
    }
    case Expr::Kind::kCall: {
      std::string out = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += print_expr(e.args[i]);
      }
      return out + ")";
    }
  }
  return {};
}

namespace detail {

inline void print_if(const Stmt& s, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  out += "if (" + print_expr(s.expr) + ") {\n";
  print_stmts(s.body, indent + 1, out);
  out += pad + "}";
  if (s.has_else) {
    if (s.else_body.size() == 1 && s.else_body[0].kind == Stmt::Kind::kIf) {
      out += " else ";
      print_if(s.else_body[0], indent, out);
      return;
    }
    out += " else {\n";
    print_stmts(s.else_body, indent + 1, out);
    out += pad + "}";
  }
}

inline void print_stmts(const std::vector<Stmt>& body, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& s : body) {
    out += pad;
    switch (s.kind) {
      case Stmt::Kind::kLet:
        out += "let " + s.name + " = " + print_expr(s.expr) + ";";
        break;
      case Stmt::Kind::kAssign:
        out += s.name + " = " + print_expr(s.expr) + ";";
        break;
      case Stmt::Kind::kIf:
        print_if(s, indent, out);
        break;
      case Stmt::Kind::kWhile:
        out += "while (" + print_expr(s.expr) + ") {\n";
        print_stmts(s.body, indent + 1, out);
        out += pad + "}";
        break;
      case Stmt::Kind::kCall:
        out += print_expr(s.expr) + ";";
        break;
      case Stmt::Kind::kCost:
        out += "cost " + s.cost_text + ";";
        break;
      case Stmt::Kind::kReturn:
        out += s.has_expr ? "return " + print_expr(s.expr) + ";" : "return;";
        break;
    }
    out += "\n";
  }
}

}  // namespace detail

// Canonical source text; parsing it yields a structurally identical program.
inline std::string print_program(const Program& p) {
  std::string out;
  for (std::size_t i = 0; i < p.functions().size(); ++i) {
    const auto& f = p.function(i);
    if (i) out += "\n";
    out += "fn " + f.name + "(";
    for (std::size_t k = 0; k < f.params.size(); ++k) {
      if (k) out += ", ";
      out += f.params[k];
    }
    out += ") {\n";
    detail::print_stmts(f.body, 1, out);
    out += "}\n";
  }
  return out;
}

}  // namespace pim::dsl
