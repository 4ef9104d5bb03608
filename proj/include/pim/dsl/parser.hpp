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

#include <cctype>
#include <charconv>
#include <map>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pim/dsl/ast.hpp"
#include "pim/error.hpp"

namespace pim::dsl {

namespace detail {

enum class Tok {
  kIdent,
  kInt,
  kNumber,
  kString,
  kPunct,
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      Token t;
      t.pos = {line_, col_};
      if (at_end()) {
        t.kind = Tok::kEnd;
        out.push_back(t);
        return out;
      }
      const char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::kIdent;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                             peek() == '_')) {
          t.text += advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::kInt;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
          t.text += advance();
        }
        if (!at_end() && peek() == '.') {
          t.kind = Tok::kNumber;
          t.text += advance();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
            throw ParseError("expected digits after '.'", line_, col_);
          }
          while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            t.text += advance();
          }
        }
      } else if (c == '"') {
        t.kind = Tok::kString;
        advance();
        while (!at_end() && peek() != '"' && peek() != '\n') t.text += advance();
        if (at_end() || peek() != '"') {
          throw ParseError("unterminated string literal", t.pos.line, t.pos.column);
        }
        advance();
      } else {
        t.kind = Tok::kPunct;
        static const char* const kTwo[] = {"<=", ">=", "==", "!=", "&&", "||"};
        for (const char* two : kTwo) {
          if (src_.substr(pos_, 2) == two) {
            t.text = two;
            advance();
            advance();
            break;
          }
        }
        if (t.text.empty()) {
          if (std::string_view("(){},;=+-*<>!").find(c) == std::string_view::npos) {
            throw ParseError(std::string("unexpected character '") + c + "'", line_,
                             col_);
          }
          t.text = std::string(1, advance());
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space_and_comments() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline bool is_keyword(const std::string& s) {
  static const std::set<std::string> kKeywords = {
      "fn", "let", "if", "else", "while", "cost", "return",
      "true", "false", "getopt", "getparam"};
  return kKeywords.count(s) > 0;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program parse_program() {
    std::vector<Function> fns;
    while (peek().kind != Tok::kEnd) fns.push_back(parse_function());
    check(fns);
    return Program(std::move(fns), next_id_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::kPunct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w) const {
    return peek().kind == Tok::kIdent && peek().text == w;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.pos.line, at.pos.column);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }
  std::string describe(const Token& t) const {
    return t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
  }
  void expect(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "', found " + describe(peek()));
    advance();
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("expected '" + std::string(w) + "', found " + describe(peek()));
    advance();
  }
  std::string expect_ident() {
    if (peek().kind != Tok::kIdent || is_keyword(peek().text)) {
      fail("expected identifier, found " + describe(peek()));
    }
    return advance().text;
  }

  Function parse_function() {
    Function f;
    f.pos = peek().pos;
    expect_word("fn");
    f.name = expect_ident();
    expect("(");
    if (!is_punct(")")) {
      f.params.push_back(expect_ident());
      while (is_punct(",")) {
        advance();
        f.params.push_back(expect_ident());
      }
    }
    expect(")");
    f.body = parse_block(/*function_body=*/true);
    return f;
  }

  std::vector<Stmt> parse_block(bool function_body = false) {
    expect("{");
    std::vector<Stmt> out;
    while (!is_punct("}")) {
      if (peek().kind == Tok::kEnd) fail("expected '}', found end of input");
      if (!out.empty() && out.back().kind == Stmt::Kind::kReturn) {
        fail("statements after 'return'");
      }
      out.push_back(parse_stmt());
      if (out.back().kind == Stmt::Kind::kReturn && !function_body) {
        throw ParseError("'return' is only allowed as the last statement of a function",
                         out.back().pos.line, out.back().pos.column);
      }
    }
    expect("}");
    return out;
  }

  Stmt parse_stmt() {
    Stmt s;
    s.pos = peek().pos;
    s.id = next_id_++;
    if (is_word("let")) {
      advance();
      s.kind = Stmt::Kind::kLet;
      s.name = expect_ident();
      expect("=");
      s.expr = parse_expr();
      s.has_expr = true;
      expect(";");
    } else if (is_word("if")) {
      parse_if_rest(s);
    } else if (is_word("while")) {
      advance();
      s.kind = Stmt::Kind::kWhile;
      expect("(");
      s.expr = parse_expr();
      s.has_expr = true;
      expect(")");
      s.body = parse_block();
    } else if (is_word("cost")) {
      advance();
      s.kind = Stmt::Kind::kCost;
      const Token& t = peek();
      if (t.kind != Tok::kInt && t.kind != Tok::kNumber) {
        fail("expected non-negative number after 'cost', found " + describe(t));
      }
      s.cost_text = advance().text;
      s.cost = std::stod(s.cost_text);
      expect(";");
    } else if (is_word("return")) {
      advance();
      s.kind = Stmt::Kind::kReturn;
      if (!is_punct(";")) {
        s.expr = parse_expr();
        s.has_expr = true;
      }
      expect(";");
    } else if (peek().kind == Tok::kIdent && !is_keyword(peek().text) && is_punct("=", 1)) {
      s.kind = Stmt::Kind::kAssign;
      s.name = advance().text;
      advance();
      s.expr = parse_expr();
      s.has_expr = true;
      expect(";");
    } else if (peek().kind == Tok::kIdent && !is_keyword(peek().text) && is_punct("(", 1)) {
      s.kind = Stmt::Kind::kCall;
      s.expr = parse_primary();
      s.has_expr = true;
      expect(";");
    } else {
      fail("expected statement, found " + describe(peek()));
    }
    return s;
  }

  void parse_if_rest(Stmt& s) {
    expect_word("if");
    s.kind = Stmt::Kind::kIf;
    expect("(");
    s.expr = parse_expr();
    s.has_expr = true;
    expect(")");
    s.body = parse_block();
    if (is_word("else")) {
      advance();
      s.has_else = true;
      if (is_word("if")) {
        Stmt nested;
        nested.pos = peek().pos;
        nested.id = next_id_++;
        parse_if_rest(nested);
        s.else_body.push_back(std::move(nested));
      } else {
        s.else_body = parse_block();
      }
    }
  }

  // Precedence climbing: || < && < comparison < + - < * < unary.
  Expr parse_expr() { return parse_binary(0); }

  static int precedence(const std::string& op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "<" || op == "<=" || op == "==" || op == "!=" || op == ">" || op == ">=") {
      return 3;
    }
    if (op == "+" || op == "-") return 4;
    if (op == "*") return 5;
    return -1;
  }
  static BinaryOp to_op(const std::string& op) {
    if (op == "||") return BinaryOp::kOr;
    if (op == "&&") return BinaryOp::kAnd;
    if (op == "<") return BinaryOp::kLt;
    if (op == "<=") return BinaryOp::kLe;
    if (op == "==") return BinaryOp::kEq;
    if (op == "!=") return BinaryOp::kNe;
    if (op == ">") return BinaryOp::kGt;
    if (op == ">=") return BinaryOp::kGe;
    if (op == "+") return BinaryOp::kAdd;
    if (op == "-") return BinaryOp::kSub;
    return BinaryOp::kMul;
  }

  Expr parse_binary(int min_prec) {
    Expr lhs = parse_unary();
    while (peek().kind == Tok::kPunct) {
      const int prec = precedence(peek().text);
      if (prec < 0 || prec < min_prec) break;
      const Token op = advance();
      Expr rhs = parse_binary(prec + 1);
      Expr e;
      e.kind = Expr::Kind::kBinary;
      e.pos = op.pos;
      e.binary_op = to_op(op.text);
      e.args.push_back(std::move(lhs));
      e.args.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (is_punct("!") || is_punct("-")) {
      Expr e;
      e.kind = Expr::Kind::kUnary;
      e.pos = peek().pos;
      e.unary_op = advance().text == "!" ? UnaryOp::kNot : UnaryOp::kNeg;
      e.args.push_back(parse_unary());
      return e;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    Expr e;
    e.pos = peek().pos;
    const Token& t = peek();
    if (t.kind == Tok::kInt) {
      e.kind = Expr::Kind::kInt;
      const auto& text = advance().text;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), e.int_value);
      if (ec != std::errc()) fail("integer literal out of range", t);
      return e;
    }
    if (t.kind == Tok::kNumber) fail("decimal numbers are only allowed after 'cost'");
    if (is_punct("(")) {
      advance();
      e = parse_expr();
      expect(")");
      return e;
    }
    if (t.kind != Tok::kIdent) fail("expected expression, found " + describe(t));
    if (t.text == "true" || t.text == "false") {
      e.kind = Expr::Kind::kBool;
      e.bool_value = advance().text == "true";
      return e;
    }
    if (t.text == "getopt" || t.text == "getparam") {
      e.kind = t.text == "getopt" ? Expr::Kind::kGetOpt : Expr::Kind::kGetParam;
      advance();
      expect("(");
      if (peek().kind != Tok::kString || peek().text.empty()) {
        fail("expected non-empty string literal, found " + describe(peek()));
      }
      e.name = advance().text;
      for (char ch : e.name) {
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') {
          fail("names may only contain letters, digits and '_'");
        }
      }
      expect(")");
      return e;
    }
    e.name = expect_ident();
    if (is_punct("(")) {
      e.kind = Expr::Kind::kCall;
      advance();
      if (!is_punct(")")) {
        e.args.push_back(parse_expr());
        while (is_punct(",")) {
          advance();
          e.args.push_back(parse_expr());
        }
      }
      expect(")");
    } else {
      e.kind = Expr::Kind::kVar;
    }
    return e;
  }

  // Function-level checks: unique names, main, defined callees with the
  // right arity.
  void check(const std::vector<Function>& fns) const {
    std::map<std::string, const Function*> by_name;
    for (const auto& f : fns) {
      auto [it, inserted] = by_name.emplace(f.name, &f);
      if (!inserted) {
        throw ProgramError(f.pos.to_string() + ": duplicate function '" + f.name + "'");
      }
      std::set<std::string> params(f.params.begin(), f.params.end());
      if (params.size() != f.params.size()) {
        throw ProgramError(f.pos.to_string() + ": duplicate parameter in '" + f.name +
                           "'");
      }
    }
    auto main = by_name.find("main");
    if (main == by_name.end()) throw ProgramError("function 'main' is missing");
    if (!main->second->params.empty()) {
      throw ProgramError(main->second->pos.to_string() +
                         ": 'main' must not take parameters");
    }
    for (const auto& f : fns) {
      for (const auto& s : f.body) check(s, by_name);
    }
  }
  void check(const Stmt& s, const std::map<std::string, const Function*>& fns) const {
    if (s.has_expr) check(s.expr, fns);
    for (const auto& c : s.body) check(c, fns);
    for (const auto& c : s.else_body) check(c, fns);
  }
  void check(const Expr& e, const std::map<std::string, const Function*>& fns) const {
    if (e.kind == Expr::Kind::kCall) {
      auto it = fns.find(e.name);
      if (it == fns.end()) {
        throw ProgramError(e.pos.to_string() + ": undefined function '" + e.name + "'");
      }
      if (it->second->params.size() != e.args.size()) {
        throw ProgramError(e.pos.to_string() + ": '" + e.name + "' expects " +
                           std::to_string(it->second->params.size()) + " argument(s), got " +
                           std::to_string(e.args.size()));
      }
    }
    for (const auto& a : e.args) check(a, fns);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t next_id_ = 0;
};

}  // namespace detail

inline Program parse_program(std::string_view source) {
  return detail::Parser(detail::Lexer(source).tokenize()).parse_program();
}

}  // namespace pim::dsl
