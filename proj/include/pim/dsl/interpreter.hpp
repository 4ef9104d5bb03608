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

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pim/dsl/ast.hpp"
#include "pim/dsl/regions.hpp"
#include "pim/dsl/workload.hpp"
#include "pim/error.hpp"
#include "pim/options.hpp"

namespace pim::dsl {

inline constexpr std::uint64_t kDefaultStepBudget = 10'000'000;
inline constexpr std::size_t kMaxCallDepth = 2'000;

// Taint type for interpreters that do not track information flow.
struct NoTaint {
  friend constexpr NoTaint operator|(NoTaint, NoTaint) { return {}; }
  NoTaint& operator|=(NoTaint) { return *this; }
};

// Tree-walking interpreter parameterized by a hooks type that supplies the
// taint carried by values and receives execution events:
//
//   using Taint = ...;                 // joinable with operator|
//   Taint option_taint(std::size_t option_index);
//   void on_enter(std::size_t region, const Taint& control);
//   void on_decision(std::size_t region, const Taint& data, const Taint& control);
//   void on_cost(std::size_t region, double amount);
//
// Assignments join the active control-flow taint into the stored value; a
// frame holding the condition's taint is active while a branch or loop body
// runs, and callees inherit the caller's frames.
template <class Hooks>
class Interpreter {
 public:
  using Taint = typename Hooks::Taint;

  struct Value {
    std::variant<std::monostate, std::int64_t, bool> data;
    Taint taint{};
  };

  Interpreter(const Program& program, const RegionMap& regions,
              const WorkloadParams& workload, Config config, Hooks& hooks,
              std::uint64_t step_budget = kDefaultStepBudget)
      : program_(program),
        regions_(regions),
        workload_(workload),
        config_(config),
        hooks_(hooks),
        budget_(step_budget) {
    check_workload(program, workload);
  }

  void run() {
    control_.assign(1, Taint{});
    call(program_.main_index(), {});
  }

  std::uint64_t steps() const { return steps_; }

 private:
  struct Scope {
    std::vector<std::pair<std::string, Value>> vars;
  };
  struct Frame {
    std::vector<Scope> scopes;
  };

  const Taint& control() const { return control_.back(); }
  void push_control(const Taint& t) { control_.push_back(control_.back() | t); }
  void pop_control() { control_.pop_back(); }

  void step() {
    if (++steps_ > budget_) {
      throw StepBudgetExceeded("step budget of " + std::to_string(budget_) +
                               " exceeded (unbounded loop?)");
    }
  }

  [[noreturn]] void type_error(const SourcePos& pos, const std::string& msg) const {
    throw RuntimeError(pos.to_string() + ": " + msg);
  }

  Value* lookup(const std::string& name) {
    auto& scopes = frames_.back().scopes;
    for (auto s = scopes.rbegin(); s != scopes.rend(); ++s) {
      for (auto& [n, v] : s->vars) {
        if (n == name) return &v;
      }
    }
    return nullptr;
  }

  Value call(std::size_t fn_index, std::vector<Value> args) {
    if (frames_.size() >= kMaxCallDepth) {
      throw RuntimeError("call depth limit of " + std::to_string(kMaxCallDepth) +
                         " exceeded");
    }
    const Function& fn = program_.function(fn_index);
    Frame frame;
    frame.scopes.emplace_back();
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      frame.scopes.back().vars.emplace_back(fn.params[i], std::move(args[i]));
    }
    frames_.push_back(std::move(frame));
    const std::size_t region = regions_.function_region(fn_index);
    region_stack_.push_back(region);
    hooks_.on_enter(region, control());

    Value result;
    for (const auto& s : fn.body) {
      if (s.kind == Stmt::Kind::kReturn) {
        step();
        if (s.has_expr) {
          result = eval(s.expr);
          result.taint |= control();
        }
        break;
      }
      exec(s);
    }
    region_stack_.pop_back();
    frames_.pop_back();
    return result;
  }

  void exec_block(const std::vector<Stmt>& body) {
    frames_.back().scopes.emplace_back();
    for (const auto& s : body) exec(s);
    frames_.back().scopes.pop_back();
  }

  bool condition(const Stmt& s, std::size_t region) {
    Value c = eval(s.expr);
    if (!std::holds_alternative<bool>(c.data)) {
      type_error(s.expr.pos, "condition is not a boolean");
    }
    hooks_.on_decision(region, c.taint, control());
    cond_taint_ = c.taint;
    return std::get<bool>(c.data);
  }

  void exec(const Stmt& s) {
    step();
    switch (s.kind) {
      case Stmt::Kind::kLet: {
        Value v = eval(s.expr);
        v.taint |= control();
        frames_.back().scopes.back().vars.emplace_back(s.name, std::move(v));
        return;
      }
      case Stmt::Kind::kAssign: {
        Value v = eval(s.expr);
        v.taint |= control();
        Value* slot = lookup(s.name);
        if (!slot) type_error(s.pos, "assignment to undeclared variable '" + s.name + "'");
        *slot = std::move(v);
        return;
      }
      case Stmt::Kind::kIf: {
        const std::size_t region = decision_region(s);
        region_stack_.push_back(region);
        const bool taken = condition(s, region);
        push_control(cond_taint_);
        if (taken) {
          exec_block(s.body);
        } else if (s.has_else) {
          exec_block(s.else_body);
        }
        pop_control();
        region_stack_.pop_back();
        return;
      }
      case Stmt::Kind::kWhile: {
        const std::size_t region = decision_region(s);
        region_stack_.push_back(region);
        while (condition(s, region)) {
          step();
          push_control(cond_taint_);
          exec_block(s.body);
          pop_control();
        }
        region_stack_.pop_back();
        return;
      }
      case Stmt::Kind::kCall:
        eval(s.expr);
        return;
      case Stmt::Kind::kCost:
        hooks_.on_cost(region_stack_.back(), s.cost);
        return;
      case Stmt::Kind::kReturn:
        type_error(s.pos, "misplaced return");
    }
  }

  std::size_t decision_region(const Stmt& s) const {
    const std::size_t r = regions_.statement_region(s.id);
    return r == RegionMap::kNone ? region_stack_.back() : r;
  }

  std::int64_t as_int(const Value& v, const Expr& e) const {
    if (!std::holds_alternative<std::int64_t>(v.data)) type_error(e.pos, "expected an integer");
    return std::get<std::int64_t>(v.data);
  }
  bool as_bool(const Value& v, const Expr& e) const {
    if (!std::holds_alternative<bool>(v.data)) type_error(e.pos, "expected a boolean");
    return std::get<bool>(v.data);
  }

  Value eval(const Expr& e) {
    step();
    switch (e.kind) {
      case Expr::Kind::kInt:
        return {e.int_value, Taint{}};
      case Expr::Kind::kBool:
        return {e.bool_value, Taint{}};
      case Expr::Kind::kVar: {
        Value* v = lookup(e.name);
        if (!v) type_error(e.pos, "undeclared variable '" + e.name + "'");
        return *v;
      }
      case Expr::Kind::kGetOpt: {
        const std::size_t idx = program_.options().index(e.name);
        return {config_.contains(idx), hooks_.option_taint(idx)};
      }
      case Expr::Kind::kGetParam:
        return {workload_.at(e.name), Taint{}};
      case Expr::Kind::kUnary: {
        Value v = eval(e.args[0]);
        if (e.unary_op == UnaryOp::kNot) return {!as_bool(v, e.args[0]), v.taint};
        return {-as_int(v, e.args[0]), v.taint};
      }
      case Expr::Kind::kBinary:
        return eval_binary(e);
      case Expr::Kind::kCall: {
        std::vector<Value> args;
        args.reserve(e.args.size());
        for (const auto& a : e.args) args.push_back(eval(a));
        return call(program_.find_function(e.name), std::move(args));
      }
    }
    return {};
  }

  Value eval_binary(const Expr& e) {
    const Expr& le = e.args[0];
    const Expr& re = e.args[1];
    // No short-circuiting: both operands are always evaluated.
    Value l = eval(le);
    Value r = eval(re);
    const Taint t = l.taint | r.taint;
    switch (e.binary_op) {
      case BinaryOp::kAnd:
        return {as_bool(l, le) && as_bool(r, re), t};
      case BinaryOp::kOr:
        return {as_bool(l, le) || as_bool(r, re), t};
      case BinaryOp::kAdd:
        return {as_int(l, le) + as_int(r, re), t};
      case BinaryOp::kSub:
        return {as_int(l, le) - as_int(r, re), t};
      case BinaryOp::kMul:
        return {as_int(l, le) * as_int(r, re), t};
      case BinaryOp::kEq:
      case BinaryOp::kNe: {
        if (l.data.index() != r.data.index() || l.data.index() == 0) {
          type_error(e.pos, "'==' and '!=' need operands of the same type");
        }
        const bool eq = l.data == r.data;
        return {e.binary_op == BinaryOp::kEq ? eq : !eq, t};
      }
      case BinaryOp::kLt:
        return {as_int(l, le) < as_int(r, re), t};
      case BinaryOp::kLe:
        return {as_int(l, le) <= as_int(r, re), t};
      case BinaryOp::kGt:
        return {as_int(l, le) > as_int(r, re), t};
      case BinaryOp::kGe:
        return {as_int(l, le) >= as_int(r, re), t};
    }
    return {};
  }

  const Program& program_;
  const RegionMap& regions_;
  const WorkloadParams& workload_;
  Config config_;
  Hooks& hooks_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  std::vector<Frame> frames_;
  std::vector<std::size_t> region_stack_;
  std::vector<Taint> control_;
  Taint cond_taint_{};
};

}  // namespace pim::dsl
