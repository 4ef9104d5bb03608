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
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pim/dsl/ast.hpp"
#include "pim/error.hpp"

namespace pim {

enum class Granularity { kControlFlow, kMethod, kProgram };

inline std::string to_string(Granularity g) {
  switch (g) {
    case Granularity::kControlFlow:
      return "cf";
    case Granularity::kMethod:
      return "method";
    case Granularity::kProgram:
      return "program";
  }
  return "?";
}

inline Granularity parse_granularity(std::string_view text) {
  if (text == "cf" || text == "control-flow" || text == "controlflow") {
    return Granularity::kControlFlow;
  }
  if (text == "method") return Granularity::kMethod;
  if (text == "program") return Granularity::kProgram;
  throw Error("unknown granularity '" + std::string(text) +
              "' (expected cf, method or program)");
}

// A code unit measured separately. Keys:
//   Method       function name, e.g. "foo"
//   ControlFlow  "<fn>:if@L:C" / "<fn>:while@L:C" for decisions,
//                "<fn>:body" for the rest of a function body
//   Program      "program"
struct RegionId {
  Granularity granularity = Granularity::kProgram;
  std::string key = "program";

  const std::string& to_string() const { return key; }
  auto operator<=>(const RegionId&) const = default;
};

namespace dsl {

// Regions of a program at one granularity, and the lookup tables the
// interpreters use to attribute decisions and costs.
class RegionMap {
 public:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  RegionMap(const Program& p, Granularity g)
      : granularity_(g), statement_region_(p.statement_count(), kNone) {
    if (g == Granularity::kProgram) {
      regions_.push_back({g, "program"});
      function_region_.assign(p.functions().size(), 0);
      return;
    }
    for (const auto& f : p.functions()) {
      function_region_.push_back(regions_.size());
      regions_.push_back({g, g == Granularity::kMethod ? f.name : f.name + ":body"});
      if (g == Granularity::kControlFlow) add_decisions(f.name, f.body);
    }
  }

  Granularity granularity() const { return granularity_; }
  const std::vector<RegionId>& regions() const { return regions_; }
  std::size_t size() const { return regions_.size(); }

  std::size_t function_region(std::size_t function_index) const {
    return function_region_.at(function_index);
  }
  // Region owned by an if/while statement, or kNone.
  std::size_t statement_region(std::size_t statement_id) const {
    return statement_region_.at(statement_id);
  }

  std::optional<std::size_t> find(std::string_view key) const {
    for (std::size_t i = 0; i < regions_.size(); ++i) {
      if (regions_[i].key == key) return i;
    }
    return std::nullopt;
  }

 private:
  void add_decisions(const std::string& fn, const std::vector<Stmt>& body) {
    for (const auto& s : body) {
      if (s.kind == Stmt::Kind::kIf || s.kind == Stmt::Kind::kWhile) {
        statement_region_[s.id] = regions_.size();
        regions_.push_back({granularity_, fn + ":" +
                                              (s.kind == Stmt::Kind::kIf ? "if" : "while") +
                                              "@" + s.pos.to_string()});
      }
      add_decisions(fn, s.body);
      add_decisions(fn, s.else_body);
    }
  }

  Granularity granularity_;
  std::vector<RegionId> regions_;
  std::vector<std::size_t> function_region_;
  std::vector<std::size_t> statement_region_;
};

inline std::vector<RegionId> enumerate_regions(const Program& p, Granularity g) {
  return RegionMap(p, g).regions();
}

}  // namespace dsl
}  // namespace pim
