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

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pim/error.hpp"
#include "pim/options.hpp"
#include "pim/subspace/formula.hpp"

namespace pim {

// A set of configurations, described by a propositional formula over the
// option literals.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Formula formula) : formula_(std::move(formula)) {}

  static Subspace whole() { return Subspace(Formula::top()); }
  static Subspace none() { return Subspace(Formula::bottom()); }

  const Formula& formula() const { return formula_; }

  bool contains(Config c) const { return formula_.eval(c); }
  bool satisfiable() const { return formula_.satisfiable(); }

  // A member configuration, chosen deterministically from `seed`. Options
  // the formula does not mention are deselected.
  Config pick_config(std::uint64_t seed) const {
    auto model = formula_.find_model_seeded(seed);
    if (!model) throw Error("pick_config on an empty subspace");
    return *model;
  }

  Subspace intersect(const Subspace& other) const {
    return Subspace((formula_ & other.formula_).simplified());
  }
  Subspace complement() const { return Subspace((!formula_).simplified()); }

  bool overlaps(const Subspace& other) const {
    return (formula_ & other.formula_).satisfiable();
  }
  bool implies(const Subspace& other) const {
    return !(formula_ & !other.formula_).satisfiable();
  }
  bool equivalent(const Subspace& other) const {
    return formula_.key() == other.formula_.key() ||
           (implies(other) && other.implies(*this));
  }

  // Options the subspace constrains.
  OptionSet support() const { return formula_.support(); }

  std::string to_string(const Universe& u) const { return formula_.to_string(u); }
  static Subspace parse(std::string_view text, const Universe& u) {
    return Subspace(Formula::parse(text, u).simplified());
  }

  const std::string& key() const { return formula_.key(); }

 private:
  Formula formula_;
};

// Disjoint subspaces whose union is the whole configuration space. Kept
// sorted by structural key so equal constructions compare equal.
class Partition {
 public:
  Partition() : subspaces_{Subspace::whole()} {}
  explicit Partition(std::vector<Subspace> subspaces)
      : subspaces_(std::move(subspaces)) {
    std::sort(subspaces_.begin(), subspaces_.end(),
              [](const Subspace& a, const Subspace& b) { return a.key() < b.key(); });
  }

  static Partition whole() { return Partition(); }

  const std::vector<Subspace>& subspaces() const { return subspaces_; }
  std::size_t size() const { return subspaces_.size(); }
  auto begin() const { return subspaces_.begin(); }
  auto end() const { return subspaces_.end(); }

  bool is_whole() const {
    return subspaces_.size() == 1 && subspaces_.front().formula().is_true();
  }

  // Options mentioned by any subspace.
  OptionSet support() const {
    OptionSet s;
    for (const auto& sub : subspaces_) s |= sub.support();
    return s;
  }

  // The subspace containing c. Valid partitions always have exactly one.
  const Subspace& find(Config c) const {
    for (const auto& s : subspaces_) {
      if (s.contains(c)) return s;
    }
    throw Error("configuration lies in no subspace of the partition");
  }

  // Pairwise disjoint, nonempty members, jointly covering everything.
  bool is_valid() const {
    for (std::size_t i = 0; i < subspaces_.size(); ++i) {
      if (!subspaces_[i].satisfiable()) return false;
      for (std::size_t j = i + 1; j < subspaces_.size(); ++j) {
        if (subspaces_[i].overlaps(subspaces_[j])) return false;
      }
    }
    std::vector<Formula> all;
    for (const auto& s : subspaces_) all.push_back(s.formula());
    return !(!Formula::disjunction(std::move(all))).satisfiable();
  }

  // Semantic set equality.
  bool equivalent(const Partition& other) const {
    if (size() != other.size()) return false;
    for (const auto& s : subspaces_) {
      const bool found = std::any_of(
          other.begin(), other.end(),
          [&](const Subspace& t) { return s.equivalent(t); });
      if (!found) return false;
    }
    return true;
  }

  // Every subspace of this partition lies inside some subspace of `coarser`.
  bool refines(const Partition& coarser) const {
    return std::all_of(begin(), end(), [&](const Subspace& s) {
      return std::any_of(coarser.begin(), coarser.end(),
                         [&](const Subspace& t) { return s.implies(t); });
    });
  }

  std::vector<std::string> to_strings(const Universe& u) const {
    std::vector<std::string> out;
    for (const auto& s : subspaces_) out.push_back(s.to_string(u));
    return out;
  }

 private:
  std::vector<Subspace> subspaces_;
};

// All nonempty pairwise intersections. {whole} is the identity.
inline Partition cross_product(const Partition& p, const Partition& q) {
  if (p.is_whole()) return q;
  if (q.is_whole()) return p;
  std::vector<Subspace> out;
  for (const auto& s : p) {
    for (const auto& t : q) {
      if (!s.overlaps(t)) continue;
      out.push_back(s.intersect(t));
    }
  }
  return Partition(std::move(out));
}

// Partition induced by one control-flow decision reached in configuration
// `current` with data-flow taints `data` and control-flow taints `control`:
// configurations that may not reach the decision form one subspace, and the
// ones that do are split by every assignment of the data-flow taints.
inline Partition get_part(OptionSet data, OptionSet control, Config current) {
  const Formula reach = Formula::cube(control, current & control);
  std::vector<Subspace> out;
  Subspace rest((!reach).simplified());
  if (rest.satisfiable()) out.push_back(std::move(rest));
  for_each_subset(data, [&](OptionSet assignment) {
    Subspace s((Formula::cube(data, assignment) & reach).simplified());
    if (s.satisfiable()) out.push_back(std::move(s));
  });
  return Partition(std::move(out));
}

}  // namespace pim
