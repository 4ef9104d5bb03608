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
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "pim/dsl/ast.hpp"
#include "pim/dsl/interpreter.hpp"
#include "pim/dsl/regions.hpp"
#include "pim/dsl/workload.hpp"
#include "pim/options.hpp"
#include "pim/random.hpp"
#include "pim/subspace/cover.hpp"
#include "pim/subspace/subspace.hpp"

namespace pim::taint {

struct TaintOptions {
  std::uint64_t step_budget = dsl::kDefaultStepBudget;
  // Options whose getopt results carry no taint. Simulates a taint-tracking
  // gap; used to exercise the suspect-region detector.
  OptionSet suppressed;
};

// One dynamic evaluation of a decision, with its data-flow and control-flow
// taints. Function entries are reported in the same form with empty data
// taints.
struct DecisionObservation {
  std::size_t region = 0;
  OptionSet data;
  OptionSet control;
  Config config;
  auto operator<=>(const DecisionObservation&) const = default;
};

// Partition per region and the configurations executed so far.
struct AnalysisState {
  Universe universe;
  Granularity granularity = Granularity::kMethod;
  std::vector<RegionId> regions;
  std::vector<Partition> partitions;
  std::vector<Config> executed;
  std::size_t iterations = 0;

  static AnalysisState fresh(const dsl::Program& p, Granularity g) {
    AnalysisState s;
    s.universe = p.options();
    s.granularity = g;
    s.regions = dsl::enumerate_regions(p, g);
    s.partitions.assign(s.regions.size(), Partition::whole());
    return s;
  }

  const Partition& partition(const RegionId& r) const {
    for (std::size_t i = 0; i < regions.size(); ++i) {
      if (regions[i] == r) return partitions[i];
    }
    throw Error("unknown region '" + r.key + "'");
  }

  std::size_t partitioned_regions() const {
    return static_cast<std::size_t>(std::count_if(
        partitions.begin(), partitions.end(), [](const Partition& p) { return !p.is_whole(); }));
  }

  // Semantically distinct subspaces over all regions.
  std::vector<Subspace> distinct_subspaces() const { return all_subspaces(partitions); }
};

namespace detail {

class TaintHooks {
 public:
  using Taint = OptionSet;

  explicit TaintHooks(OptionSet suppressed) : suppressed_(suppressed) {}

  Taint option_taint(std::size_t option) const {
    return suppressed_.contains(option) ? OptionSet{} : OptionSet::single(option);
  }
  void on_enter(std::size_t region, const Taint& control) {
    if (!control.empty()) seen_.insert({region, OptionSet{}, control});
  }
  void on_decision(std::size_t region, const Taint& data, const Taint& control) {
    seen_.insert({region, data, control});
  }
  void on_cost(std::size_t, double) {}

  const std::set<std::tuple<std::size_t, OptionSet, OptionSet>>& seen() const {
    return seen_;
  }

 private:
  OptionSet suppressed_;
  std::set<std::tuple<std::size_t, OptionSet, OptionSet>> seen_;
};

}  // namespace detail

// Runs the program once in `config` with taint tracking and refines each
// region's partition by the partitions of every decision reached. Repeated
// decisions with identical taints are folded, since the cross product is
// idempotent.
inline AnalysisState execute_with_taints(const dsl::Program& p, Config config,
                                         const dsl::WorkloadParams& w, Granularity g,
                                         AnalysisState state, const TaintOptions& opts = {},
                                         std::vector<DecisionObservation>* observations = nullptr) {
  const dsl::RegionMap regions(p, g);
  if (state.regions != regions.regions()) {
    throw Error("analysis state does not match the program's regions");
  }
  detail::TaintHooks hooks(opts.suppressed);
  dsl::Interpreter<detail::TaintHooks> interp(p, regions, w, config, hooks, opts.step_budget);
  interp.run();

  for (const auto& [region, data, control] : hooks.seen()) {
    state.partitions[region] =
        cross_product(state.partitions[region], get_part(data, control, config));
    if (observations) observations->push_back({region, data, control, config});
  }
  if (std::find(state.executed.begin(), state.executed.end(), config) == state.executed.end()) {
    state.executed.push_back(config);
  }
  ++state.iterations;
  return state;
}

inline bool explored_all_subspaces(const AnalysisState& state) {
  for (const auto& p : state.partitions) {
    for (const auto& s : p) {
      const bool hit = std::any_of(state.executed.begin(), state.executed.end(),
                                   [&](Config c) { return s.contains(c); });
      if (!hit) return false;
    }
  }
  return true;
}

// Iterative analysis: execute, refine partitions, pick a configuration from
// unexplored subspaces, until every subspace of every region has been
// explored. `initial` is executed first; without it the first configuration
// is chosen like every later one.
inline AnalysisState partition_all_regions(const dsl::Program& p, const dsl::WorkloadParams& w,
                                           Granularity g, std::optional<Config> initial,
                                           std::uint64_t seed, const TaintOptions& opts = {}) {
  dsl::check_workload(p, w);
  AnalysisState state = AnalysisState::fresh(p, g);
  if (initial && !p.options().everything().includes(*initial)) {
    throw Error("initial configuration selects options outside the universe");
  }
  const std::uint64_t limit = p.options().config_count();
  while (!explored_all_subspaces(state)) {
    std::optional<Config> next;
    if (state.iterations == 0 && initial) {
      next = initial;
    } else {
      next = select_next_config(state.executed, state.partitions,
                                mix_seed(seed, state.iterations));
    }
    if (!next || std::find(state.executed.begin(), state.executed.end(), *next) !=
                     state.executed.end()) {
      throw Error("internal error: no configuration reaches the unexplored subspaces");
    }
    if (state.iterations >= limit) {
      throw Error("internal error: analysis did not terminate within |C| iterations");
    }
    state = execute_with_taints(p, *next, w, g, std::move(state), opts);
  }
  return state;
}

inline Partition derive_program_partition(const AnalysisState& state) {
  Partition out = Partition::whole();
  for (const auto& p : state.partitions) out = cross_product(out, p);
  return out;
}

}  // namespace pim::taint
