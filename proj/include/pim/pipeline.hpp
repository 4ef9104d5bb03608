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
#include <vector>

#include "pim/dsl/ast.hpp"
#include "pim/dsl/workload.hpp"
#include "pim/model/model.hpp"
#include "pim/profiler/profiler.hpp"
#include "pim/subspace/cover.hpp"
#include "pim/taint/analysis.hpp"

namespace pim {

// Configurations to measure: the greedy cover of all subspaces if it is
// smaller than the set the analysis executed, otherwise the executed set.
inline std::vector<Config> measurement_configs(const taint::AnalysisState& state,
                                               std::uint64_t seed) {
  auto cover = greedy_min_cover(state.distinct_subspaces(), seed);
  if (cover.size() < state.executed.size()) return cover;
  auto executed = state.executed;
  std::sort(executed.begin(), executed.end());
  return executed;
}

// Local models for every region from one set of measurements.
inline std::vector<model::SubspaceTimes> assign_all(
    const taint::AnalysisState& state, const std::vector<profiler::RegionMeasurement>& ms) {
  std::vector<model::SubspaceTimes> out;
  for (std::size_t i = 0; i < state.regions.size(); ++i) {
    out.push_back(model::assign_measurements(state.partitions[i], ms, state.regions[i],
                                             state.universe));
  }
  return out;
}

inline std::vector<model::PerfModel> build_local_models(
    const std::vector<model::SubspaceTimes>& times) {
  std::vector<model::PerfModel> out;
  for (const auto& st : times) out.push_back(model::build_local_model(st));
  return out;
}

struct WhiteBoxOptions {
  Granularity granularity = Granularity::kMethod;
  std::uint64_t seed = 0;
  std::optional<Config> initial;
  taint::TaintOptions taint;
  profiler::MeasureOptions measure;
  std::size_t repeats = profiler::kDefaultRepeats;
  double threshold = model::kDefaultTermThreshold;
};

struct WhiteBoxResult {
  taint::AnalysisState state;
  std::vector<Config> measured_configs;
  std::vector<profiler::RegionMeasurement> measurements;
  std::vector<model::SubspaceTimes> times;
  std::vector<model::PerfModel> locals;
  model::PerfModel global;
  model::FilterResult filtered;
};

// Analysis on the (reduced) analysis workload, measurement of a covering set
// on the measurement workload, then local and global models.
inline WhiteBoxResult run_white_box(const dsl::Program& p, const dsl::WorkloadParams& analysis,
                                    const dsl::WorkloadParams& measurement,
                                    const WhiteBoxOptions& opts) {
  WhiteBoxResult r;
  r.state = taint::partition_all_regions(p, analysis, opts.granularity, opts.initial, opts.seed,
                                         opts.taint);
  r.measured_configs = measurement_configs(r.state, opts.seed);
  r.measurements = profiler::measure_set(p, r.measured_configs, measurement, opts.granularity,
                                         opts.measure, opts.repeats);
  r.times = assign_all(r.state, r.measurements);
  r.locals = build_local_models(r.times);
  r.global = model::compose_global(r.locals);
  r.filtered = model::filter_terms(r.global, opts.threshold);
  return r;
}

}  // namespace pim
