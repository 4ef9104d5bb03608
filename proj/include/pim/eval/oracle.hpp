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

#include <cmath>
#include <cstdint>
#include <vector>

#include "pim/dsl/ast.hpp"
#include "pim/dsl/workload.hpp"
#include "pim/error.hpp"
#include "pim/options.hpp"
#include "pim/profiler/profiler.hpp"

namespace pim::eval {

inline constexpr std::size_t kMaxOracleOptions = 16;

// Configurations with their end-to-end times.
struct EvalSet {
  std::vector<Config> configs;
  std::vector<double> actual;
};

// Measures every configuration, in increasing bitmask order.
inline EvalSet brute_force_oracle(const dsl::Program& p, const dsl::WorkloadParams& w,
                                  const profiler::MeasureOptions& opts = {},
                                  std::size_t repeats = 1) {
  const auto n = p.options().size();
  if (n > kMaxOracleOptions) {
    throw UniverseTooLarge("brute-force oracle supports at most " +
                           std::to_string(kMaxOracleOptions) + " options, program has " +
                           std::to_string(n));
  }
  EvalSet set;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n); ++bits) {
    const Config c(bits);
    set.configs.push_back(c);
    set.actual.push_back(
        profiler::measure_median(p, c, w, Granularity::kProgram, opts, repeats).total);
  }
  return set;
}

// Mean absolute percentage error, in percent.
inline double mape(const std::vector<double>& predicted, const std::vector<double>& actual) {
  if (predicted.size() != actual.size()) throw Error("mape: length mismatch");
  if (actual.empty()) throw Error("mape: no data");
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] == 0.0) throw Error("mape: actual value is zero");
    sum += std::abs(predicted[i] - actual[i]) / std::abs(actual[i]);
  }
  return 100.0 * sum / static_cast<double>(actual.size());
}

}  // namespace pim::eval
