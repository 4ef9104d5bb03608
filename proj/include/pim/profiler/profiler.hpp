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
#include <map>
#include <random>
#include <vector>

#include "pim/dsl/ast.hpp"
#include "pim/dsl/interpreter.hpp"
#include "pim/dsl/regions.hpp"
#include "pim/dsl/workload.hpp"
#include "pim/error.hpp"
#include "pim/options.hpp"
#include "pim/random.hpp"

namespace pim::profiler {

// Typical profiling overhead to simulate (about 8%).
inline constexpr double kDefaultProfilingOverhead = 1.08;
inline constexpr std::size_t kDefaultRepeats = 5;

struct NoiseSpec {
  enum class Kind { kNone, kMultiplicativeGaussian };
  Kind kind = Kind::kNone;
  // Relative standard deviation per cost event.
  double sigma = 0.0;
  std::uint64_t seed = 0;

  static NoiseSpec none() { return {}; }
  static NoiseSpec gaussian(double sigma, std::uint64_t seed) {
    if (sigma < 0) throw Error("noise sigma must be non-negative");
    return {sigma > 0 ? Kind::kMultiplicativeGaussian : Kind::kNone, sigma, seed};
  }
};

struct MeasureOptions {
  NoiseSpec noise;
  // Multiplies every self-time; 1.0 disables the simulated overhead.
  double overhead = 1.0;
  std::uint64_t step_budget = dsl::kDefaultStepBudget;
};

// Self-time per region for one configuration, in abstract seconds.
struct RegionMeasurement {
  Config config;
  std::map<RegionId, double> self_time;
  double total = 0.0;
};

namespace detail {

class CostHooks {
 public:
  using Taint = dsl::NoTaint;

  CostHooks(std::size_t regions, const NoiseSpec& noise, std::uint64_t seed)
      : times_(regions, 0.0), noise_(noise), rng_(seed) {}

  Taint option_taint(std::size_t) const { return {}; }
  void on_enter(std::size_t, const Taint&) {}
  void on_decision(std::size_t, const Taint&, const Taint&) {}
  void on_cost(std::size_t region, double amount) {
    if (noise_.kind == NoiseSpec::Kind::kMultiplicativeGaussian) {
      amount *= std::max(0.0, 1.0 + noise_.sigma * normal_(rng_));
    }
    times_[region] += amount;
  }

  const std::vector<double>& times() const { return times_; }

 private:
  std::vector<double> times_;
  NoiseSpec noise_;
  Rng rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline RegionMeasurement measure_once(const dsl::Program& p, Config cc,
                                      const dsl::WorkloadParams& w, Granularity g,
                                      const MeasureOptions& opts, std::uint64_t repeat) {
  const dsl::RegionMap regions(p, g);
  const std::uint64_t seed = mix_seed(mix_seed(opts.noise.seed, cc.bits()), repeat);
  CostHooks hooks(regions.size(), opts.noise, seed);
  dsl::Interpreter<CostHooks> interp(p, regions, w, cc, hooks, opts.step_budget);
  interp.run();
  RegionMeasurement m;
  m.config = cc;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const double t = hooks.times()[i] * opts.overhead;
    m.self_time[regions.regions()[i]] = t;
    m.total += t;
  }
  return m;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

// Runs the program once and attributes every cost to the innermost enclosing
// region, excluding time spent in callees (self-time).
inline RegionMeasurement measure_config(const dsl::Program& p, Config cc,
                                        const dsl::WorkloadParams& w, Granularity g,
                                        const MeasureOptions& opts = {}) {
  return detail::measure_once(p, cc, w, g, opts, 0);
}

// Element-wise median over `repeats` runs; the total is the sum of medians.
inline RegionMeasurement measure_median(const dsl::Program& p, Config cc,
                                        const dsl::WorkloadParams& w, Granularity g,
                                        const MeasureOptions& opts = {},
                                        std::size_t repeats = kDefaultRepeats) {
  if (repeats == 0) throw Error("repeats must be at least 1");
  if (repeats == 1 || opts.noise.kind == NoiseSpec::Kind::kNone) {
    return detail::measure_once(p, cc, w, g, opts, 0);
  }
  std::vector<RegionMeasurement> runs;
  for (std::size_t r = 0; r < repeats; ++r) {
    runs.push_back(detail::measure_once(p, cc, w, g, opts, r));
  }
  RegionMeasurement out;
  out.config = cc;
  for (const auto& [region, _] : runs.front().self_time) {
    std::vector<double> v;
    for (const auto& run : runs) v.push_back(run.self_time.at(region));
    const double m = detail::median(std::move(v));
    out.self_time[region] = m;
    out.total += m;
  }
  return out;
}

inline std::vector<RegionMeasurement> measure_set(const dsl::Program& p,
                                                  const std::vector<Config>& configs,
                                                  const dsl::WorkloadParams& w, Granularity g,
                                                  const MeasureOptions& opts = {},
                                                  std::size_t repeats = kDefaultRepeats) {
  std::vector<RegionMeasurement> out;
  out.reserve(configs.size());
  for (Config c : configs) out.push_back(measure_median(p, c, w, g, opts, repeats));
  return out;
}

}  // namespace pim::profiler
