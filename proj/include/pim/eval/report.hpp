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

#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pim/dsl/ast.hpp"
#include "pim/dsl/workload.hpp"
#include "pim/eval/ols.hpp"
#include "pim/eval/oracle.hpp"
#include "pim/eval/sampling.hpp"
#include "pim/pipeline.hpp"

namespace pim::eval {

struct ApproachResult {
  std::string approach;
  std::size_t configs = 0;
  std::size_t iterations = 0;
  double mape = 0.0;
  std::size_t terms = 0;
  std::size_t regions = 0;
  model::PerfModel model;
  std::vector<double> predicted;
};

struct ComparisonReport {
  Universe universe;
  EvalSet oracle;
  std::vector<ApproachResult> approaches;
  // Covering-set size per white-box granularity.
  std::vector<std::pair<Granularity, std::size_t>> compression;
};

struct CompareOptions {
  std::uint64_t seed = 0;
  double threshold = model::kDefaultTermThreshold;
  profiler::MeasureOptions measure;
  std::size_t repeats = profiler::kDefaultRepeats;
};

inline std::vector<double> predict_all(const model::PerfModel& m, const EvalSet& set) {
  std::vector<double> out;
  out.reserve(set.configs.size());
  for (Config c : set.configs) out.push_back(m.predict(c));
  return out;
}

// White-box pipeline per granularity plus each black-box baseline, all
// scored against the noise-free brute-force oracle.
inline ComparisonReport compare_report(const dsl::Program& p,
                                       const dsl::WorkloadParams& analysis,
                                       const dsl::WorkloadParams& measurement,
                                       const std::vector<Granularity>& granularities,
                                       const std::vector<BaselineSpec>& baselines,
                                       const CompareOptions& opts = {}) {
  ComparisonReport rep;
  rep.universe = p.options();
  rep.oracle = brute_force_oracle(p, measurement);

  for (Granularity g : granularities) {
    WhiteBoxOptions wo;
    wo.granularity = g;
    wo.seed = opts.seed;
    wo.measure = opts.measure;
    wo.repeats = opts.repeats;
    wo.threshold = opts.threshold;
    const auto wb = run_white_box(p, analysis, measurement, wo);
    ApproachResult a;
    a.approach = "white-box/" + to_string(g);
    a.configs = wb.measured_configs.size();
    a.iterations = wb.state.iterations;
    a.model = wb.filtered.model;
    a.predicted = predict_all(a.model, rep.oracle);
    a.mape = mape(a.predicted, rep.oracle.actual);
    a.terms = a.model.size();
    a.regions = wb.state.regions.size();
    rep.approaches.push_back(std::move(a));
    rep.compression.emplace_back(g, wb.measured_configs.size());
  }

  for (const auto& spec : baselines) {
    const auto configs = sample(spec, rep.universe.size(), opts.seed);
    std::vector<std::pair<Config, double>> samples;
    for (Config c : configs) {
      samples.emplace_back(c, profiler::measure_median(p, c, measurement, Granularity::kProgram,
                                                       opts.measure, opts.repeats)
                                  .total);
    }
    const auto fit = learn_ols(samples, spec.degree, rep.universe.size());
    ApproachResult a;
    a.approach = spec.name();
    a.configs = configs.size();
    a.model = model::filter_terms(fit.model, opts.threshold).model;
    a.predicted = predict_all(a.model, rep.oracle);
    a.mape = mape(a.predicted, rep.oracle.actual);
    a.terms = a.model.size();
    a.regions = 1;
    rep.approaches.push_back(std::move(a));
  }
  return rep;
}

inline nlohmann::ordered_json to_json(const ComparisonReport& r) {
  nlohmann::ordered_json j;
  j["options"] = r.universe.names();
  j["oracle_configs"] = r.oracle.configs.size();
  auto& rows = j["approaches"] = nlohmann::ordered_json::array();
  for (const auto& a : r.approaches) {
    nlohmann::ordered_json e;
    e["approach"] = a.approach;
    e["configs"] = a.configs;
    e["iterations"] = a.iterations;
    e["mape"] = a.mape;
    e["terms"] = a.terms;
    e["regions"] = a.regions;
    e["model"] = a.model.to_string(r.universe);
    rows.push_back(std::move(e));
  }
  auto& comp = j["compression"] = nlohmann::ordered_json::object();
  for (const auto& [g, n] : r.compression) comp[to_string(g)] = n;
  return j;
}

inline std::string to_text(const ComparisonReport& r) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %8s %10s %10s %6s %8s\n", "approach", "configs",
                "iterations", "mape(%)", "terms", "regions");
  out << line;
  for (const auto& a : r.approaches) {
    std::snprintf(line, sizeof line, "%-24s %8zu %10zu %10.4f %6zu %8zu\n", a.approach.c_str(),
                  a.configs, a.iterations, a.mape, a.terms, a.regions);
    out << line;
  }
  if (!r.compression.empty()) {
    out << "\ncovering-set size by granularity:";
    for (const auto& [g, n] : r.compression) out << ' ' << to_string(g) << '=' << n;
    out << '\n';
  }
  return out.str();
}

// config,actual,predicted,ape for one approach.
inline std::string predictions_csv(const ComparisonReport& r, const ApproachResult& a) {
  std::ostringstream out;
  out.precision(17);
  out << "config,actual,predicted,ape\n";
  for (std::size_t i = 0; i < r.oracle.configs.size(); ++i) {
    const double act = r.oracle.actual[i];
    const double ape = act == 0.0 ? 0.0 : 100.0 * std::abs(a.predicted[i] - act) / std::abs(act);
    out << r.universe.bitstring(r.oracle.configs[i]) << ',' << act << ',' << a.predicted[i] << ','
        << ape << '\n';
  }
  return out.str();
}

}  // namespace pim::eval
