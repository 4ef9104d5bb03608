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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pim/eval/ols.hpp"
#include "pim/eval/oracle.hpp"
#include "pim/eval/report.hpp"
#include "pim/eval/sampling.hpp"
#include "pim/pipeline.hpp"
#include "support/fixtures.hpp"
#include "support/program_gen.hpp"

namespace {

using namespace pim;

// Tolerances and budgets.
constexpr double kCoefficientTol = 1e-9;
constexpr double kGoldenSeconds = 1.0;
constexpr std::size_t kExactPrograms = 120;
constexpr double kExactMapeTol = 1e-6;  // percent
constexpr double kZeroTimeTol = 1e-9;
constexpr double kExactSeconds = 60.0;
constexpr std::size_t kOrderPrograms = 10;
constexpr std::size_t kOrderSeeds = 5;
constexpr std::size_t kSharedPrograms = 25;
constexpr double kBaselineGapPoints = 10.0;
constexpr double kOls2Tol = 1e-6;
constexpr double kNoiseSigma = 0.05;
constexpr std::size_t kNoiseRepeats = 5;
constexpr std::size_t kNoiseTrials = 20;
constexpr double kNoiseMapeMax = 5.0;
constexpr double kOverheadMapeMax = 0.1;
constexpr double kSuspectCov = 1.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Subspace sub(const char* text, const Universe& u) { return Subspace::parse(text, u); }

OptionSet term(std::initializer_list<std::size_t> idx) {
  OptionSet t;
  for (auto i : idx) t = t.with(i);
  return t;
}

Outcome golden() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = testing::load_program("fig2.cpl");
  const Universe u = p.options();
  WhiteBoxOptions opts;
  opts.initial = testing::fig2_config(true, false, false, true);
  const auto r = run_white_box(p, {}, {}, opts);
  const double secs = seconds_since(t0);

  const std::vector<Subspace> expected = {
      sub("A", u),       sub("!A", u),      sub("A & B", u),    sub("A & !B", u),
      sub("!A & C", u),  sub("!A & !C", u), sub("A & C", u),    sub("A & !C", u)};
  const auto got = r.state.distinct_subspaces();
  bool subspaces_ok = got.size() == expected.size();
  for (const auto& e : expected) {
    subspaces_ok = subspaces_ok && std::any_of(got.begin(), got.end(),
                                               [&](const Subspace& s) { return s.equivalent(e); });
  }
  using testing::kA;
  using testing::kB;
  using testing::kC;
  model::PerfModel want;
  want.add({}, 8);
  want.add(term({kA}), 15);
  want.add(term({kC}), 10);
  want.add(term({kA, kB}), 3);
  want.add(term({kA, kC}), 30);
  bool model_ok = r.global.size() == want.size();
  double worst = 0;
  for (const auto& [t, c] : want.terms()) {
    worst = std::max(worst, std::abs(r.global.coefficient(t) - c));
  }
  model_ok = model_ok && worst <= kCoefficientTol;
  const bool configs_ok = r.state.executed.size() == 4;
  return {configs_ok && subspaces_ok && model_ok && secs < kGoldenSeconds,
          std::to_string(r.state.executed.size()) + " configs, " + std::to_string(got.size()) +
              " subspaces, model " + r.global.to_string(u) + ", max coeff err " +
              fmt("%.1e", worst) + ", " + fmt("%.3f s", secs)};
}

// Model vs oracle for one program and granularity; returns MAPE over
// non-zero oracle times and, through `zero_ok`, whether zero times are hit.
double exactness_mape(const dsl::Program& p, Granularity g, bool& zero_ok) {
  WhiteBoxOptions opts;
  opts.granularity = g;
  const auto r = run_white_box(p, {}, {}, opts);
  const auto oracle = eval::brute_force_oracle(p, {});
  std::vector<double> pred, act;
  zero_ok = true;
  for (std::size_t i = 0; i < oracle.configs.size(); ++i) {
    const double y = r.global.predict(oracle.configs[i]);
    if (oracle.actual[i] == 0.0) {
      zero_ok = zero_ok && std::abs(y) <= kZeroTimeTol;
    } else {
      pred.push_back(y);
      act.push_back(oracle.actual[i]);
    }
  }
  return pred.empty() ? 0.0 : eval::mape(pred, act);
}

Outcome exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t configs = 0, failures = 0;
  double worst = 0;
  for (std::size_t i = 0; i < kExactPrograms; ++i) {
    testing::ProgramGenerator gen(i);
    const auto p = dsl::parse_program(gen.generate({10, 5, 3}));
    configs += p.options().config_count();
    for (auto g : {Granularity::kMethod, Granularity::kControlFlow}) {
      bool zero_ok = false;
      const double m = exactness_mape(p, g, zero_ok);
      worst = std::max(worst, m);
      if (m > kExactMapeTol || !zero_ok) ++failures;
    }
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < kExactSeconds,
          std::to_string(kExactPrograms) + " programs x {method, cf}, " + std::to_string(configs) +
              " configs in total, worst MAPE " + fmt("%.2e%%", worst) + ", " +
              std::to_string(failures) + " failures, " + fmt("%.1f s", secs)};
}

Outcome order_independence() {
  std::size_t mismatches = 0, compared = 0;
  for (std::size_t i = 0; i < kOrderPrograms; ++i) {
    testing::ProgramGenerator gen(500 + i);
    const auto p = dsl::parse_program(gen.generate({8, 5, 3}));
    std::vector<taint::AnalysisState> runs;
    for (std::size_t s = 0; s < kOrderSeeds; ++s) {
      runs.push_back(taint::partition_all_regions(p, {}, Granularity::kControlFlow, std::nullopt,
                                                  1000 * s + 17));
    }
    for (std::size_t a = 0; a < runs.size(); ++a) {
      for (std::size_t b = a + 1; b < runs.size(); ++b) {
        for (std::size_t k = 0; k < runs[a].partitions.size(); ++k) {
          ++compared;
          if (!runs[a].partitions[k].equivalent(runs[b].partitions[k])) ++mismatches;
        }
      }
    }
  }
  return {mismatches == 0, std::to_string(kOrderPrograms) + " programs x " +
                               std::to_string(kOrderSeeds) + " seeds, " +
                               std::to_string(compared) + " partition pairs, " +
                               std::to_string(mismatches) + " mismatches"};
}

std::size_t cover_size(const dsl::Program& p, Granularity g) {
  const auto s = taint::partition_all_regions(p, {}, g, std::nullopt, 0);
  return measurement_configs(s, 0).size();
}

Outcome compression() {
  const auto p = testing::load_program("three_ifs.cpl");
  const auto region = cover_size(p, Granularity::kMethod);
  const auto program = cover_size(p, Granularity::kProgram);
  std::size_t unequal = 0;
  for (std::size_t i = 0; i < kSharedPrograms; ++i) {
    testing::ProgramGenerator gen(900 + i);
    const auto q = dsl::parse_program(gen.generate_shared_taints(8, 5));
    if (cover_size(q, Granularity::kControlFlow) != cover_size(q, Granularity::kMethod)) {
      ++unequal;
    }
  }
  return {region == 2 && program == 8 && unequal == 0,
          "three_ifs: method " + std::to_string(region) + " vs program " +
              std::to_string(program) + "; shared taints: " + std::to_string(unequal) + "/" +
              std::to_string(kSharedPrograms) + " programs with cf != method"};
}

Outcome baselines() {
  const auto p = testing::load_program("fig2.cpl");
  using S = eval::BaselineSpec::Sampler;
  eval::CompareOptions co;
  co.repeats = 1;
  const auto rep = eval::compare_report(p, {}, {}, {Granularity::kMethod},
                                        {{S::kFeatureWise, 0, 1}}, co);
  const double wb = rep.approaches[0].mape;
  const double fw = rep.approaches[1].mape;

  std::vector<std::pair<Config, double>> all;
  for (std::size_t i = 0; i < rep.oracle.configs.size(); ++i) {
    all.emplace_back(rep.oracle.configs[i], rep.oracle.actual[i]);
  }
  const auto fit = eval::learn_ols(all, 2, p.options().size());
  const double ac = fit.model.coefficient(term({testing::kA, testing::kC}));
  return {fw - wb >= kBaselineGapPoints && std::abs(ac - 30.0) <= kOls2Tol,
          "feature-wise+ols1 " + fmt("%.4f%%", fw) + " vs white-box " + fmt("%.4f%%", wb) +
              "; brute-force+ols2 AC = " + fmt("%.9f", ac)};
}

Outcome noise() {
  const auto p = testing::load_program("fig2.cpl");
  const auto oracle = eval::brute_force_oracle(p, {});
  double worst = 0, sum = 0;
  for (std::size_t t = 0; t < kNoiseTrials; ++t) {
    WhiteBoxOptions opts;
    opts.seed = t;
    opts.measure.noise = profiler::NoiseSpec::gaussian(kNoiseSigma, 7000 + t);
    opts.repeats = kNoiseRepeats;
    const auto r = run_white_box(p, {}, {}, opts);
    const double m = eval::mape(eval::predict_all(r.global, oracle), oracle.actual);
    worst = std::max(worst, m);
    sum += m;
  }
  return {worst <= kNoiseMapeMax, std::to_string(kNoiseTrials) + " trials, sigma " +
                                      fmt("%.2f", kNoiseSigma) + ", median of " +
                                      std::to_string(kNoiseRepeats) + ": mean MAPE " +
                                      fmt("%.3f%%", sum / kNoiseTrials) + ", worst " +
                                      fmt("%.3f%%", worst)};
}

Outcome overhead() {
  const auto p = testing::load_program("fig2.cpl");
  const auto oracle = eval::brute_force_oracle(p, {});
  WhiteBoxOptions opts;
  opts.measure.overhead = profiler::kDefaultProfilingOverhead;
  const auto r = run_white_box(p, {}, {}, opts);
  std::vector<std::pair<double, double>> pairs;
  for (Config c : r.measured_configs) {
    pairs.emplace_back(r.global.predict(c),
                       profiler::measure_config(p, c, {}, Granularity::kProgram).total);
  }
  const auto corr = model::linear_correction(r.global, pairs);
  const double raw = eval::mape(eval::predict_all(r.global, oracle), oracle.actual);
  const double fixed = eval::mape(eval::predict_all(corr.model, oracle), oracle.actual);
  return {fixed <= kOverheadMapeMax, "uncorrected " + fmt("%.3f%%", raw) + ", alpha " +
                                         fmt("%.6f", corr.alpha) + ", corrected " +
                                         fmt("%.2e%%", fixed)};
}

Outcome suspect() {
  const auto p = testing::load_program("suspect.cpl");
  const Universe u = p.options();
  taint::TaintOptions topts;
  topts.suppressed = OptionSet::single(u.index("B"));
  const auto state =
      taint::partition_all_regions(p, {}, Granularity::kMethod, std::nullopt, 0, topts);
  std::vector<Config> all;
  for (std::uint32_t b = 0; b < u.config_count(); ++b) all.push_back(Config(b));
  const auto ms = profiler::measure_set(p, all, {}, Granularity::kMethod);
  const auto flagged = model::detect_suspect_regions(assign_all(state, ms));
  std::string detail = std::to_string(flagged.size()) + " flagged";
  bool ok = false;
  for (const auto& f : flagged) {
    detail += "; " + f.region.key + " in " + f.subspace.to_string(u) + " cov " +
              fmt("%.3f", f.cov);
    ok = ok || f.cov > kSuspectCov;
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"running-example golden", golden},
      {"exactness on generated programs", exactness},
      {"order independence", order_independence},
      {"compression", compression},
      {"baseline interaction blindness", baselines},
      {"noise robustness", noise},
      {"overhead correction", overhead},
      {"suspect-region detector", suspect}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
