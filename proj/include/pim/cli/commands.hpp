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
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pim/dsl/parser.hpp"
#include "pim/dsl/workload.hpp"
#include "pim/eval/report.hpp"
#include "pim/model/model_io.hpp"
#include "pim/pipeline.hpp"
#include "pim/profiler/measurement_io.hpp"
#include "pim/taint/state_io.hpp"

// Batch front end. Each command reads and writes files in an output
// directory and returns the text it would print.
namespace pim::cli {

// Missing or unreadable input file; exit code 2.
class PathError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBadPath = 2;

struct Manifest {
  std::string program;
  std::string analysis_workload;
  std::string measure_workload;
  Granularity granularity = Granularity::kMethod;
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;
  std::size_t repeats = profiler::kDefaultRepeats;
  double threshold = model::kDefaultTermThreshold;
  // Simulated profiler slowdown; 1 disables it.
  double overhead = 1.0;
  // First configuration of the analysis, e.g. "A,D"; empty lets the
  // analysis choose.
  std::optional<std::string> initial;
  std::string out = ".";

  void validate() const {
    if (threshold < 0) throw Error("--threshold must be non-negative");
    if (repeats == 0) throw Error("--repeats must be at least 1");
    if (noise_sigma < 0) throw Error("--noise-sigma must be non-negative");
    if (overhead <= 0) throw Error("--overhead must be positive");
  }

  profiler::MeasureOptions measure_options() const {
    profiler::MeasureOptions m;
    m.noise = profiler::NoiseSpec::gaussian(noise_sigma, seed);
    m.overhead = overhead;
    return m;
  }
};

namespace detail {

inline std::string read_input(const std::string& path) {
  std::error_code ec;
  if (path.empty() || !std::filesystem::is_regular_file(path, ec)) {
    throw PathError("no such file: '" + path + "'");
  }
  try {
    return dsl::read_file(path);
  } catch (const Error& e) {
    throw PathError(e.what());
  }
}

inline nlohmann::ordered_json read_json(const std::string& path) {
  const auto text = read_input(path);
  try {
    return nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("'" + path + "': " + e.what());
  }
}

inline dsl::WorkloadParams read_workload(const std::string& path) {
  if (path.empty()) return {};
  return dsl::parse_workload(read_input(path));
}

inline std::string output_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

inline void write_output(const std::string& dir, const std::string& name,
                         const std::string& text) {
  const auto path = output_path(dir, name);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("cannot write '" + path + "'");
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline dsl::Program load_program(const std::string& path) {
  return dsl::parse_program(read_input(path));
}

inline void check_state_matches(const taint::AnalysisState& s, const dsl::Program& p) {
  if (s.universe.names() != p.options().names() ||
      s.regions != dsl::enumerate_regions(p, s.granularity)) {
    throw Error("analysis state does not belong to this program");
  }
}

inline std::string approach_file(const std::string& approach) {
  std::string s;
  for (char c : approach) {
    s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-') ? c : '_';
  }
  return "predictions_" + s + ".csv";
}

}  // namespace detail

inline std::string state_path(const Manifest& m) { return detail::output_path(m.out, "state.json"); }

// Taint analysis on the analysis workload; writes state.json.
inline std::string cmd_analyze(const Manifest& m) {
  m.validate();
  const auto p = detail::load_program(m.program);
  const auto w = detail::read_workload(m.analysis_workload);
  std::optional<Config> initial;
  if (m.initial) initial = p.options().parse_list(*m.initial);
  const auto state = taint::partition_all_regions(p, w, m.granularity, initial, m.seed);
  detail::write_output(m.out, "state.json", detail::dump(taint::to_json(state)));
  std::ostringstream s;
  s << "regions: " << state.regions.size() << "\n"
    << "partitioned regions: " << state.partitioned_regions() << "\n"
    << "subspaces: " << state.distinct_subspaces().size() << "\n"
    << "configs executed: " << state.executed.size() << "\n";
  return s.str();
}

// Measures the covering set on the measurement workload; writes
// measurements.csv and measurements.json. With overhead, end-to-end times of
// the same configurations without the profiler are recorded too.
inline std::string cmd_measure(const Manifest& m, const std::string& state_file) {
  m.validate();
  const auto p = detail::load_program(m.program);
  const auto w = detail::read_workload(m.measure_workload);
  const auto state = taint::state_from_json(detail::read_json(state_file));
  detail::check_state_matches(state, p);
  if (!taint::explored_all_subspaces(state)) {
    throw Error("analysis state is incomplete: some subspaces were never executed");
  }
  dsl::check_workload(p, w);
  const auto configs = measurement_configs(state, m.seed);
  const auto ms =
      profiler::measure_set(p, configs, w, state.granularity, m.measure_options(), m.repeats);
  auto j = profiler::to_json(ms, state.universe, state.granularity, m.repeats);
  if (m.overhead != 1.0) {
    auto plain = m.measure_options();
    plain.overhead = 1.0;
    plain.noise.seed = mix_seed(plain.noise.seed, 1);
    auto& arr = j["unprofiled"] = nlohmann::ordered_json::array();
    for (Config c : configs) {
      nlohmann::ordered_json e;
      e["config"] = state.universe.bitstring(c);
      e["total"] =
          profiler::measure_median(p, c, w, Granularity::kProgram, plain, m.repeats).total;
      arr.push_back(std::move(e));
    }
  }
  detail::write_output(m.out, "measurements.json", detail::dump(j));
  detail::write_output(m.out, "measurements.csv",
                       profiler::to_csv(ms, state.universe, m.repeats));
  std::size_t rows = 0;
  for (const auto& x : ms) rows += x.self_time.size();
  std::ostringstream s;
  s << "configs measured: " << ms.size() << "\n"
    << "region-time rows: " << rows << "\n";
  return s.str();
}

// Local and global models; writes model.json and model.txt.
inline std::string cmd_model(const std::string& state_file, const std::string& measurements_file,
                             double threshold, const std::string& out) {
  if (threshold < 0) throw Error("--threshold must be non-negative");
  const auto state = taint::state_from_json(detail::read_json(state_file));
  const auto mj = detail::read_json(measurements_file);
  if (mj.value("granularity", std::string()) != to_string(state.granularity)) {
    throw Error("measurements and analysis state use different granularities");
  }
  const auto ms = profiler::measurements_from_json(mj, state.universe);
  const auto times = assign_all(state, ms);
  auto locals = build_local_models(times);
  auto global = model::compose_global(locals);

  std::ostringstream s;
  if (mj.contains("unprofiled")) {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& e : mj.at("unprofiled")) {
      const Config c = state.universe.parse_bitstring(e.at("config").get<std::string>());
      pairs.emplace_back(global.predict(c), e.at("total").get<double>());
    }
    const auto corr = model::linear_correction(global, pairs);
    global = corr.model;
    for (auto& l : locals) l = l.scaled(corr.alpha);
    char buf[64];
    std::snprintf(buf, sizeof buf, "overhead correction: alpha = %.6f\n", corr.alpha);
    s << buf;
  }
  const auto filtered = model::filter_terms(global, threshold);
  model::ModelBundle bundle{state.universe, filtered.model, locals};
  detail::write_output(out, "model.json", detail::dump(model::to_json(bundle)));

  std::ostringstream txt;
  txt << "global: " << filtered.model.to_string(state.universe) << "\n";
  if (filtered.removed_terms) {
    txt << "filtered: " << filtered.removed_terms << " terms below " << threshold << "\n";
  }
  txt << "\n";
  for (const auto& l : locals) txt << l.scope() << ": " << l.to_string(state.universe) << "\n";
  txt << "\ninfluences:\n" << model::influence_listing(bundle);
  const auto suspects = model::detect_suspect_regions(times);
  for (const auto& r : suspects) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", r.cov);
    txt << "suspect: " << r.region.key << " in " << r.subspace.to_string(state.universe)
        << " (cov " << buf << ")\n";
  }
  detail::write_output(out, "model.txt", txt.str());
  s << txt.str();
  return s.str();
}

inline double cmd_predict(const std::string& model_file, const std::string& config) {
  const auto b = model::bundle_from_json(detail::read_json(model_file));
  return b.global.predict(b.universe.parse_list(config));
}

struct EvaluateOptions {
  // Empty: all three granularities.
  std::vector<Granularity> granularities;
  // Extra random(n)+ols2 baseline when non-zero.
  std::size_t random_n = 0;
};

inline std::vector<eval::BaselineSpec> default_baselines(std::size_t random_n) {
  using S = eval::BaselineSpec::Sampler;
  std::vector<eval::BaselineSpec> out = {
      {S::kFeatureWise, 0, 1}, {S::kPairWise, 0, 1}, {S::kPairWise, 0, 2},
      {S::kBruteForce, 0, 2}};
  if (random_n) out.push_back({S::kRandom, random_n, 2});
  return out;
}

// White-box against the baselines, scored on the brute-force oracle; writes
// report.json, report.txt and one predictions CSV per approach.
inline std::string cmd_evaluate(const Manifest& m, const EvaluateOptions& e = {}) {
  m.validate();
  const auto p = detail::load_program(m.program);
  const auto aw = detail::read_workload(m.analysis_workload);
  const auto mw = detail::read_workload(m.measure_workload);
  auto gs = e.granularities;
  if (gs.empty()) gs = {Granularity::kControlFlow, Granularity::kMethod, Granularity::kProgram};
  eval::CompareOptions co;
  co.seed = m.seed;
  co.threshold = m.threshold;
  co.measure = m.measure_options();
  co.repeats = m.repeats;
  const auto rep = eval::compare_report(p, aw, mw, gs, default_baselines(e.random_n), co);
  const auto text = eval::to_text(rep);
  detail::write_output(m.out, "report.json", detail::dump(eval::to_json(rep)));
  detail::write_output(m.out, "report.txt", text);
  for (const auto& a : rep.approaches) {
    detail::write_output(m.out, detail::approach_file(a.approach), eval::predictions_csv(rep, a));
  }
  return text;
}

// analyze, measure and model in one go.
inline std::string cmd_report(const Manifest& m) {
  std::string s = cmd_analyze(m);
  s += cmd_measure(m, state_path(m));
  s += cmd_model(state_path(m), detail::output_path(m.out, "measurements.json"), m.threshold,
                 m.out);
  return s;
}

}  // namespace pim::cli
