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

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "pim/cli/commands.hpp"

namespace {

using pim::Granularity;
using pim::cli::Manifest;

const std::map<std::string, Granularity> kGranularities = {
    {"cf", Granularity::kControlFlow},
    {"method", Granularity::kMethod},
    {"program", Granularity::kProgram}};

void program_flag(CLI::App* app, Manifest& m) {
  app->add_option("--program", m.program, "DSL source file")->required();
}

void out_flag(CLI::App* app, Manifest& m) {
  app->add_option("--out", m.out, "output directory")->capture_default_str();
}

void measure_flags(CLI::App* app, Manifest& m) {
  app->add_option("--measure-workload", m.measure_workload, "workload JSON for measurement");
  app->add_option("--noise-sigma", m.noise_sigma, "relative noise per cost event")
      ->capture_default_str();
  app->add_option("--repeats", m.repeats, "runs per configuration (median)")
      ->capture_default_str();
  app->add_option("--overhead", m.overhead, "simulated profiler slowdown factor")
      ->capture_default_str();
}

void seed_flag(CLI::App* app, Manifest& m) {
  app->add_option("--seed", m.seed, "seed for selection, covers and noise")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pim: white-box performance-influence models for configurable DSL programs"};
  app.require_subcommand(1);
  Manifest m;
  std::string state;
  std::string measurements;
  std::string model_file;
  std::string config;
  std::string only_granularity;
  std::size_t random_n = 0;

  auto* analyze = app.add_subcommand("analyze", "partition configurations by taint analysis");
  program_flag(analyze, m);
  analyze->add_option("--analysis-workload", m.analysis_workload, "workload JSON for analysis");
  analyze->add_option("--granularity", m.granularity, "region granularity")
      ->transform(CLI::CheckedTransformer(kGranularities, CLI::ignore_case));
  analyze->add_option("--initial", m.initial, "first configuration, e.g. A,D");
  seed_flag(analyze, m);
  out_flag(analyze, m);

  auto* measure = app.add_subcommand("measure", "profile the covering configurations");
  program_flag(measure, m);
  measure->add_option("--state", state, "analysis state (default: <out>/state.json)");
  measure_flags(measure, m);
  seed_flag(measure, m);
  out_flag(measure, m);

  auto* model = app.add_subcommand("model", "build local and global models");
  model->add_option("--state", state, "analysis state (default: <out>/state.json)");
  model->add_option("--measurements", measurements,
                    "measurements (default: <out>/measurements.json)");
  model->add_option("--threshold", m.threshold, "drop terms with smaller |coefficient|")
      ->capture_default_str();
  out_flag(model, m);

  auto* predict = app.add_subcommand("predict", "predict one configuration");
  predict->add_option("--model", model_file, "model JSON")->required();
  predict->add_option("config", config, "selected options, e.g. A,C; empty for none");

  auto* evaluate = app.add_subcommand("evaluate", "compare against black-box baselines");
  program_flag(evaluate, m);
  evaluate->add_option("--analysis-workload", m.analysis_workload, "workload JSON for analysis");
  evaluate->add_option("--granularity", only_granularity, "only this white-box granularity")
      ->check(CLI::IsMember({"cf", "method", "program"}));
  evaluate->add_option("--threshold", m.threshold, "drop terms with smaller |coefficient|")
      ->capture_default_str();
  evaluate->add_option("--random", random_n, "add a random(n)+ols2 baseline");
  measure_flags(evaluate, m);
  seed_flag(evaluate, m);
  out_flag(evaluate, m);

  auto* report = app.add_subcommand("report", "analyze, measure and model in one run");
  program_flag(report, m);
  report->add_option("--analysis-workload", m.analysis_workload, "workload JSON for analysis");
  report->add_option("--granularity", m.granularity, "region granularity")
      ->transform(CLI::CheckedTransformer(kGranularities, CLI::ignore_case));
  report->add_option("--initial", m.initial, "first configuration, e.g. A,D");
  report->add_option("--threshold", m.threshold, "drop terms with smaller |coefficient|")
      ->capture_default_str();
  measure_flags(report, m);
  seed_flag(report, m);
  out_flag(report, m);

  CLI11_PARSE(app, argc, argv);

  try {
    if (state.empty()) state = pim::cli::state_path(m);
    if (measurements.empty()) measurements = m.out + "/measurements.json";
    if (*analyze) {
      std::cout << pim::cli::cmd_analyze(m);
    } else if (*measure) {
      std::cout << pim::cli::cmd_measure(m, state);
    } else if (*model) {
      std::cout << pim::cli::cmd_model(state, measurements, m.threshold, m.out);
    } else if (*predict) {
      std::printf("%.6f\n", pim::cli::cmd_predict(model_file, config));
    } else if (*evaluate) {
      pim::cli::EvaluateOptions e;
      if (!only_granularity.empty()) e.granularities = {kGranularities.at(only_granularity)};
      e.random_n = random_n;
      std::cout << pim::cli::cmd_evaluate(m, e);
    } else if (*report) {
      std::cout << pim::cli::cmd_report(m);
    }
  } catch (const pim::cli::PathError& e) {
    std::cerr << "pim: " << e.what() << "\n";
    return pim::cli::kExitBadPath;
  } catch (const std::exception& e) {
    std::cerr << "pim: " << e.what() << "\n";
    return pim::cli::kExitError;
  }
  return pim::cli::kExitOk;
}
