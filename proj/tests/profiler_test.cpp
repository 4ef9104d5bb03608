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

#include <gtest/gtest.h>

#include <cmath>

#include "pim/profiler/measurement_io.hpp"
#include "pim/profiler/profiler.hpp"
#include "support/fixtures.hpp"
#include "support/program_gen.hpp"

namespace pim::profiler {
namespace {

using testing::fig2_config;

constexpr double kExact = 1e-9;

RegionId method(const std::string& name) { return {Granularity::kMethod, name}; }

class Fig2Profile : public ::testing::Test {
 protected:
  dsl::Program p = testing::load_program("fig2.cpl");
};

TEST_F(Fig2Profile, EmptyConfig) {
  const auto m = measure_config(p, Config(), {}, Granularity::kMethod);
  EXPECT_NEAR(m.self_time.at(method("main")), 3.0, kExact);
  EXPECT_NEAR(m.self_time.at(method("foo")), 0.0, kExact);
  EXPECT_NEAR(m.self_time.at(method("bar")), 5.0, kExact);
  EXPECT_NEAR(m.total, 8.0, kExact);
}

TEST_F(Fig2Profile, AllConfig) {
  const auto m = measure_config(p, fig2_config(true, true, true), {}, Granularity::kMethod);
  EXPECT_NEAR(m.self_time.at(method("main")), 2.0, kExact);
  EXPECT_NEAR(m.self_time.at(method("foo")), 4.0, kExact);
  EXPECT_NEAR(m.self_time.at(method("bar")), 60.0, kExact);
  EXPECT_NEAR(m.total, 66.0, kExact);
}

TEST_F(Fig2Profile, CoverBarTimes) {
  const std::vector<Config> cover = {fig2_config(false, false, false),
                                     fig2_config(true, false, false),
                                     fig2_config(false, false, true),
                                     fig2_config(true, true, true)};
  const std::vector<double> expected = {5, 20, 15, 60};
  const auto ms = measure_set(p, cover, {}, Granularity::kMethod);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    EXPECT_NEAR(ms[i].self_time.at(method("bar")), expected[i], kExact);
  }
}

TEST_F(Fig2Profile, MatchesHandOracleEverywhere) {
  for (std::uint32_t b = 0; b < 16; ++b) {
    const auto t = testing::fig2_oracle(Config(b));
    const auto m = measure_config(p, Config(b), {}, Granularity::kMethod);
    EXPECT_NEAR(m.self_time.at(method("main")), t.main, kExact);
    EXPECT_NEAR(m.self_time.at(method("foo")), t.foo, kExact);
    EXPECT_NEAR(m.self_time.at(method("bar")), t.bar, kExact);
    EXPECT_NEAR(m.total, t.total(), kExact);
  }
}

// Totals agree across granularities, and self-times sum to the total.
TEST_F(Fig2Profile, GranularitiesAgree) {
  for (std::uint32_t b = 0; b < 16; ++b) {
    double prev = -1;
    for (auto g : {Granularity::kControlFlow, Granularity::kMethod, Granularity::kProgram}) {
      const auto m = measure_config(p, Config(b), {}, g);
      double sum = 0;
      for (const auto& [_, t] : m.self_time) sum += t;
      EXPECT_NEAR(sum, m.total, kExact);
      if (prev >= 0) {
        EXPECT_NEAR(m.total, prev, kExact);
      }
      prev = m.total;
    }
  }
}

TEST_F(Fig2Profile, OverheadScales) {
  MeasureOptions opts;
  opts.overhead = 1.08;
  const auto m = measure_config(p, Config(), {}, Granularity::kMethod, opts);
  EXPECT_NEAR(m.total, 8.0 * 1.08, kExact);
}

TEST_F(Fig2Profile, NoisyMedianIsDeterministic) {
  MeasureOptions opts;
  opts.noise = NoiseSpec::gaussian(0.05, 7);
  const auto a = measure_median(p, Config(), {}, Granularity::kMethod, opts, 5);
  const auto b = measure_median(p, Config(), {}, Granularity::kMethod, opts, 5);
  EXPECT_EQ(a.total, b.total);
  EXPECT_NE(a.total, 8.0);
  EXPECT_NEAR(a.total, 8.0, 8.0 * 0.1);
  EXPECT_THROW(measure_median(p, Config(), {}, Granularity::kMethod, opts, 0), Error);
  EXPECT_THROW(NoiseSpec::gaussian(-1, 0), Error);
}

// Per-event noise over n equal events has relative stdev sigma/sqrt(n).
TEST(ProfilerTest, NoiseCalibration) {
  const auto p = dsl::parse_program("fn main() { cost 1; }");
  const double sigma = 0.05;
  const int trials = 4000;
  double sum = 0, sq = 0;
  for (int t = 0; t < trials; ++t) {
    MeasureOptions opts;
    opts.noise = NoiseSpec::gaussian(sigma, static_cast<std::uint64_t>(t));
    const double x = measure_config(p, Config(), {}, Granularity::kProgram, opts).total;
    sum += x;
    sq += x * x;
  }
  const double mean = sum / trials;
  const double sd = std::sqrt(sq / trials - mean * mean);
  EXPECT_NEAR(mean, 1.0, 0.005);
  EXPECT_NEAR(sd, sigma, 0.005);
}

// Self-time is additive: the total of a program equals the sum of its
// per-function totals measured in isolation.
TEST(ProfilerTest, CalleeTimeExcluded) {
  const auto p = dsl::parse_program(R"(
    fn main() { cost 2; f(); cost 1; }
    fn f() { cost 5; g(); }
    fn g() { cost 0.5; })");
  const auto m = measure_config(p, Config(), {}, Granularity::kMethod);
  EXPECT_NEAR(m.self_time.at(method("main")), 3.0, kExact);
  EXPECT_NEAR(m.self_time.at(method("f")), 5.0, kExact);
  EXPECT_NEAR(m.self_time.at(method("g")), 0.5, kExact);
}

TEST(ProfilerTest, ControlFlowAttribution) {
  const auto p = dsl::parse_program(R"(fn main() {
  cost 1;
  if (true) {
    cost 2;
    let i = 0;
    while (i < 3) {
      cost 1;
      i = i + 1;
    }
  }
})");
  const auto m = measure_config(p, Config(), {}, Granularity::kControlFlow);
  EXPECT_NEAR(m.self_time.at({Granularity::kControlFlow, "main:body"}), 1.0, kExact);
  EXPECT_NEAR(m.self_time.at({Granularity::kControlFlow, "main:if@3:3"}), 2.0, kExact);
  EXPECT_NEAR(m.self_time.at({Granularity::kControlFlow, "main:while@6:5"}), 3.0, kExact);
}

TEST(ProfilerTest, GeneratedProgramsConsistent) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    testing::ProgramGenerator gen(seed);
    const auto p = dsl::parse_program(gen.generate({6, 4, 3}));
    for (std::uint32_t b = 0; b < p.options().config_count(); b += 7) {
      const auto cf = measure_config(p, Config(b), {}, Granularity::kControlFlow);
      const auto pr = measure_config(p, Config(b), {}, Granularity::kProgram);
      EXPECT_NEAR(cf.total, pr.total, 1e-6);
      for (const auto& [_, t] : cf.self_time) EXPECT_GE(t, 0.0);
    }
  }
}

TEST_F(Fig2Profile, CsvAndJson) {
  const auto u = p.options();
  const auto ms = measure_set(p, {Config(), fig2_config(true, true, true)}, {},
                              Granularity::kMethod);
  const auto csv = to_csv(ms, u, 1);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "config,region,self_time,repeats");
  EXPECT_NE(csv.find("1110,bar,60,1"), std::string::npos);
  const auto j = to_json(ms, u, Granularity::kMethod, 1);
  const auto back = measurements_from_json(nlohmann::ordered_json::parse(j.dump()), u);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].config, ms[1].config);
  EXPECT_EQ(back[1].self_time, ms[1].self_time);
  EXPECT_DOUBLE_EQ(back[1].total, 66.0);
  EXPECT_THROW(measurements_from_json(j, Universe({"X"})), Error);
}

}  // namespace
}  // namespace pim::profiler
