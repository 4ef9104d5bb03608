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

#include <set>
#include <string>

#include "pim/eval/ols.hpp"
#include "pim/eval/oracle.hpp"
#include "pim/eval/report.hpp"
#include "pim/eval/sampling.hpp"
#include "support/fixtures.hpp"

namespace pim::eval {
namespace {

using testing::kA;
using testing::kC;

TEST(OracleTest, RunningExample) {
  const auto p = testing::load_program("fig2.cpl");
  const auto set = brute_force_oracle(p, {});
  ASSERT_EQ(set.configs.size(), 16u);
  for (std::size_t i = 0; i < 16; ++i) {
    EXPECT_EQ(set.configs[i].bits(), i);
    EXPECT_NEAR(set.actual[i], testing::fig2_oracle(set.configs[i]).total(), 1e-9);
  }
}

TEST(OracleTest, TooManyOptions) {
  std::string src = "fn main() {";
  for (int i = 0; i < 17; ++i) src += " let o" + std::to_string(i) + " = getopt(\"O" + std::to_string(i) + "\");";
  src += " }";
  EXPECT_THROW(brute_force_oracle(dsl::parse_program(src), {}), UniverseTooLarge);
}

TEST(MapeTest, Examples) {
  EXPECT_DOUBLE_EQ(mape({110}, {100}), 10.0);
  EXPECT_DOUBLE_EQ(mape({90, 10}, {100, 10}), 5.0);
  EXPECT_DOUBLE_EQ(mape({1, 2}, {1, 2}), 0.0);
  EXPECT_THROW(mape({1}, {0}), Error);
  EXPECT_THROW(mape({1}, {1, 2}), Error);
  EXPECT_THROW(mape({}, {}), Error);
}

TEST(SamplingTest, FeatureWise) {
  const auto s = feature_wise_sample(4);
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s[0], Config());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s[i + 1], Config::single(i));
}

TEST(SamplingTest, Random) {
  const auto s = random_sample(8, 50, 3);
  EXPECT_EQ(s.size(), 50u);
  EXPECT_EQ(std::set<Config>(s.begin(), s.end()).size(), 50u);
  for (Config c : s) EXPECT_TRUE(Config::all(8).includes(c));
  EXPECT_EQ(random_sample(8, 50, 3), s);
  EXPECT_THROW(random_sample(3, 9, 0), Error);
}

TEST(SamplingTest, BruteForce) {
  const auto s = brute_force_sample(3);
  ASSERT_EQ(s.size(), 8u);
  for (std::uint32_t b = 0; b < 8; ++b) EXPECT_EQ(s[b], Config(b));
}

TEST(SamplingTest, PairWiseTwoOptions) {
  const auto s = pair_wise_sample(2, 0);
  EXPECT_EQ(std::set<Config>(s.begin(), s.end()).size(), 4u);
}

// Every value pair of every option pair occurs in some row.
TEST(SamplingTest, PairWiseCoversAllPairs) {
  for (std::size_t n = 2; n <= 12; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto rows = pair_wise_sample(n, seed);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          for (int v = 0; v < 4; ++v) {
            const bool want_i = v & 2, want_j = v & 1;
            const bool hit = std::any_of(rows.begin(), rows.end(), [&](Config c) {
              return c.contains(i) == want_i && c.contains(j) == want_j;
            });
            EXPECT_TRUE(hit) << n << " " << i << " " << j << " " << v;
          }
        }
      }
      if (n >= 3) {
        EXPECT_LT(rows.size(), std::size_t{1} << n);
      }
    }
  }
}

TEST(SamplingTest, Names) {
  EXPECT_EQ((BaselineSpec{BaselineSpec::Sampler::kFeatureWise, 0, 1}.name()), "feature-wise+ols1");
  EXPECT_EQ((BaselineSpec{BaselineSpec::Sampler::kRandom, 50, 2}.name()), "random(50)+ols2");
}

std::vector<std::pair<Config, double>> fig2_samples(const std::vector<Config>& cs) {
  std::vector<std::pair<Config, double>> out;
  for (Config c : cs) out.emplace_back(c, testing::fig2_oracle(c).total());
  return out;
}

TEST(OlsTest, ExactRecoveryOfLinearFunction) {
  std::vector<std::pair<Config, double>> s;
  for (std::uint32_t b = 0; b < 8; ++b) {
    const Config c(b);
    s.emplace_back(c, 2.0 + (c.contains(0) ? 3.0 : 0) - (c.contains(2) ? 1.5 : 0));
  }
  const auto fit = learn_ols(s, 1, 3);
  EXPECT_FALSE(fit.rank_deficient());
  EXPECT_NEAR(fit.model.intercept(), 2.0, 1e-9);
  EXPECT_NEAR(fit.model.coefficient(OptionSet::single(0)), 3.0, 1e-9);
  EXPECT_NEAR(fit.model.coefficient(OptionSet::single(1)), 0.0, 1e-9);
  EXPECT_NEAR(fit.model.coefficient(OptionSet::single(2)), -1.5, 1e-9);
  EXPECT_THROW(learn_ols(s, 3, 3), Error);
  EXPECT_THROW(learn_ols({}, 1, 3), Error);
}

TEST(OlsTest, BruteForceDegreeTwoFindsInteraction) {
  const auto fit = learn_ols(fig2_samples(brute_force_sample(4)), 2, 4);
  EXPECT_NEAR(fit.model.coefficient(OptionSet::single(kA).with(kC)), 30.0, 1e-6);
  EXPECT_NEAR(fit.model.coefficient(OptionSet::single(kA).with(testing::kB)), 3.0, 1e-6);
}

TEST(OlsTest, FeatureWiseMissesInteraction) {
  const auto fit = learn_ols(fig2_samples(feature_wise_sample(4)), 1, 4);
  std::vector<double> pred, act;
  for (std::uint32_t b = 0; b < 16; ++b) {
    pred.push_back(fit.model.predict(Config(b)));
    act.push_back(testing::fig2_oracle(Config(b)).total());
  }
  EXPECT_GT(mape(pred, act), 1.0);
}

TEST(OlsTest, RankDeficientDesign) {
  const auto fit = learn_ols(fig2_samples(feature_wise_sample(4)), 2, 4);
  EXPECT_TRUE(fit.rank_deficient());
}

TEST(ReportTest, RunningExample) {
  const auto p = testing::load_program("fig2.cpl");
  const std::vector<BaselineSpec> baselines = {
      {BaselineSpec::Sampler::kFeatureWise, 0, 1},
      {BaselineSpec::Sampler::kPairWise, 0, 2},
      {BaselineSpec::Sampler::kBruteForce, 0, 2}};
  const auto rep = compare_report(
      p, {}, {}, {Granularity::kControlFlow, Granularity::kMethod, Granularity::kProgram},
      baselines);
  ASSERT_EQ(rep.approaches.size(), 6u);
  EXPECT_EQ(rep.approaches[0].approach, "white-box/cf");
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(rep.approaches[i].mape, 0.0, 1e-9);
  EXPECT_EQ(rep.approaches[1].configs, 4u);
  EXPECT_EQ(rep.approaches[2].configs, 6u);
  EXPECT_EQ(rep.approaches[3].configs, 5u);
  EXPECT_GT(rep.approaches[3].mape, 10.0);
  EXPECT_EQ(rep.approaches[5].configs, 16u);
  EXPECT_NEAR(rep.approaches[5].mape, 0.0, 1e-6);

  const auto text = to_text(rep);
  EXPECT_NE(text.find("white-box/method"), std::string::npos);
  EXPECT_NE(text.find("feature-wise+ols1"), std::string::npos);
  const auto j = to_json(rep);
  EXPECT_EQ(j["compression"]["method"], 4);
  EXPECT_EQ(j.dump(), to_json(compare_report(p, {}, {}, {Granularity::kControlFlow,
                                                         Granularity::kMethod,
                                                         Granularity::kProgram},
                                             baselines))
                          .dump());
  const auto csv = predictions_csv(rep, rep.approaches[1]);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "config,actual,predicted,ape");
  EXPECT_NE(csv.find("\n1010,63,63,0\n"), std::string::npos);
}

}  // namespace
}  // namespace pim::eval
