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
#include <set>
#include <string>
#include <vector>

#include "pim/error.hpp"
#include "pim/options.hpp"
#include "pim/random.hpp"

namespace pim::eval {

struct BaselineSpec {
  enum class Sampler { kRandom, kFeatureWise, kPairWise, kBruteForce };
  Sampler sampler = Sampler::kFeatureWise;
  // Sample size for kRandom.
  std::size_t n = 0;
  // 1: options only; 2: options and all pairwise interactions.
  int degree = 1;

  std::string name() const {
    std::string s;
    switch (sampler) {
      case Sampler::kRandom:
        s = "random(" + std::to_string(n) + ")";
        break;
      case Sampler::kFeatureWise:
        s = "feature-wise";
        break;
      case Sampler::kPairWise:
        s = "pair-wise";
        break;
      case Sampler::kBruteForce:
        s = "brute-force";
        break;
    }
    return s + "+ols" + std::to_string(degree);
  }
};

inline std::vector<Config> feature_wise_sample(std::size_t options) {
  std::vector<Config> out{Config{}};
  for (std::size_t i = 0; i < options; ++i) out.push_back(Config::single(i));
  return out;
}

// Greedy covering array of strength 2: every value combination of every
// option pair appears in some row. Each row is seeded with an uncovered pair
// and completed option by option, maximizing newly covered pairs; the best
// of several seeded candidates is kept.
inline std::vector<Config> pair_wise_sample(std::size_t options, std::uint64_t seed,
                                            std::size_t candidates = 16) {
  if (options == 0) return {Config{}};
  if (options == 1) return {Config{}, Config::single(0)};
  // uncovered[(i * options + j) * 4 + vi * 2 + vj] for i < j.
  std::vector<bool> uncovered(options * options * 4, false);
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < options; ++i) {
    for (std::size_t j = i + 1; j < options; ++j) {
      for (int v = 0; v < 4; ++v) uncovered[(i * options + j) * 4 + v] = true;
      remaining += 4;
    }
  }
  auto pair_index = [&](std::size_t i, bool vi, std::size_t j, bool vj) {
    if (i > j) {
      std::swap(i, j);
      std::swap(vi, vj);
    }
    return (i * options + j) * 4 + (vi ? 2 : 0) + (vj ? 1 : 0);
  };
  auto gain = [&](Config row) {
    std::size_t g = 0;
    for (std::size_t i = 0; i < options; ++i) {
      for (std::size_t j = i + 1; j < options; ++j) {
        g += uncovered[pair_index(i, row.contains(i), j, row.contains(j))] ? 1 : 0;
      }
    }
    return g;
  };

  Rng rng(seed);
  std::vector<Config> rows;
  while (remaining > 0) {
    // Uncovered pairs to seed candidate rows from.
    std::vector<std::size_t> open;
    for (std::size_t k = 0; k < uncovered.size(); ++k) {
      if (uncovered[k]) open.push_back(k);
    }
    Config best;
    std::size_t best_gain = 0;
    for (std::size_t cand = 0; cand < candidates; ++cand) {
      const std::size_t k = open[rng() % open.size()];
      const std::size_t i = k / 4 / options;
      const std::size_t j = k / 4 % options;
      Config row;
      if (k & 2) row = row.with(i);
      if (k & 1) row = row.with(j);
      std::vector<std::size_t> order;
      for (std::size_t o = 0; o < options; ++o) {
        if (o != i && o != j) order.push_back(o);
      }
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<bool> fixed(options, false);
      fixed[i] = fixed[j] = true;
      for (std::size_t o : order) {
        std::size_t score[2] = {0, 0};
        for (int v = 0; v < 2; ++v) {
          for (std::size_t f = 0; f < options; ++f) {
            if (!fixed[f]) continue;
            score[v] += uncovered[pair_index(o, v == 1, f, row.contains(f))] ? 1 : 0;
          }
        }
        const bool on = score[1] > score[0] || (score[1] == score[0] && (rng() & 1U));
        if (on) row = row.with(o);
        fixed[o] = true;
      }
      const std::size_t g = gain(row);
      if (g > best_gain) {
        best = row;
        best_gain = g;
      }
    }
    for (std::size_t i = 0; i < options; ++i) {
      for (std::size_t j = i + 1; j < options; ++j) {
        const auto idx = pair_index(i, best.contains(i), j, best.contains(j));
        if (uncovered[idx]) {
          uncovered[idx] = false;
          --remaining;
        }
      }
    }
    rows.push_back(best);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

inline std::vector<Config> random_sample(std::size_t options, std::size_t n, std::uint64_t seed) {
  const std::uint64_t space = std::uint64_t{1} << options;
  if (n > space) {
    throw Error("random sample of " + std::to_string(n) + " exceeds the " +
                std::to_string(space) + " configurations");
  }
  Rng rng(seed);
  std::set<Config> picked;
  std::vector<Config> out;
  while (out.size() < n) {
    const Config c(static_cast<std::uint32_t>(rng() % space));
    if (picked.insert(c).second) out.push_back(c);
  }
  return out;
}

inline std::vector<Config> brute_force_sample(std::size_t options) {
  if (options > 20) throw UniverseTooLarge("brute-force sampling beyond 20 options");
  std::vector<Config> out;
  for (std::uint32_t b = 0; b < (std::uint32_t{1} << options); ++b) out.push_back(Config(b));
  return out;
}

inline std::vector<Config> sample(const BaselineSpec& spec, std::size_t options,
                                  std::uint64_t seed) {
  switch (spec.sampler) {
    case BaselineSpec::Sampler::kRandom:
      if (spec.n == 0) throw Error("random sampling needs n >= 1");
      return random_sample(options, spec.n, seed);
    case BaselineSpec::Sampler::kFeatureWise:
      return feature_wise_sample(options);
    case BaselineSpec::Sampler::kPairWise:
      return pair_wise_sample(options, seed);
    case BaselineSpec::Sampler::kBruteForce:
      return brute_force_sample(options);
  }
  return {};
}

}  // namespace pim::eval
