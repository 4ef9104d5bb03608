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

#include "pim/options.hpp"
#include "pim/random.hpp"
#include "pim/subspace/subspace.hpp"

namespace pim {

// Semantically distinct members of `subspaces`, sorted by structural key.
inline std::vector<Subspace> distinct_subspaces(std::vector<Subspace> subspaces) {
  std::sort(subspaces.begin(), subspaces.end(),
            [](const Subspace& a, const Subspace& b) { return a.key() < b.key(); });
  std::vector<Subspace> out;
  for (auto& s : subspaces) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Subspace& t) {
      return t.equivalent(s);
    });
    if (!seen) out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<Subspace> all_subspaces(const std::vector<Partition>& partitions) {
  std::vector<Subspace> all;
  for (const auto& p : partitions) {
    all.insert(all.end(), p.begin(), p.end());
  }
  return distinct_subspaces(std::move(all));
}

namespace detail {

// One first-fit pass: each group starts at the first unused subspace and
// absorbs every later subspace it still overlaps.
inline std::vector<Formula> merge_overlapping(const std::vector<Subspace>& order) {
  std::vector<bool> used(order.size(), false);
  std::vector<Formula> groups;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    Formula group = order[i].formula();
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (used[j]) continue;
      Formula merged = group & order[j].formula();
      if (!merged.satisfiable()) continue;
      group = merged.simplified();
      used[j] = true;
    }
    groups.push_back(group);
  }
  return groups;
}

}  // namespace detail

// Greedy covering set: repeatedly intersect overlapping subspaces, then pick
// one configuration per resulting group. Every input subspace contains at
// least one returned configuration. Several seeded orders are tried and the
// smallest result is kept.
inline std::vector<Config> greedy_min_cover(std::vector<Subspace> subspaces,
                                            std::uint64_t seed,
                                            std::size_t trials = 8) {
  const auto distinct = distinct_subspaces(std::move(subspaces));
  if (distinct.empty()) return {};
  std::vector<Formula> best;
  for (std::size_t t = 0; t < std::max<std::size_t>(trials, 1); ++t) {
    auto order = distinct;
    if (t > 0) {
      Rng rng(mix_seed(seed, t));
      std::shuffle(order.begin(), order.end(), rng);
    }
    auto groups = detail::merge_overlapping(order);
    if (best.empty() || groups.size() < best.size()) best = std::move(groups);
  }
  std::vector<Config> configs;
  for (std::size_t i = 0; i < best.size(); ++i) {
    configs.push_back(Subspace(best[i]).pick_config(mix_seed(seed, 1000 + i)));
  }
  std::sort(configs.begin(), configs.end());
  configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
  return configs;
}

// Greedy choice of the next configuration for the iterative analysis: the
// configuration covering the most not-yet-explored (region, subspace)
// entries, found by intersecting an unexplored subspace with other
// compatible ones. Ties go to the earliest start in seeded order. Returns
// nullopt when every subspace already contains an executed configuration.
inline std::optional<Config> select_next_config(
    const std::vector<Config>& executed,
    const std::vector<Partition>& partitions, std::uint64_t seed,
    std::size_t max_starts = 16) {
  std::vector<const Subspace*> unseen;
  for (const auto& p : partitions) {
    for (const auto& s : p) {
      const bool explored = std::any_of(executed.begin(), executed.end(),
                                        [&](Config c) { return s.contains(c); });
      if (!explored) unseen.push_back(&s);
    }
  }
  if (unseen.empty()) return std::nullopt;

  std::vector<Subspace> pool;
  for (const auto* s : unseen) pool.push_back(*s);
  auto candidates = distinct_subspaces(std::move(pool));
  Rng rng(seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);

  std::optional<Config> best;
  std::size_t best_score = 0;
  const std::size_t starts = std::min(max_starts, candidates.size());
  for (std::size_t start = 0; start < starts; ++start) {
    Formula group = candidates[start].formula();
    for (std::size_t k = 1; k < candidates.size(); ++k) {
      const auto& other = candidates[(start + k) % candidates.size()];
      Formula merged = group & other.formula();
      if (merged.satisfiable()) group = merged.simplified();
    }
    const Config c = Subspace(group).pick_config(mix_seed(seed, start));
    const auto score = static_cast<std::size_t>(std::count_if(
        unseen.begin(), unseen.end(), [&](const Subspace* s) { return s->contains(c); }));
    if (!best || score > best_score) {
      best = c;
      best_score = score;
    }
  }
  return best;
}

}  // namespace pim
