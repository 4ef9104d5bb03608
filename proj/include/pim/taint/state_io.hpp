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

#include <string>

#include <nlohmann/json.hpp>

#include "pim/taint/analysis.hpp"

namespace pim::taint {

inline nlohmann::ordered_json to_json(const AnalysisState& s) {
  nlohmann::ordered_json j;
  j["granularity"] = to_string(s.granularity);
  j["options"] = s.universe.names();
  auto& regions = j["regions"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.regions.size(); ++i) {
    nlohmann::ordered_json r;
    r["region"] = s.regions[i].key;
    r["partition"] = s.partitions[i].to_strings(s.universe);
    regions.push_back(std::move(r));
  }
  auto& executed = j["executed"] = nlohmann::ordered_json::array();
  for (Config c : s.executed) executed.push_back(s.universe.bitstring(c));
  j["iterations"] = s.iterations;
  return j;
}

inline AnalysisState state_from_json(const nlohmann::ordered_json& j) {
  try {
    AnalysisState s;
    s.granularity = parse_granularity(j.at("granularity").get<std::string>());
    s.universe = Universe(j.at("options").get<std::vector<std::string>>());
    for (const auto& r : j.at("regions")) {
      s.regions.push_back({s.granularity, r.at("region").get<std::string>()});
      std::vector<Subspace> subs;
      for (const auto& text : r.at("partition")) {
        subs.push_back(Subspace::parse(text.get<std::string>(), s.universe));
      }
      s.partitions.emplace_back(std::move(subs));
    }
    for (const auto& c : j.at("executed")) {
      s.executed.push_back(s.universe.parse_bitstring(c.get<std::string>()));
    }
    s.iterations = j.at("iterations").get<std::size_t>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed analysis state: ") + e.what());
  }
}

}  // namespace pim::taint
