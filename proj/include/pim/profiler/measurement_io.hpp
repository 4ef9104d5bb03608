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

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pim/profiler/profiler.hpp"

namespace pim::profiler {

// One row per (configuration, region): config,region,self_time,repeats.
inline std::string to_csv(const std::vector<RegionMeasurement>& ms, const Universe& u,
                          std::size_t repeats) {
  std::ostringstream out;
  out.precision(17);
  out << "config,region,self_time,repeats\n";
  for (const auto& m : ms) {
    for (const auto& [region, t] : m.self_time) {
      out << u.bitstring(m.config) << ',' << region.key << ',' << t << ',' << repeats << '\n';
    }
  }
  return out.str();
}

inline nlohmann::ordered_json to_json(const std::vector<RegionMeasurement>& ms,
                                      const Universe& u, Granularity g, std::size_t repeats) {
  nlohmann::ordered_json j;
  j["granularity"] = to_string(g);
  j["options"] = u.names();
  j["repeats"] = repeats;
  auto& arr = j["measurements"] = nlohmann::ordered_json::array();
  for (const auto& m : ms) {
    nlohmann::ordered_json e;
    e["config"] = u.bitstring(m.config);
    e["selected"] = u.join(m.config);
    e["total"] = m.total;
    auto& st = e["self_time"] = nlohmann::ordered_json::object();
    for (const auto& [region, t] : m.self_time) st[region.key] = t;
    arr.push_back(std::move(e));
  }
  return j;
}

inline std::vector<RegionMeasurement> measurements_from_json(const nlohmann::ordered_json& j,
                                                             const Universe& u) {
  try {
    const Granularity g = parse_granularity(j.at("granularity").get<std::string>());
    if (j.at("options").get<std::vector<std::string>>() != u.names()) {
      throw Error("measurements were taken over a different option universe");
    }
    std::vector<RegionMeasurement> out;
    for (const auto& e : j.at("measurements")) {
      RegionMeasurement m;
      m.config = u.parse_bitstring(e.at("config").get<std::string>());
      for (const auto& [key, t] : e.at("self_time").items()) {
        m.self_time[{g, key}] = t.get<double>();
        m.total += t.get<double>();
      }
      out.push_back(std::move(m));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed measurements: ") + e.what());
  }
}

}  // namespace pim::profiler
