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
#include <vector>

#include <nlohmann/json.hpp>

#include "pim/model/model.hpp"

namespace pim::model {

inline nlohmann::ordered_json to_json(const PerfModel& m, const Universe& u) {
  nlohmann::ordered_json j;
  j["scope"] = m.scope();
  j["text"] = m.to_string(u);
  auto& terms = j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [t, c] : m.terms()) {
    nlohmann::ordered_json e;
    std::vector<std::string> names;
    for (auto i : t.indices()) names.push_back(u.name(i));
    e["options"] = names;
    e["coefficient"] = c;
    terms.push_back(std::move(e));
  }
  return j;
}

inline PerfModel model_from_json(const nlohmann::ordered_json& j, const Universe& u) {
  try {
    PerfModel m(j.at("scope").get<std::string>());
    for (const auto& e : j.at("terms")) {
      OptionSet t;
      for (const auto& name : e.at("options")) t = t.with(u.index(name.get<std::string>()));
      m.add(t, e.at("coefficient").get<double>());
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model: ") + e.what());
  }
}

// Global model plus one local model per region.
struct ModelBundle {
  Universe universe;
  PerfModel global;
  std::vector<PerfModel> locals;
};

inline nlohmann::ordered_json to_json(const ModelBundle& b) {
  nlohmann::ordered_json j;
  j["options"] = b.universe.names();
  j["global"] = to_json(b.global, b.universe);
  auto& regions = j["regions"] = nlohmann::ordered_json::array();
  for (const auto& m : b.locals) regions.push_back(to_json(m, b.universe));
  return j;
}

inline ModelBundle bundle_from_json(const nlohmann::ordered_json& j) {
  try {
    ModelBundle b;
    b.universe = Universe(j.at("options").get<std::vector<std::string>>());
    b.global = model_from_json(j.at("global"), b.universe);
    for (const auto& r : j.at("regions")) b.locals.push_back(model_from_json(r, b.universe));
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model file: ") + e.what());
  }
}

// Which regions each term comes from, e.g. "A*C: bar (30.00)".
inline std::string influence_listing(const ModelBundle& b) {
  std::string out;
  for (const auto& [t, c] : b.global.terms()) {
    std::string name = t.empty() ? "(intercept)" : b.universe.join(t, "*");
    out += name + ":";
    for (const auto& m : b.locals) {
      const double lc = m.coefficient(t);
      if (lc == 0.0) continue;
      char buf[64];
      std::snprintf(buf, sizeof buf, " %s (%.2f)", m.scope().c_str(), lc);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace pim::model
