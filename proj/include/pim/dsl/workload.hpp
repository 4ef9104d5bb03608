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

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "pim/dsl/ast.hpp"
#include "pim/error.hpp"

namespace pim::dsl {

// Values for the getparam knobs of a program.
using WorkloadParams = std::map<std::string, std::int64_t>;

inline WorkloadParams parse_workload(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProgramError(std::string("workload: ") + e.what());
  }
  if (!j.is_object()) throw ProgramError("workload: expected a JSON object");
  WorkloadParams w;
  for (const auto& [name, value] : j.items()) {
    if (!value.is_number_integer()) {
      throw ProgramError("workload: parameter '" + name + "' is not an integer");
    }
    const auto v = value.get<std::int64_t>();
    if (v < 0) throw ProgramError("workload: parameter '" + name + "' is negative");
    w[name] = v;
  }
  return w;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline WorkloadParams load_workload(const std::string& path) {
  return parse_workload(read_file(path));
}

// Every getparam of the program needs a non-negative value.
inline void check_workload(const Program& p, const WorkloadParams& w) {
  for (const auto& name : p.params()) {
    auto it = w.find(name);
    if (it == w.end()) {
      throw ProgramError("workload has no value for parameter '" + name + "'");
    }
    if (it->second < 0) {
      throw ProgramError("workload parameter '" + name + "' is negative");
    }
  }
}

}  // namespace pim::dsl
