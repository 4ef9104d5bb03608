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
#include <string>
#include <vector>

#include "pim/dsl/parser.hpp"
#include "pim/dsl/workload.hpp"
#include "pim/options.hpp"
#include "pim/subspace/subspace.hpp"

#ifndef PIM_PROGRAMS_DIR
#error "PIM_PROGRAMS_DIR must point at the sample programs"
#endif

namespace pim::testing {

inline std::string program_path(const std::string& name) {
  return std::string(PIM_PROGRAMS_DIR) + "/" + name;
}

inline dsl::Program load_program(const std::string& name) {
  return dsl::parse_program(dsl::read_file(program_path(name)));
}

// Options of the running example, in universe order.
enum Fig2Option : std::size_t { kA = 0, kB = 1, kC = 2, kD = 3 };

inline Config fig2_config(bool a, bool b, bool c, bool d = false) {
  Config x;
  if (a) x = x.with(kA);
  if (b) x = x.with(kB);
  if (c) x = x.with(kC);
  if (d) x = x.with(kD);
  return x;
}

// Hand-simulated self-times of the running example, independent of the
// interpreter: main runs 1s plus 1s (A) or 2s (not A); foo runs only under A,
// 4s with B and 1s without; bar runs 20 times under A and 5 times otherwise,
// 3s with C and 1s without.
struct Fig2Times {
  double main = 0, foo = 0, bar = 0;
  double total() const { return main + foo + bar; }
};

inline Fig2Times fig2_oracle(Config c) {
  const bool a = c.contains(kA), b = c.contains(kB), cc = c.contains(kC);
  Fig2Times t;
  t.main = 1.0 + (a ? 1.0 : 2.0);
  t.foo = a ? (b ? 4.0 : 1.0) : 0.0;
  t.bar = (a ? 20.0 : 5.0) * (cc ? 3.0 : 1.0);
  return t;
}

// Exhaustive enumeration over `options` options; the reference for
// satisfiability and equivalence.
inline bool brute_satisfiable(const Subspace& s, std::size_t options) {
  for (std::uint32_t b = 0; b < (std::uint32_t{1} << options); ++b) {
    if (s.contains(Config(b))) return true;
  }
  return false;
}

inline std::vector<Config> members(const Subspace& s, std::size_t options) {
  std::vector<Config> out;
  for (std::uint32_t b = 0; b < (std::uint32_t{1} << options); ++b) {
    if (s.contains(Config(b))) out.push_back(Config(b));
  }
  return out;
}

inline bool brute_equivalent(const Subspace& s, const Subspace& t, std::size_t options) {
  return members(s, options) == members(t, options);
}

// Exhaustive partition check: every configuration in exactly one subspace.
inline bool brute_valid_partition(const Partition& p, std::size_t options) {
  for (std::uint32_t b = 0; b < (std::uint32_t{1} << options); ++b) {
    int hits = 0;
    for (const auto& s : p) hits += s.contains(Config(b)) ? 1 : 0;
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace pim::testing
