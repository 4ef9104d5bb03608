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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pim/dsl/regions.hpp"
#include "pim/error.hpp"
#include "pim/options.hpp"
#include "pim/profiler/profiler.hpp"
#include "pim/subspace/subspace.hpp"

namespace pim::model {

// Coefficients with smaller magnitude are treated as zero and not stored.
inline constexpr double kZeroCoefficient = 1e-9;
// Default minimum contribution of a reported term, in seconds.
inline constexpr double kDefaultTermThreshold = 0.3;
inline constexpr double kDefaultMinInfluence = 1e-4;
inline constexpr double kDefaultCovThreshold = 1.0;

// Sparse linear performance-influence model: a coefficient per option set,
// the empty set being the intercept. predict(c) sums the coefficients of all
// terms whose options are all selected in c.
class PerfModel {
 public:
  using Terms = std::map<OptionSet, double, TermOrder>;

  PerfModel() = default;
  explicit PerfModel(std::string scope) : scope_(std::move(scope)) {}

  const std::string& scope() const { return scope_; }
  void set_scope(std::string scope) { scope_ = std::move(scope); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add(OptionSet term, double coefficient) {
    const double c = (terms_.count(term) ? terms_[term] : 0.0) + coefficient;
    if (std::abs(c) < kZeroCoefficient) {
      terms_.erase(term);
    } else {
      terms_[term] = c;
    }
  }

  double coefficient(OptionSet term) const {
    auto it = terms_.find(term);
    return it == terms_.end() ? 0.0 : it->second;
  }
  double intercept() const { return coefficient(OptionSet{}); }

  double predict(Config c) const {
    double sum = 0.0;
    for (const auto& [term, coeff] : terms_) {
      if (c.includes(term)) sum += coeff;
    }
    return sum;
  }

  PerfModel scaled(double factor) const {
    PerfModel out(scope_);
    for (const auto& [term, coeff] : terms_) out.add(term, coeff * factor);
    return out;
  }

  // e.g. "8.00 + 15.00*A + 10.00*C + 3.00*A*B + 30.00*A*C".
  std::string to_string(const Universe& u, int precision = 2) const {
    if (terms_.empty()) return format(0.0, precision);
    std::string out;
    bool first = true;
    for (const auto& [term, coeff] : terms_) {
      const double mag = first ? coeff : std::abs(coeff);
      if (!first) out += coeff < 0 ? " - " : " + ";
      out += format(mag, precision);
      for (auto i : term.indices()) out += "*" + u.name(i);
      first = false;
    }
    return out;
  }

 private:
  static std::string format(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
  }

  std::string scope_ = "global";
  Terms terms_;
};

inline PerfModel operator+(const PerfModel& a, const PerfModel& b) {
  PerfModel out(a.scope());
  for (const auto& [t, c] : a.terms()) out.add(t, c);
  for (const auto& [t, c] : b.terms()) out.add(t, c);
  return out;
}

inline double predict(const PerfModel& m, Config c) { return m.predict(c); }

// Measured self-time of one region, grouped by the subspace of its
// partition that contains each measured configuration.
struct SubspaceTimes {
  struct Entry {
    Subspace subspace;
    double mean = 0.0;
    std::vector<double> support;
  };
  RegionId region;
  std::vector<Entry> entries;
};

inline SubspaceTimes assign_measurements(const Partition& partition,
                                         const std::vector<profiler::RegionMeasurement>& ms,
                                         const RegionId& region, const Universe& u) {
  SubspaceTimes st;
  st.region = region;
  for (const auto& s : partition) st.entries.push_back({s, 0.0, {}});
  for (const auto& m : ms) {
    auto t = m.self_time.find(region);
    if (t == m.self_time.end()) {
      throw Error("measurement of " + u.braced(m.config) + " has no time for region '" +
                  region.key + "'");
    }
    for (auto& e : st.entries) {
      if (e.subspace.contains(m.config)) {
        e.support.push_back(t->second);
        break;
      }
    }
  }
  for (auto& e : st.entries) {
    if (e.support.empty()) {
      throw CoverageError("region '" + region.key + "': no measured configuration in subspace " +
                          e.subspace.to_string(u));
    }
    double sum = 0.0;
    for (double v : e.support) sum += v;
    e.mean = sum / static_cast<double>(e.support.size());
  }
  return st;
}

// Exact linear model over the options the partition mentions: the region
// time of every assignment of those options is looked up in its subspace and
// the coefficients follow by Moebius inversion over the subset lattice.
inline PerfModel build_local_model(const SubspaceTimes& st) {
  OptionSet influencing;
  for (const auto& e : st.entries) influencing |= e.subspace.support();
  const auto vars = influencing.indices();
  if (vars.size() > kMaxOptions) throw UniverseTooLarge("region depends on too many options");

  const std::size_t n = std::size_t{1} << vars.size();
  auto scatter = [&](std::size_t local) {
    OptionSet a;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if ((local >> i) & 1U) a = a.with(vars[i]);
    }
    return a;
  };
  std::vector<double> f(n);
  for (std::size_t local = 0; local < n; ++local) {
    const Config c = scatter(local);
    const SubspaceTimes::Entry* hit = nullptr;
    for (const auto& e : st.entries) {
      if (e.subspace.contains(c)) {
        hit = &e;
        break;
      }
    }
    if (!hit) throw Error("region '" + st.region.key + "': partition does not cover every assignment");
    f[local] = hit->mean;
  }
  for (std::size_t bit = 1; bit < n; bit <<= 1) {
    for (std::size_t mask = 0; mask < n; ++mask) {
      if (mask & bit) f[mask] -= f[mask ^ bit];
    }
  }
  PerfModel m(st.region.key);
  for (std::size_t local = 0; local < n; ++local) m.add(scatter(local), f[local]);
  return m;
}

// Term-wise sum of local models.
inline PerfModel compose_global(const std::vector<PerfModel>& models) {
  PerfModel out("global");
  for (const auto& m : models) {
    for (const auto& [t, c] : m.terms()) out.add(t, c);
  }
  return out;
}

struct FilterResult {
  PerfModel model;
  std::size_t removed_terms = 0;
  // Sum of |coefficient| over removed terms.
  double removed_mass = 0.0;
};

// Drops non-intercept terms with |coefficient| below the threshold.
inline FilterResult filter_terms(const PerfModel& m, double threshold) {
  if (threshold < 0) throw Error("term threshold must be non-negative");
  FilterResult r{PerfModel(m.scope()), 0, 0.0};
  for (const auto& [t, c] : m.terms()) {
    if (t.empty() || std::abs(c) >= threshold) {
      r.model.add(t, c);
    } else {
      ++r.removed_terms;
      r.removed_mass += std::abs(c);
    }
  }
  return r;
}

struct Correction {
  PerfModel model;
  double alpha = 1.0;
};

// Least-squares scalar alpha with alpha * predicted ~ measured; the model is
// scaled by alpha. Each pair is (prediction of the profiled model,
// unprofiled measurement).
inline Correction linear_correction(const PerfModel& m,
                                    const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.empty()) throw Error("linear correction needs at least one pair");
  double num = 0.0;
  double den = 0.0;
  for (const auto& [pred, meas] : pairs) {
    num += pred * meas;
    den += pred * pred;
  }
  if (den == 0.0) throw Error("linear correction: all predictions are zero");
  const double alpha = num / den;
  return {m.scaled(alpha), alpha};
}

struct SuspectRegion {
  RegionId region;
  Subspace subspace;
  double cov = 0.0;
  double max_time = 0.0;
};

// Subspaces whose supporting times vary too much to come from a single path:
// some observed time above `min_influence` and a coefficient of variation
// (sample standard deviation over mean) above `cov_threshold`.
inline std::vector<SuspectRegion> detect_suspect_regions(const std::vector<SubspaceTimes>& all,
                                                         double min_influence = kDefaultMinInfluence,
                                                         double cov_threshold = kDefaultCovThreshold) {
  std::vector<SuspectRegion> out;
  for (const auto& st : all) {
    for (const auto& e : st.entries) {
      if (e.support.size() < 2) continue;
      double max_time = 0.0;
      double sum = 0.0;
      for (double v : e.support) {
        max_time = std::max(max_time, v);
        sum += v;
      }
      const double n = static_cast<double>(e.support.size());
      const double mean = sum / n;
      if (max_time <= min_influence || mean <= 0.0) continue;
      double ss = 0.0;
      for (double v : e.support) ss += (v - mean) * (v - mean);
      const double cov = std::sqrt(ss / (n - 1.0)) / mean;
      if (cov > cov_threshold) out.push_back({st.region, e.subspace, cov, max_time});
    }
  }
  return out;
}

}  // namespace pim::model
