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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pim/error.hpp"
#include "pim/model/model.hpp"
#include "pim/options.hpp"

namespace pim::eval {

struct OlsFit {
  model::PerfModel model;
  std::size_t features = 0;
  std::size_t rank = 0;
  bool rank_deficient() const { return rank < features; }
};

// Ordinary least squares over option indicators (degree 1), plus all
// pairwise products (degree 2). Rank-deficient designs get the minimum-norm
// solution.
inline OlsFit learn_ols(const std::vector<std::pair<Config, double>>& samples, int degree,
                        std::size_t options) {
  if (degree != 1 && degree != 2) throw Error("ols degree must be 1 or 2");
  if (samples.empty()) throw Error("ols needs at least one sample");
  std::vector<OptionSet> features{OptionSet{}};
  for (std::size_t i = 0; i < options; ++i) features.push_back(OptionSet::single(i));
  if (degree == 2) {
    for (std::size_t i = 0; i < options; ++i) {
      for (std::size_t j = i + 1; j < options; ++j) {
        features.push_back(OptionSet::single(i).with(j));
      }
    }
  }
  Eigen::MatrixXd x(samples.size(), features.size());
  Eigen::VectorXd y(samples.size());
  for (std::size_t r = 0; r < samples.size(); ++r) {
    for (std::size_t f = 0; f < features.size(); ++f) {
      x(r, f) = samples[r].first.includes(features[f]) ? 1.0 : 0.0;
    }
    y(r) = samples[r].second;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(x);
  const Eigen::VectorXd beta = cod.solve(y);
  OlsFit fit;
  fit.model.set_scope("ols" + std::to_string(degree));
  for (std::size_t f = 0; f < features.size(); ++f) fit.model.add(features[f], beta(f));
  fit.features = features.size();
  fit.rank = static_cast<std::size_t>(cod.rank());
  return fit;
}

}  // namespace pim::eval
