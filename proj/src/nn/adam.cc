// src/nn/adam.cc

// Copyright 2026  The nmf-sed Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "nn/adam.h"

#include <cmath>

namespace sed {
namespace nn {

void Adam::Step(const std::vector<ParamRef> &params, double lr) {
  if (m_.empty()) {
    for (const ParamRef &p : params) {
      m_.emplace_back(p.value->size(), 0.0);
      v_.emplace_back(p.value->size(), 0.0);
    }
  }
  if (m_.size() != params.size()) Fail("adam: parameter list changed");
  step_++;
  const double c1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(step_));
  for (size_t j = 0; j < params.size(); j++) {
    std::vector<double> &x = *params[j].value;
    const std::vector<double> &g = *params[j].grad;
    std::vector<double> &m = m_[j], &v = v_[j];
    if (m.size() != x.size() || g.size() != x.size())
      Fail("adam: parameter ", j, " changed size");
    for (size_t i = 0; i < x.size(); i++) {
      m[i] = opts_.beta1 * m[i] + (1.0 - opts_.beta1) * g[i];
      v[i] = opts_.beta2 * v[i] + (1.0 - opts_.beta2) * g[i] * g[i];
      x[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + opts_.epsilon);
    }
  }
}

}  // namespace nn
}  // namespace sed
