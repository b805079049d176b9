// src/train/losses.cc

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

#include "train/losses.h"

namespace sed {

double ConsistencyLoss(const std::vector<double> &sm,
                       const std::vector<double> &dm, const GateConfig &gate,
                       std::vector<double> *grad_sm) {
  if (sm.size() != dm.size())
    Fail("ConsistencyLoss: size mismatch ", sm.size(), " vs ", dm.size());
  size_t count = 0;
  double sum = 0.0;
  for (size_t i = 0; i < sm.size(); i++)
    if (gate.Passes(dm[i])) {
      const double d = sm[i] - dm[i];
      sum += d * d;
      count++;
    }
  if (grad_sm) {
    grad_sm->assign(sm.size(), 0.0);
    if (count > 0)
      for (size_t i = 0; i < sm.size(); i++)
        if (gate.Passes(dm[i])) (*grad_sm)[i] = 2.0 * (sm[i] - dm[i]) / count;
  }
  return count > 0 ? sum / count : 0.0;
}

double UnlabeledLoss(const std::vector<double> &sm,
                     const std::vector<double> &dm, const GateConfig &gate,
                     double w, std::vector<double> *grad_sm) {
  const double l = ConsistencyLoss(sm, dm, gate, grad_sm);
  if (grad_sm)
    for (double &g : *grad_sm) g *= w;
  return w * l;
}

}  // namespace sed
