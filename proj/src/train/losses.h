// src/train/losses.h

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

#ifndef SED_TRAIN_LOSSES_H_
#define SED_TRAIN_LOSSES_H_

#include <vector>

#include "base/sed-common.h"

namespace sed {

/// Which clip-level teacher outputs count as confident.
struct GateConfig {
  double lambda = 0.9;
  /// Also gate in classes with dm < 1 - lambda (confident absence).
  bool confident_absence = false;

  bool Passes(double dm) const {
    return dm > lambda || (confident_absence && dm < 1.0 - lambda);
  }
};

/// Masked squared error between student and teacher clip probabilities.
/// sm and dm hold N clips x K classes, flattened.  Entries whose teacher
/// value passes the gate contribute (sm - dm)^2; the result is the mean over
/// contributing entries, or 0 if none does.  dm is a constant: only
/// grad_sm (same size as sm, overwritten) receives a gradient.
double ConsistencyLoss(const std::vector<double> &sm,
                       const std::vector<double> &dm, const GateConfig &gate,
                       std::vector<double> *grad_sm = nullptr);

/// w * ConsistencyLoss(...), gradient scaled likewise.
double UnlabeledLoss(const std::vector<double> &sm,
                     const std::vector<double> &dm, const GateConfig &gate,
                     double w, std::vector<double> *grad_sm = nullptr);

}  // namespace sed

#endif  // SED_TRAIN_LOSSES_H_
