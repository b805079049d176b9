// src/train/schedule.h

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

#ifndef SED_TRAIN_SCHEDULE_H_
#define SED_TRAIN_SCHEDULE_H_

#include "base/sed-common.h"

namespace sed {

/// Cosine-annealed learning rate within a warm-restart cycle:
/// lr_min + (lr_max - lr_min) * (1 + cos(pi * t_curr / t_i)) / 2.
double LrAt(int64 t_curr, int64 t_i, double lr_max, double lr_min);

/// Unlabeled-loss ramp exp(-5 (1 - t_curr / t_i)^2).
double RampWeight(int64 t_curr, int64 t_i);

/// Warm-restart bookkeeping.  Advance() moves one iteration forward and
/// restarts (t_curr = 0, t_i *= t_mult) when the cycle is complete.
struct RestartSchedule {
  int64 t_curr = 0;
  int64 t_i = 1;
  int64 t_mult = 2;
  int64 restarts = 0;

  RestartSchedule() = default;
  RestartSchedule(int64 t_i_initial, int64 t_mult);

  /// Returns true if this step completed a cycle.
  bool Advance();
};

}  // namespace sed

#endif  // SED_TRAIN_SCHEDULE_H_
