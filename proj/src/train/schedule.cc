// src/train/schedule.cc

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

#include "train/schedule.h"

#include <cmath>
#include <numbers>

namespace sed {

double LrAt(int64 t_curr, int64 t_i, double lr_max, double lr_min) {
  if (t_i <= 0 || t_curr < 0 || t_curr > t_i)
    Fail("LrAt: need 0 <= t_curr <= t_i, got t_curr=", t_curr, " t_i=", t_i);
  if (t_curr == 0) return lr_max;
  if (t_curr == t_i) return lr_min;
  const double frac = static_cast<double>(t_curr) / t_i;
  return lr_min +
         0.5 * (lr_max - lr_min) * (1.0 + std::cos(std::numbers::pi * frac));
}

double RampWeight(int64 t_curr, int64 t_i) {
  if (t_i <= 0 || t_curr < 0 || t_curr > t_i)
    Fail("RampWeight: need 0 <= t_curr <= t_i, got t_curr=", t_curr,
         " t_i=", t_i);
  const double d = 1.0 - static_cast<double>(t_curr) / t_i;
  return std::exp(-5.0 * d * d);
}

RestartSchedule::RestartSchedule(int64 t_i_initial, int64 mult)
    : t_i(t_i_initial), t_mult(mult) {
  if (t_i_initial < 1) Fail("schedule: initial cycle length must be >= 1");
  if (mult < 1) Fail("schedule: t_mult must be >= 1");
}

bool RestartSchedule::Advance() {
  if (++t_curr < t_i) return false;
  t_curr = 0;
  t_i *= t_mult;
  restarts++;
  return true;
}

}  // namespace sed
