// src/nn/nn-loss.cc

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

#include "nn/nn-loss.h"

#include <algorithm>
#include <cmath>

namespace sed {
namespace nn {

double Bce(const Tensor &p, const Tensor &y, Tensor *grad) {
  if (!p.SameShape(y))
    Fail("bce: shape mismatch ", ShapeString(p.GetShape()), " vs ",
         ShapeString(y.GetShape()));
  if (p.Size() == 0) Fail("bce: empty input");
  const double n = static_cast<double>(p.Size());
  if (grad) grad->Resize(p.GetShape());
  double sum = 0.0;
  for (size_t i = 0; i < p.Size(); i++) {
    const double pc = std::clamp(p[i], kProbFloor, 1.0 - kProbFloor);
    sum -= y[i] * std::log(pc) + (1.0 - y[i]) * std::log(1.0 - pc);
    if (grad && pc == p[i]) (*grad)[i] = (pc - y[i]) / (pc * (1.0 - pc)) / n;
  }
  return sum / n;
}

double Mse(const Tensor &a, const Tensor &b, Tensor *grad) {
  if (!a.SameShape(b))
    Fail("mse: shape mismatch ", ShapeString(a.GetShape()), " vs ",
         ShapeString(b.GetShape()));
  if (a.Size() == 0) Fail("mse: empty input");
  const double n = static_cast<double>(a.Size());
  if (grad) grad->Resize(a.GetShape());
  double sum = 0.0;
  for (size_t i = 0; i < a.Size(); i++) {
    const double d = a[i] - b[i];
    sum += d * d;
    if (grad) (*grad)[i] = 2.0 * d / n;
  }
  return sum / n;
}

}  // namespace nn
}  // namespace sed
