// src/nn/nn-loss.h

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

#ifndef SED_NN_NN_LOSS_H_
#define SED_NN_NN_LOSS_H_

#include "nn/tensor.h"

namespace sed {
namespace nn {

/// Probabilities are clamped to [kProbFloor, 1 - kProbFloor] inside Bce.
constexpr double kProbFloor = 1e-7;

/// Mean binary cross-entropy over all elements.  If grad is non-null it
/// receives dLoss/dp (zero where p was clamped).
double Bce(const Tensor &p, const Tensor &y, Tensor *grad = nullptr);

/// Mean squared difference.  If grad is non-null it receives dLoss/da.
double Mse(const Tensor &a, const Tensor &b, Tensor *grad = nullptr);

}  // namespace nn
}  // namespace sed

#endif  // SED_NN_NN_LOSS_H_
