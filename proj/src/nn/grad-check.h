// src/nn/grad-check.h

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

#ifndef SED_NN_GRAD_CHECK_H_
#define SED_NN_GRAD_CHECK_H_

#include <functional>

#include "nn/nnet.h"

namespace sed {
namespace nn {

/// Scalar loss of a network output; writes dLoss/dOutput into grad.
typedef std::function<double(const Tensor &out, Tensor *grad)> LossFn;

struct GradCheckOptions {
  double h = 1e-5;
  bool training = false;     // forward mode used for every evaluation
  uint64_t seed = 0;         // dropout seed, held fixed across evaluations
  bool check_input = true;   // also compare dLoss/dInput
  size_t max_per_array = 0;  // 0 checks every entry; else a seeded sample
};

/// Central finite differences against Backpropagate.  Returns the largest
/// |g_an - g_fd| / max(|g_an|, |g_fd|, 1e-8) over the checked entries.
double GradCheck(Nnet *net, const Tensor &x, const LossFn &loss,
                 const GradCheckOptions &opts = GradCheckOptions());

/// Same relative error measure for an arbitrary scalar function of a
/// parameter vector, given its analytic gradient.
double RelativeError(double analytic, double numeric);

}  // namespace nn
}  // namespace sed

#endif  // SED_NN_GRAD_CHECK_H_
