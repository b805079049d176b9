// src/nn/adam.h

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

#ifndef SED_NN_ADAM_H_
#define SED_NN_ADAM_H_

#include <vector>

#include "nn/nn-component.h"

namespace sed {
namespace nn {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam with bias correction.  Moment buffers are created on the first
/// Step and must thereafter see the same parameter list.
class Adam {
 public:
  explicit Adam(const AdamOptions &opts = AdamOptions()) : opts_(opts) {}

  void Step(const std::vector<ParamRef> &params, double lr);

  int64 StepCount() const { return step_; }
  const std::vector<std::vector<double>> &FirstMoments() const { return m_; }
  const std::vector<std::vector<double>> &SecondMoments() const { return v_; }

 private:
  AdamOptions opts_;
  int64 step_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

}  // namespace nn
}  // namespace sed

#endif  // SED_NN_ADAM_H_
