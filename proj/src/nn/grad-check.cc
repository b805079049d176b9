// src/nn/grad-check.cc

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

#include "nn/grad-check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace sed {
namespace nn {

double RelativeError(double analytic, double numeric) {
  const double denom =
      std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / denom;
}

namespace {

std::vector<size_t> PickIndices(size_t n, size_t max_count,
                                std::mt19937_64 *rng) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (max_count == 0 || max_count >= n) return idx;
  std::shuffle(idx.begin(), idx.end(), *rng);
  idx.resize(max_count);
  return idx;
}

}  // namespace

double GradCheck(Nnet *net, const Tensor &x, const LossFn &loss,
                 const GradCheckOptions &opts) {
  if (!(opts.h >= 1e-6 && opts.h <= 1e-3))
    Fail("grad_check: perturbation must be in [1e-6, 1e-3]");
  auto eval = [&](const Tensor &input) {
    Tensor out, unused;
    net->Propagate(input, &out, opts.training, opts.seed);
    return loss(out, &unused);
  };

  Tensor out, dout, dx;
  net->ZeroGrad();
  net->Propagate(x, &out, opts.training, opts.seed);
  loss(out, &dout);
  net->Backpropagate(dout, &dx);

  std::mt19937_64 rng(opts.seed + 1);
  double worst = 0.0;
  for (ParamRef &p : net->Params()) {
    const std::vector<double> analytic = *p.grad;
    for (size_t i : PickIndices(p.value->size(), opts.max_per_array, &rng)) {
      const double saved = (*p.value)[i];
      (*p.value)[i] = saved + opts.h;
      const double plus = eval(x);
      (*p.value)[i] = saved - opts.h;
      const double minus = eval(x);
      (*p.value)[i] = saved;
      const double numeric = (plus - minus) / (2.0 * opts.h);
      worst = std::max(worst, RelativeError(analytic[i], numeric));
    }
  }
  if (opts.check_input) {
    Tensor xp = x;
    for (size_t i : PickIndices(x.Size(), opts.max_per_array, &rng)) {
      xp[i] = x[i] + opts.h;
      const double plus = eval(xp);
      xp[i] = x[i] - opts.h;
      const double minus = eval(xp);
      xp[i] = x[i];
      worst = std::max(worst,
                       RelativeError(dx[i], (plus - minus) / (2.0 * opts.h)));
    }
  }
  return worst;
}

}  // namespace nn
}  // namespace sed
