// src/nmf/nmf.h

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

#ifndef SED_NMF_NMF_H_
#define SED_NMF_NMF_H_

#include <cstdint>
#include <string>
#include <vector>

#include "base/sed-common.h"

namespace sed {

enum class NmfCost { kKullbackLeibler, kEuclidean };

NmfCost ParseNmfCost(const std::string &name);
std::string NmfCostName(NmfCost cost);

/// V ~= W H with V mel x time.
struct NmfFactors {
  Matrix w;  // mel x r
  Matrix h;  // r x time
  int32 r = 0;
  /// Cost before the first iteration, then after every iteration.
  std::vector<double> divergence_trace;
};

/// Lee-Seung multiplicative updates (H then W per iteration).  W and H are
/// initialized from uniform(0,1] draws of a generator seeded with `seed`
/// (W row-major first, then H row-major).  Throws on negative or
/// non-finite input and on an all-zero V ("empty spectrogram").
NmfFactors Factorize(const Matrix &v, int32 r, int32 iters, uint64_t seed,
                     NmfCost cost = NmfCost::kKullbackLeibler);

/// Same, taking V in time x mel layout (a MelSpec as stored).
NmfFactors FactorizeFrames(const Matrix &frames, int32 r, int32 iters,
                           uint64_t seed,
                           NmfCost cost = NmfCost::kKullbackLeibler);

/// Fits H with W fixed to the given basis columns (each a mel-dimension
/// spectrum); W is never modified.  Returns H as (num templates) x time.
Matrix FitActivations(const Matrix &frames,
                      const std::vector<std::vector<double>> &basis,
                      int32 iters, uint64_t seed,
                      NmfCost cost = NmfCost::kKullbackLeibler);

/// Per-frame maximum over the rows of H, scaled so the clip maximum is 1
/// (all zeros stays all zeros).
std::vector<double> NormalizedActivation(const Matrix &h);

/// Generalized KL divergence D(V || WH) for V mel x time.
double KlDivergence(const Matrix &v, const Matrix &w, const Matrix &h);

}  // namespace sed

#endif  // SED_NMF_NMF_H_
