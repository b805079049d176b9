// src/nmf/nmf.cc

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

#include "nmf/nmf.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "kernels/kernels.h"

namespace sed {

NmfCost ParseNmfCost(const std::string &name) {
  if (name == "kl") return NmfCost::kKullbackLeibler;
  if (name == "euclidean") return NmfCost::kEuclidean;
  Fail("unknown NMF cost '", name, "' (expected kl or euclidean)");
}

std::string NmfCostName(NmfCost cost) {
  return cost == NmfCost::kKullbackLeibler ? "kl" : "euclidean";
}

namespace {

void CheckSpectrogram(const Matrix &frames) {
  bool any_positive = false;
  for (double x : frames.Values()) {
    if (!std::isfinite(x) || x < 0.0)
      Fail("NMF input must be finite and nonnegative");
    any_positive |= x > 0.0;
  }
  if (!any_positive) Fail("empty spectrogram");
}

// uniform on (0, 1]
double DrawPositive(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return 1.0 - u(rng);
}

double Cost(NmfCost cost, const Matrix &vt, const std::vector<double> &w,
            const std::vector<double> &ht, int32 r) {
  const int32 t = vt.NumRows(), f = vt.NumCols();
  return cost == NmfCost::kKullbackLeibler
             ? kernels::NmfKlDivergence(vt.Data(), w.data(), ht.data(), t, f, r)
             : kernels::NmfEucDistance(vt.Data(), w.data(), ht.data(), t, f, r);
}

}  // namespace

NmfFactors FactorizeFrames(const Matrix &frames, int32 r, int32 iters,
                           uint64_t seed, NmfCost cost) {
  if (r < 1) Fail("NMF rank must be >= 1");
  if (iters < 1) Fail("NMF iterations must be >= 1");
  CheckSpectrogram(frames);
  const int32 t = frames.NumRows(), f = frames.NumCols();

  std::mt19937_64 rng(seed);
  std::vector<double> w(static_cast<size_t>(f) * r);
  for (double &x : w) x = DrawPositive(rng);
  // H is drawn r x time but kept time-major for the kernels.
  std::vector<double> ht(static_cast<size_t>(t) * r);
  for (int32 q = 0; q < r; q++)
    for (int32 i = 0; i < t; i++) ht[static_cast<size_t>(i) * r + q] = DrawPositive(rng);

  NmfFactors out;
  out.r = r;
  out.divergence_trace.reserve(iters + 1);
  out.divergence_trace.push_back(Cost(cost, frames, w, ht, r));
  std::vector<double> scratch(static_cast<size_t>(t) * f);
  for (int32 it = 0; it < iters; it++) {
    if (cost == NmfCost::kKullbackLeibler) {
      kernels::NmfKlUpdateH(frames.Data(), w.data(), ht.data(), t, f, r);
      kernels::NmfKlUpdateW(frames.Data(), w.data(), ht.data(), t, f, r,
                            scratch.data());
    } else {
      kernels::NmfEucUpdateH(frames.Data(), w.data(), ht.data(), t, f, r);
      kernels::NmfEucUpdateW(frames.Data(), w.data(), ht.data(), t, f, r);
    }
    out.divergence_trace.push_back(Cost(cost, frames, w, ht, r));
  }

  out.w = Matrix(f, r);
  std::copy(w.begin(), w.end(), out.w.Data());
  out.h = Matrix(r, t);
  for (int32 i = 0; i < t; i++)
    for (int32 q = 0; q < r; q++) out.h(q, i) = ht[static_cast<size_t>(i) * r + q];
  return out;
}

NmfFactors Factorize(const Matrix &v, int32 r, int32 iters, uint64_t seed,
                     NmfCost cost) {
  return FactorizeFrames(v.Transpose(), r, iters, seed, cost);
}

Matrix FitActivations(const Matrix &frames,
                      const std::vector<std::vector<double>> &basis,
                      int32 iters, uint64_t seed, NmfCost cost) {
  if (basis.empty()) Fail("FitActivations: no basis vectors");
  if (iters < 1) Fail("NMF iterations must be >= 1");
  CheckSpectrogram(frames);
  const int32 t = frames.NumRows(), f = frames.NumCols();
  const int32 r = static_cast<int32>(basis.size());
  std::vector<double> w(static_cast<size_t>(f) * r);
  for (int32 q = 0; q < r; q++) {
    if (static_cast<int32>(basis[q].size()) != f)
      Fail("FitActivations: template has ", basis[q].size(),
           " bins, spectrogram has ", f);
    for (int32 b = 0; b < f; b++) w[static_cast<size_t>(b) * r + q] = basis[q][b];
  }
  std::mt19937_64 rng(seed);
  std::vector<double> ht(static_cast<size_t>(t) * r);
  for (int32 q = 0; q < r; q++)
    for (int32 i = 0; i < t; i++) ht[static_cast<size_t>(i) * r + q] = DrawPositive(rng);
  for (int32 it = 0; it < iters; it++) {
    if (cost == NmfCost::kKullbackLeibler)
      kernels::NmfKlUpdateH(frames.Data(), w.data(), ht.data(), t, f, r);
    else
      kernels::NmfEucUpdateH(frames.Data(), w.data(), ht.data(), t, f, r);
  }
  Matrix h(r, t);
  for (int32 i = 0; i < t; i++)
    for (int32 q = 0; q < r; q++) h(q, i) = ht[static_cast<size_t>(i) * r + q];
  return h;
}

std::vector<double> NormalizedActivation(const Matrix &h) {
  std::vector<double> act(h.NumCols(), 0.0);
  for (int32 i = 0; i < h.NumCols(); i++) {
    double m = 0.0;
    for (int32 q = 0; q < h.NumRows(); q++) m = std::max(m, h(q, i));
    act[i] = m;
  }
  const double peak = act.empty() ? 0.0 : *std::max_element(act.begin(), act.end());
  if (peak > 0.0)
    for (double &a : act) a /= peak;
  return act;
}

double KlDivergence(const Matrix &v, const Matrix &w, const Matrix &h) {
  SED_ASSERT(v.NumRows() == w.NumRows() && w.NumCols() == h.NumRows() &&
             h.NumCols() == v.NumCols());
  Matrix vt = v.Transpose(), ht = h.Transpose();
  return kernels::NmfKlDivergence(vt.Data(), w.Data(), ht.Data(), vt.NumRows(),
                                  vt.NumCols(), w.NumCols());
}

}  // namespace sed
