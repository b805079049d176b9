// src/kernels/kernels-reference.cc

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

#include <algorithm>
#include <cmath>
#include <vector>

#include "kernels/kernels.h"

namespace sed {
namespace kernels {
namespace reference {

void GemmNN(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate) {
  for (int i = 0; i < m; i++)
    for (int j = 0; j < n; j++) {
      double s = accumulate ? c[i * n + j] : 0.0;
      for (int p = 0; p < k; p++) s += a[i * k + p] * b[p * n + j];
      c[i * n + j] = s;
    }
}

void GemmNT(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate) {
  for (int i = 0; i < m; i++)
    for (int j = 0; j < n; j++) {
      double s = 0.0;
      for (int p = 0; p < k; p++) s += a[i * k + p] * b[j * k + p];
      c[i * n + j] = accumulate ? c[i * n + j] + s : s;
    }
}

void GemmTN(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate) {
  for (int i = 0; i < m; i++)
    for (int j = 0; j < n; j++) {
      double s = accumulate ? c[i * n + j] : 0.0;
      for (int p = 0; p < k; p++) s += a[p * m + i] * b[p * n + j];
      c[i * n + j] = s;
    }
}

void Im2Col(const double *img, int channels, int height, int width, int kh,
            int kw, double *cols) {
  const int ph = kh / 2, pw = kw / 2, hw = height * width;
  for (int c = 0; c < channels; c++)
    for (int dy = 0; dy < kh; dy++)
      for (int dx = 0; dx < kw; dx++) {
        double *row = cols + static_cast<long>((c * kh + dy) * kw + dx) * hw;
        for (int y = 0; y < height; y++)
          for (int x = 0; x < width; x++) {
            int sy = y + dy - ph, sx = x + dx - pw;
            bool inside = sy >= 0 && sy < height && sx >= 0 && sx < width;
            row[y * width + x] =
                inside ? img[(static_cast<long>(c) * height + sy) * width + sx]
                       : 0.0;
          }
      }
}

void Col2ImAdd(const double *cols, int channels, int height, int width,
               int kh, int kw, double *img) {
  const int ph = kh / 2, pw = kw / 2, hw = height * width;
  for (int c = 0; c < channels; c++)
    for (int dy = 0; dy < kh; dy++)
      for (int dx = 0; dx < kw; dx++) {
        const double *row =
            cols + static_cast<long>((c * kh + dy) * kw + dx) * hw;
        for (int y = 0; y < height; y++)
          for (int x = 0; x < width; x++) {
            int sy = y + dy - ph, sx = x + dx - pw;
            if (sy >= 0 && sy < height && sx >= 0 && sx < width)
              img[(static_cast<long>(c) * height + sy) * width + sx] +=
                  row[y * width + x];
          }
      }
}

namespace {

double Reconstruct(const double *w, const double *h_row, int f_index, int r) {
  double s = 0.0;
  for (int q = 0; q < r; q++) s += w[f_index * r + q] * h_row[q];
  return s;
}

}  // namespace

void NmfKlUpdateH(const double *v, const double *w, double *h, int t, int f,
                  int r) {
  std::vector<double> ratio(f), colsum(r, 0.0);
  for (int q = 0; q < r; q++)
    for (int b = 0; b < f; b++) colsum[q] += w[b * r + q];
  for (int i = 0; i < t; i++) {
    double *h_row = h + static_cast<long>(i) * r;
    for (int b = 0; b < f; b++)
      ratio[b] = v[static_cast<long>(i) * f + b] /
                 std::max(Reconstruct(w, h_row, b, r), kNmfEpsilon);
    for (int q = 0; q < r; q++) {
      double num = 0.0;
      for (int b = 0; b < f; b++) num += w[b * r + q] * ratio[b];
      h_row[q] *= num / std::max(colsum[q], kNmfEpsilon);
    }
  }
}

void NmfKlUpdateW(const double *v, double *w, const double *h, int t, int f,
                  int r) {
  std::vector<double> ratio(static_cast<size_t>(t) * f);
  for (int i = 0; i < t; i++)
    for (int b = 0; b < f; b++)
      ratio[static_cast<size_t>(i) * f + b] =
          v[static_cast<long>(i) * f + b] /
          std::max(Reconstruct(w, h + static_cast<long>(i) * r, b, r),
                   kNmfEpsilon);
  for (int b = 0; b < f; b++)
    for (int q = 0; q < r; q++) {
      double num = 0.0, den = 0.0;
      for (int i = 0; i < t; i++) {
        num += ratio[static_cast<size_t>(i) * f + b] * h[i * r + q];
        den += h[i * r + q];
      }
      w[b * r + q] *= num / std::max(den, kNmfEpsilon);
    }
}

void NmfEucUpdateH(const double *v, const double *w, double *h, int t, int f,
                   int r) {
  std::vector<double> wtw(static_cast<size_t>(r) * r, 0.0);
  for (int p = 0; p < r; p++)
    for (int q = 0; q < r; q++)
      for (int b = 0; b < f; b++) wtw[p * r + q] += w[b * r + p] * w[b * r + q];
  std::vector<double> old(r);
  for (int i = 0; i < t; i++) {
    double *h_row = h + static_cast<long>(i) * r;
    std::copy(h_row, h_row + r, old.begin());
    for (int q = 0; q < r; q++) {
      double num = 0.0, den = 0.0;
      for (int b = 0; b < f; b++)
        num += w[b * r + q] * v[static_cast<long>(i) * f + b];
      for (int p = 0; p < r; p++) den += wtw[q * r + p] * old[p];
      h_row[q] = old[q] * num / std::max(den, kNmfEpsilon);
    }
  }
}

void NmfEucUpdateW(const double *v, double *w, const double *h, int t, int f,
                   int r) {
  std::vector<double> hth(static_cast<size_t>(r) * r, 0.0);
  for (int p = 0; p < r; p++)
    for (int q = 0; q < r; q++)
      for (int i = 0; i < t; i++) hth[p * r + q] += h[i * r + p] * h[i * r + q];
  std::vector<double> old(w, w + static_cast<size_t>(f) * r);
  for (int b = 0; b < f; b++)
    for (int q = 0; q < r; q++) {
      double num = 0.0, den = 0.0;
      for (int i = 0; i < t; i++)
        num += v[static_cast<long>(i) * f + b] * h[i * r + q];
      for (int p = 0; p < r; p++) den += old[b * r + p] * hth[p * r + q];
      w[b * r + q] = old[b * r + q] * num / std::max(den, kNmfEpsilon);
    }
}

double NmfKlDivergence(const double *v, const double *w, const double *h,
                       int t, int f, int r) {
  long double total = 0.0L;
  for (int i = 0; i < t; i++)
    for (int b = 0; b < f; b++) {
      double x = v[static_cast<long>(i) * f + b];
      double y = std::max(Reconstruct(w, h + static_cast<long>(i) * r, b, r),
                          kNmfEpsilon);
      total += (x > 0.0 ? x * std::log(x / y) - x + y : y);
    }
  return static_cast<double>(total);
}

double NmfEucDistance(const double *v, const double *w, const double *h,
                      int t, int f, int r) {
  long double total = 0.0L;
  for (int i = 0; i < t; i++)
    for (int b = 0; b < f; b++) {
      double d = v[static_cast<long>(i) * f + b] -
                 Reconstruct(w, h + static_cast<long>(i) * r, b, r);
      total += 0.5 * d * d;
    }
  return static_cast<double>(total);
}

}  // namespace reference
}  // namespace kernels
}  // namespace sed
