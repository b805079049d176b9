// src/kernels/kernels-omp.cc

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

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kernels/kernels.h"

namespace sed {
namespace kernels {

void SetNumThreads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {
constexpr int kColBlock = 256;
constexpr int kRowBlock = 4;
}  // namespace

void GemmNN(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate) {
  const int col_blocks = (n + kColBlock - 1) / kColBlock;
  const int row_blocks = (m + kRowBlock - 1) / kRowBlock;
#pragma omp parallel for collapse(2) schedule(static)
  for (int jb = 0; jb < col_blocks; jb++)
    for (int ib = 0; ib < row_blocks; ib++) {
      const int j0 = jb * kColBlock, jn = std::min(kColBlock, n - j0);
      const int i0 = ib * kRowBlock, in = std::min(kRowBlock, m - i0);
      double acc[kRowBlock][kColBlock];
      for (int ii = 0; ii < in; ii++) {
        const double *src = c + static_cast<long>(i0 + ii) * n + j0;
        for (int j = 0; j < jn; j++) acc[ii][j] = accumulate ? src[j] : 0.0;
      }
      if (in == kRowBlock) {
        for (int p = 0; p < k; p++) {
          const double *brow = b + static_cast<long>(p) * n + j0;
          const double a0 = a[static_cast<long>(i0) * k + p];
          const double a1 = a[static_cast<long>(i0 + 1) * k + p];
          const double a2 = a[static_cast<long>(i0 + 2) * k + p];
          const double a3 = a[static_cast<long>(i0 + 3) * k + p];
#pragma omp simd
          for (int j = 0; j < jn; j++) {
            const double bv = brow[j];
            acc[0][j] += a0 * bv;
            acc[1][j] += a1 * bv;
            acc[2][j] += a2 * bv;
            acc[3][j] += a3 * bv;
          }
        }
      } else {
        for (int ii = 0; ii < in; ii++)
          for (int p = 0; p < k; p++) {
            const double *brow = b + static_cast<long>(p) * n + j0;
            const double av = a[static_cast<long>(i0 + ii) * k + p];
#pragma omp simd
            for (int j = 0; j < jn; j++) acc[ii][j] += av * brow[j];
          }
      }
      for (int ii = 0; ii < in; ii++) {
        double *dst = c + static_cast<long>(i0 + ii) * n + j0;
        for (int j = 0; j < jn; j++) dst[j] = acc[ii][j];
      }
    }
}

void GemmNT(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < m; i++)
    for (int jb = 0; jb < (n + 3) / 4; jb++) {
      const double *arow = a + static_cast<long>(i) * k;
      const int j0 = jb * 4;
      if (j0 + 4 <= n) {
        const double *b0 = b + static_cast<long>(j0) * k;
        const double *b1 = b0 + k, *b2 = b1 + k, *b3 = b2 + k;
        double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
#pragma omp simd reduction(+ : s0, s1, s2, s3)
        for (int p = 0; p < k; p++) {
          const double av = arow[p];
          s0 += av * b0[p];
          s1 += av * b1[p];
          s2 += av * b2[p];
          s3 += av * b3[p];
        }
        double *dst = c + static_cast<long>(i) * n + j0;
        if (accumulate) {
          dst[0] += s0; dst[1] += s1; dst[2] += s2; dst[3] += s3;
        } else {
          dst[0] = s0; dst[1] = s1; dst[2] = s2; dst[3] = s3;
        }
      } else {
        for (int j = j0; j < n; j++) {
          const double *brow = b + static_cast<long>(j) * k;
          double s = 0.0;
#pragma omp simd reduction(+ : s)
          for (int p = 0; p < k; p++) s += arow[p] * brow[p];
          double &dst = c[static_cast<long>(i) * n + j];
          dst = accumulate ? dst + s : s;
        }
      }
    }
}

void GemmTN(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate) {
  const int col_blocks = (n + kColBlock - 1) / kColBlock;
#pragma omp parallel for collapse(2) schedule(static)
  for (int jb = 0; jb < col_blocks; jb++)
    for (int i = 0; i < m; i++) {
      const int j0 = jb * kColBlock, jn = std::min(kColBlock, n - j0);
      double acc[kColBlock];
      double *dst = c + static_cast<long>(i) * n + j0;
      for (int j = 0; j < jn; j++) acc[j] = accumulate ? dst[j] : 0.0;
      for (int p = 0; p < k; p++) {
        const double av = a[static_cast<long>(p) * m + i];
        const double *brow = b + static_cast<long>(p) * n + j0;
#pragma omp simd
        for (int j = 0; j < jn; j++) acc[j] += av * brow[j];
      }
      for (int j = 0; j < jn; j++) dst[j] = acc[j];
    }
}

void Im2Col(const double *img, int channels, int height, int width, int kh,
            int kw, double *cols) {
  const int ph = kh / 2, pw = kw / 2;
  const long hw = static_cast<long>(height) * width;
#pragma omp parallel for collapse(3) schedule(static)
  for (int c = 0; c < channels; c++)
    for (int dy = 0; dy < kh; dy++)
      for (int dx = 0; dx < kw; dx++) {
        double *row = cols + ((static_cast<long>(c) * kh + dy) * kw + dx) * hw;
        const double *plane = img + static_cast<long>(c) * hw;
        const int x_lo = std::max(0, pw - dx);
        const int x_hi = std::min(width, width + pw - dx);
        for (int y = 0; y < height; y++) {
          double *out = row + static_cast<long>(y) * width;
          const int sy = y + dy - ph;
          if (sy < 0 || sy >= height) {
            std::fill(out, out + width, 0.0);
            continue;
          }
          const double *in = plane + static_cast<long>(sy) * width + dx - pw;
          for (int x = 0; x < x_lo; x++) out[x] = 0.0;
          for (int x = x_lo; x < x_hi; x++) out[x] = in[x];
          for (int x = std::max(x_hi, x_lo); x < width; x++) out[x] = 0.0;
        }
      }
}

void Col2ImAdd(const double *cols, int channels, int height, int width,
               int kh, int kw, double *img) {
  const int ph = kh / 2, pw = kw / 2;
  const long hw = static_cast<long>(height) * width;
  // Channels are independent; within a channel the kernel offsets are
  // visited in a fixed order.
#pragma omp parallel for schedule(static)
  for (int c = 0; c < channels; c++) {
    double *plane = img + static_cast<long>(c) * hw;
    for (int dy = 0; dy < kh; dy++)
      for (int dx = 0; dx < kw; dx++) {
        const double *row =
            cols + ((static_cast<long>(c) * kh + dy) * kw + dx) * hw;
        const int x_lo = std::max(0, pw - dx);
        const int x_hi = std::min(width, width + pw - dx);
        for (int y = 0; y < height; y++) {
          const int sy = y + dy - ph;
          if (sy < 0 || sy >= height) continue;
          const double *in = row + static_cast<long>(y) * width;
          double *out = plane + static_cast<long>(sy) * width + dx - pw;
#pragma omp simd
          for (int x = x_lo; x < x_hi; x++) out[x] += in[x];
        }
      }
  }
}

void NmfKlUpdateH(const double *v, const double *w, double *h, int t, int f,
                  int r) {
  std::vector<double> colsum(r, 0.0);
  for (int b = 0; b < f; b++)
    for (int q = 0; q < r; q++) colsum[q] += w[b * r + q];
#pragma omp parallel
  {
    std::vector<double> ratio(f), num(r);
#pragma omp for schedule(static)
    for (int i = 0; i < t; i++) {
      double *h_row = h + static_cast<long>(i) * r;
      const double *v_row = v + static_cast<long>(i) * f;
      for (int b = 0; b < f; b++) {
        double s = 0.0;
        for (int q = 0; q < r; q++) s += w[b * r + q] * h_row[q];
        ratio[b] = v_row[b] / std::max(s, kNmfEpsilon);
      }
      std::fill(num.begin(), num.end(), 0.0);
      for (int b = 0; b < f; b++)
        for (int q = 0; q < r; q++) num[q] += w[b * r + q] * ratio[b];
      for (int q = 0; q < r; q++)
        h_row[q] *= num[q] / std::max(colsum[q], kNmfEpsilon);
    }
  }
}

void NmfKlUpdateW(const double *v, double *w, const double *h, int t, int f,
                  int r, double *scratch) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < t; i++) {
    const double *h_row = h + static_cast<long>(i) * r;
    const double *v_row = v + static_cast<long>(i) * f;
    double *ratio = scratch + static_cast<long>(i) * f;
    for (int b = 0; b < f; b++) {
      double s = 0.0;
      for (int q = 0; q < r; q++) s += w[b * r + q] * h_row[q];
      ratio[b] = v_row[b] / std::max(s, kNmfEpsilon);
    }
  }
  std::vector<double> hsum(r, 0.0);
  for (int i = 0; i < t; i++)
    for (int q = 0; q < r; q++) hsum[q] += h[static_cast<long>(i) * r + q];
#pragma omp parallel for schedule(static)
  for (int b = 0; b < f; b++) {
    for (int q = 0; q < r; q++) {
      double num = 0.0;
      for (int i = 0; i < t; i++)
        num += scratch[static_cast<long>(i) * f + b] *
               h[static_cast<long>(i) * r + q];
      w[b * r + q] *= num / std::max(hsum[q], kNmfEpsilon);
    }
  }
}

void NmfEucUpdateH(const double *v, const double *w, double *h, int t, int f,
                   int r) {
  std::vector<double> wtw(static_cast<size_t>(r) * r, 0.0);
  for (int p = 0; p < r; p++)
    for (int q = 0; q < r; q++)
      for (int b = 0; b < f; b++) wtw[p * r + q] += w[b * r + p] * w[b * r + q];
#pragma omp parallel
  {
    std::vector<double> old(r);
#pragma omp for schedule(static)
    for (int i = 0; i < t; i++) {
      double *h_row = h + static_cast<long>(i) * r;
      const double *v_row = v + static_cast<long>(i) * f;
      std::copy(h_row, h_row + r, old.begin());
      for (int q = 0; q < r; q++) {
        double num = 0.0, den = 0.0;
        for (int b = 0; b < f; b++) num += w[b * r + q] * v_row[b];
        for (int p = 0; p < r; p++) den += wtw[q * r + p] * old[p];
        h_row[q] = old[q] * num / std::max(den, kNmfEpsilon);
      }
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
#pragma omp parallel for schedule(static)
  for (int b = 0; b < f; b++)
    for (int q = 0; q < r; q++) {
      double num = 0.0, den = 0.0;
      for (int i = 0; i < t; i++)
        num += v[static_cast<long>(i) * f + b] * h[static_cast<long>(i) * r + q];
      for (int p = 0; p < r; p++) den += old[b * r + p] * hth[p * r + q];
      w[b * r + q] = old[b * r + q] * num / std::max(den, kNmfEpsilon);
    }
}

double NmfKlDivergence(const double *v, const double *w, const double *h,
                       int t, int f, int r) {
  std::vector<long double> partial(t);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < t; i++) {
    const double *h_row = h + static_cast<long>(i) * r;
    const double *v_row = v + static_cast<long>(i) * f;
    long double s = 0.0L;
    for (int b = 0; b < f; b++) {
      double y = 0.0;
      for (int q = 0; q < r; q++) y += w[b * r + q] * h_row[q];
      y = std::max(y, kNmfEpsilon);
      const double x = v_row[b];
      s += (x > 0.0 ? x * std::log(x / y) - x + y : y);
    }
    partial[i] = s;
  }
  long double total = 0.0L;
  for (long double p : partial) total += p;
  return static_cast<double>(total);
}

double NmfEucDistance(const double *v, const double *w, const double *h,
                      int t, int f, int r) {
  std::vector<long double> partial(t);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < t; i++) {
    const double *h_row = h + static_cast<long>(i) * r;
    const double *v_row = v + static_cast<long>(i) * f;
    long double s = 0.0L;
    for (int b = 0; b < f; b++) {
      double y = 0.0;
      for (int q = 0; q < r; q++) y += w[b * r + q] * h_row[q];
      const double d = v_row[b] - y;
      s += 0.5 * d * d;
    }
    partial[i] = s;
  }
  long double total = 0.0L;
  for (long double p : partial) total += p;
  return static_cast<double>(total);
}

}  // namespace kernels
}  // namespace sed
