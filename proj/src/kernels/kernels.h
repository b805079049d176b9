// src/kernels/kernels.h

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

#ifndef SED_KERNELS_KERNELS_H_
#define SED_KERNELS_KERNELS_H_

// Dense inner loops shared by the feature extractor, NMF and the network
// layers.  Every kernel exists twice: the OpenMP version in namespace
// sed::kernels, used by the library, and a plain serial loop in
// sed::kernels::reference that the tests and benchmarks compare against.
//
// All matrices are row-major.  Parallel kernels partition *outputs* across
// threads and keep every reduction in a fixed order, so results do not depend
// on the thread count.

namespace sed {
namespace kernels {

/// Clamp applied to NMF denominators and reconstructions.
constexpr double kNmfEpsilon = 1e-12;

void SetNumThreads(int n);
int MaxThreads();

/// C[MxN] = A[MxK] * B[KxN]  (+ C if accumulate).
void GemmNN(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate);
/// C[MxN] = A[MxK] * B[NxK]^T  (+ C if accumulate).
void GemmNT(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate);
/// C[MxN] = A[KxM]^T * B[KxN]  (+ C if accumulate).
void GemmTN(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate);

/// Unfolds a (channels x height x width) image into columns for a
/// kh x kw "same" convolution (odd kernel sizes, zero padding).
/// cols is (channels*kh*kw) x (height*width).
void Im2Col(const double *img, int channels, int height, int width, int kh,
            int kw, double *cols);
/// Adjoint of Im2Col: scatters columns back, adding into img.
void Col2ImAdd(const double *cols, int channels, int height, int width,
               int kh, int kw, double *img);

// NMF kernels.  V is frames x bins (T x F), W is F x R, H is stored
// transposed as T x R so that each frame is contiguous.

/// One multiplicative KL update of H with W fixed.
void NmfKlUpdateH(const double *v, const double *w, double *h, int t, int f,
                  int r);
/// One multiplicative KL update of W with H fixed.  scratch holds T*F values.
void NmfKlUpdateW(const double *v, double *w, const double *h, int t, int f,
                  int r, double *scratch);
/// One multiplicative Euclidean update of H with W fixed.
void NmfEucUpdateH(const double *v, const double *w, double *h, int t, int f,
                   int r);
/// One multiplicative Euclidean update of W with H fixed.
void NmfEucUpdateW(const double *v, double *w, const double *h, int t, int f,
                   int r);
/// Generalized KL divergence D(V || WH).
double NmfKlDivergence(const double *v, const double *w, const double *h,
                       int t, int f, int r);
/// Half squared Frobenius distance 0.5*||V - WH||^2.
double NmfEucDistance(const double *v, const double *w, const double *h,
                      int t, int f, int r);

namespace reference {

void GemmNN(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate);
void GemmNT(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate);
void GemmTN(int m, int n, int k, const double *a, const double *b, double *c,
            bool accumulate);
void Im2Col(const double *img, int channels, int height, int width, int kh,
            int kw, double *cols);
void Col2ImAdd(const double *cols, int channels, int height, int width,
               int kh, int kw, double *img);
void NmfKlUpdateH(const double *v, const double *w, double *h, int t, int f,
                  int r);
void NmfKlUpdateW(const double *v, double *w, const double *h, int t, int f,
                  int r);
void NmfEucUpdateH(const double *v, const double *w, double *h, int t, int f,
                   int r);
void NmfEucUpdateW(const double *v, double *w, const double *h, int t, int f,
                   int r);
double NmfKlDivergence(const double *v, const double *w, const double *h,
                       int t, int f, int r);
double NmfEucDistance(const double *v, const double *w, const double *h,
                      int t, int f, int r);

}  // namespace reference
}  // namespace kernels
}  // namespace sed

#endif  // SED_KERNELS_KERNELS_H_
