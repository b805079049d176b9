// bench/kernels-bench.cc

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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "kernels/kernels.h"

namespace {

namespace k = sed::kernels;
namespace ref = sed::kernels::reference;

std::vector<double> Random(size_t n, uint64_t seed, double lo = 0.01,
                           double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double &x : v) x = u(rng);
  return v;
}

// Shapes of a first-block convolution over one 640 x 64 clip:
// weights (out x in*9) times columns (in*9 x 640*64).
template <void (*Gemm)(int, int, int, const double *, const double *,
                       double *, bool)>
void BM_Gemm(benchmark::State &state) {
  const int m = static_cast<int>(state.range(0)),
            n = static_cast<int>(state.range(1)),
            kk = static_cast<int>(state.range(2));
  std::vector<double> a = Random(size_t(m) * kk, 1), b = Random(size_t(kk) * n, 2),
                      c(size_t(m) * n);
  for (auto _ : state) {
    Gemm(m, n, kk, a.data(), b.data(), c.data(), false);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * int64_t(2) * m * n * kk);
}

template <void (*Unfold)(const double *, int, int, int, int, int, double *)>
void BM_Im2Col(benchmark::State &state) {
  const int c = static_cast<int>(state.range(0)), h = 640, w = 64;
  std::vector<double> img = Random(size_t(c) * h * w, 3),
                      cols(size_t(c) * 9 * h * w);
  for (auto _ : state) {
    Unfold(img.data(), c, h, w, 3, 3, cols.data());
    benchmark::DoNotOptimize(cols.data());
  }
  state.SetBytesProcessed(state.iterations() * int64_t(cols.size()) * 8);
}

// Template extraction sizes: 640 frames, 1025 bins.
template <void (*Update)(const double *, const double *, double *, int, int,
                         int)>
void BM_NmfUpdateH(benchmark::State &state) {
  const int t = 640, f = 1025, r = static_cast<int>(state.range(0));
  std::vector<double> v = Random(size_t(t) * f, 4), w = Random(size_t(f) * r, 5),
                      h = Random(size_t(t) * r, 6);
  for (auto _ : state) {
    Update(v.data(), w.data(), h.data(), t, f, r);
    benchmark::DoNotOptimize(h.data());
  }
}

void BM_NmfKlUpdateW_Omp(benchmark::State &state) {
  const int t = 640, f = 1025, r = static_cast<int>(state.range(0));
  std::vector<double> v = Random(size_t(t) * f, 4), w = Random(size_t(f) * r, 5),
                      h = Random(size_t(t) * r, 6), scratch(size_t(t) * f);
  for (auto _ : state) {
    k::NmfKlUpdateW(v.data(), w.data(), h.data(), t, f, r, scratch.data());
    benchmark::DoNotOptimize(w.data());
  }
}

void BM_NmfKlUpdateW_Ref(benchmark::State &state) {
  const int t = 640, f = 1025, r = static_cast<int>(state.range(0));
  std::vector<double> v = Random(size_t(t) * f, 4), w = Random(size_t(f) * r, 5),
                      h = Random(size_t(t) * r, 6);
  for (auto _ : state) {
    ref::NmfKlUpdateW(v.data(), w.data(), h.data(), t, f, r);
    benchmark::DoNotOptimize(w.data());
  }
}

template <double (*Div)(const double *, const double *, const double *, int,
                        int, int)>
void BM_NmfKlDivergence(benchmark::State &state) {
  const int t = 640, f = 1025, r = static_cast<int>(state.range(0));
  std::vector<double> v = Random(size_t(t) * f, 4), w = Random(size_t(f) * r, 5),
                      h = Random(size_t(t) * r, 6);
  for (auto _ : state) benchmark::DoNotOptimize(Div(v.data(), w.data(), h.data(), t, f, r));
}

// Forward and input-gradient shapes of the convolutions.
void GemmArgs(benchmark::internal::Benchmark *b) {
  b->Args({16, 640 * 64, 9})->Args({64, 160 * 16, 32 * 9})->Args({64, 256, 256});
}

// Weight-gradient shapes: dW (out x in*9) = dY (out x HW) cols^T.
void GemmNTArgs(benchmark::internal::Benchmark *b) {
  b->Args({16, 9, 640 * 64})->Args({64, 32 * 9, 160 * 16})->Args({64, 256, 256});
}

}  // namespace

BENCHMARK(BM_Gemm<k::GemmNN>)->Name("GemmNN/omp")->Apply(GemmArgs);
BENCHMARK(BM_Gemm<ref::GemmNN>)->Name("GemmNN/ref")->Apply(GemmArgs);
BENCHMARK(BM_Gemm<k::GemmNT>)->Name("GemmNT/omp")->Apply(GemmNTArgs);
BENCHMARK(BM_Gemm<ref::GemmNT>)->Name("GemmNT/ref")->Apply(GemmNTArgs);
BENCHMARK(BM_Gemm<k::GemmTN>)->Name("GemmTN/omp")->Apply(GemmArgs);
BENCHMARK(BM_Gemm<ref::GemmTN>)->Name("GemmTN/ref")->Apply(GemmArgs);
BENCHMARK(BM_Im2Col<k::Im2Col>)->Name("Im2Col/omp")->Arg(1)->Arg(16);
BENCHMARK(BM_Im2Col<ref::Im2Col>)->Name("Im2Col/ref")->Arg(1)->Arg(16);
BENCHMARK(BM_NmfUpdateH<k::NmfKlUpdateH>)->Name("NmfKlUpdateH/omp")->Arg(1)->Arg(4);
BENCHMARK(BM_NmfUpdateH<ref::NmfKlUpdateH>)->Name("NmfKlUpdateH/ref")->Arg(1)->Arg(4);
BENCHMARK(BM_NmfUpdateH<k::NmfEucUpdateH>)->Name("NmfEucUpdateH/omp")->Arg(1)->Arg(4);
BENCHMARK(BM_NmfUpdateH<ref::NmfEucUpdateH>)->Name("NmfEucUpdateH/ref")->Arg(1)->Arg(4);
BENCHMARK(BM_NmfKlUpdateW_Omp)->Name("NmfKlUpdateW/omp")->Arg(1)->Arg(4);
BENCHMARK(BM_NmfKlUpdateW_Ref)->Name("NmfKlUpdateW/ref")->Arg(1)->Arg(4);
BENCHMARK(BM_NmfKlDivergence<k::NmfKlDivergence>)->Name("NmfKlDivergence/omp")->Arg(4);
BENCHMARK(BM_NmfKlDivergence<ref::NmfKlDivergence>)->Name("NmfKlDivergence/ref")->Arg(4);

BENCHMARK_MAIN();
