// src/dsp/resample.cc

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

#include "dsp/resample.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sed {

Waveform FixLength(const Waveform &wave, double target_seconds) {
  if (!(target_seconds > 0.0)) Fail("FixLength: target must be positive");
  if (wave.sample_rate <= 0) Fail("FixLength: invalid sample rate");
  Waveform out;
  out.sample_rate = wave.sample_rate;
  const size_t n =
      static_cast<size_t>(std::llround(target_seconds * wave.sample_rate));
  out.samples.assign(n, 0.0);
  std::copy_n(wave.samples.begin(), std::min(n, wave.samples.size()),
              out.samples.begin());
  return out;
}

namespace {

double Sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

double Kaiser(double x, double beta) {
  // x in [-1, 1]
  if (std::abs(x) > 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - x * x)) /
         std::cyl_bessel_i(0.0, beta);
}

// Mirror index into [0, n) without repeating the edge sample.
int64 Reflect(int64 i, int64 n) {
  if (n == 1) return 0;
  const int64 period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace

Resampler::Resampler(int32 input_rate, int32 output_rate,
                     int32 zero_crossings, double kaiser_beta)
    : input_rate_(input_rate), output_rate_(output_rate) {
  if (input_rate <= 0 || output_rate <= 0)
    Fail("Resampler: rates must be positive");
  const int64 g = std::gcd<int64, int64>(input_rate, output_rate);
  up_ = output_rate / g;
  down_ = input_rate / g;
  const double cutoff = std::min(1.0, static_cast<double>(up_) / down_);
  const double half_width = zero_crossings / cutoff;
  half_taps_ = static_cast<int32>(std::ceil(half_width));
  const int32 width = 2 * half_taps_;
  table_.assign(static_cast<size_t>(up_) * width, 0.0);
  for (int64 p = 0; p < up_; p++) {
    const double frac = static_cast<double>(p) / up_;
    double *row = table_.data() + p * width;
    double sum = 0.0;
    for (int32 o = -half_taps_ + 1; o <= half_taps_; o++) {
      const double d = frac - o;
      const double v =
          cutoff * Sinc(cutoff * d) * Kaiser(d / half_width, kaiser_beta);
      row[o + half_taps_ - 1] = v;
      sum += v;
    }
    for (int32 c = 0; c < width; c++) row[c] /= sum;
  }
}

int64 Resampler::OutputLength(int64 num_input) const {
  return (num_input * up_ + down_ - 1) / down_;
}

std::vector<double> Resampler::Resample(const std::vector<double> &input) const {
  const int64 n = static_cast<int64>(input.size());
  if (n == 0) return {};
  if (up_ == down_) return input;
  const int64 out_len = OutputLength(n);
  const int32 width = 2 * half_taps_;
  std::vector<double> out(out_len);
#pragma omp parallel for schedule(static)
  for (int64 j = 0; j < out_len; j++) {
    const int64 num = j * down_;
    const int64 i0 = num / up_;
    const double *row = table_.data() + (num % up_) * width;
    double s = 0.0;
    const int64 first = i0 - half_taps_ + 1;
    if (first >= 0 && first + width <= n) {
      const double *x = input.data() + first;
      for (int32 c = 0; c < width; c++) s += row[c] * x[c];
    } else {
      for (int32 c = 0; c < width; c++) s += row[c] * input[Reflect(first + c, n)];
    }
    out[j] = s;
  }
  return out;
}

Waveform Resample(const Waveform &wave, int32 target_rate) {
  if (target_rate <= 0) Fail("Resample: target rate must be positive");
  if (wave.sample_rate == target_rate) return wave;
  Resampler r(wave.sample_rate, target_rate);
  Waveform out;
  out.sample_rate = target_rate;
  out.samples = r.Resample(wave.samples);
  return out;
}

}  // namespace sed
