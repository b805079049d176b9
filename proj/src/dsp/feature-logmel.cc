// src/dsp/feature-logmel.cc

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

#include "dsp/feature-logmel.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "dsp/resample.h"
#include "kernels/kernels.h"

namespace sed {

int32 FeatureConfig::NumSamples() const {
  return static_cast<int32>(std::llround(clip_seconds * sample_rate));
}

int32 FeatureConfig::NumFrames() const { return 1 + NumSamples() / hop; }

void FeatureConfig::Check() const {
  if (sample_rate <= 0) Fail("feature.sample_rate must be positive");
  if (n_fft <= 0 || n_fft % 2 != 0) Fail("feature.n_fft must be positive and even");
  if (hop <= 0) Fail("feature.hop must be positive");
  if (n_mels <= 0) Fail("feature.n_mels must be positive");
  if (!(log_floor > 0.0)) Fail("feature.log_floor must be positive");
  if (!(clip_seconds > 0.0)) Fail("feature.clip_seconds must be positive");
  if (NumSamples() <= n_fft / 2)
    Fail("clip too short for reflection padding of n_fft/2 samples");
}

namespace {
constexpr double kMinLogHz = 1000.0;
constexpr double kLinearStep = 200.0 / 3.0;
constexpr double kMinLogMel = kMinLogHz / kLinearStep;  // 15
const double kLogStep = std::log(6.4) / 27.0;
}  // namespace

double HzToMel(double hz) {
  if (hz < kMinLogHz) return hz / kLinearStep;
  return kMinLogMel + std::log(hz / kMinLogHz) / kLogStep;
}

double MelToHz(double mel) {
  if (mel < kMinLogMel) return mel * kLinearStep;
  return kMinLogHz * std::exp(kLogStep * (mel - kMinLogMel));
}

namespace {

std::vector<double> MelEdges(const FeatureConfig &cfg) {
  const double lo = HzToMel(0.0), hi = HzToMel(cfg.sample_rate / 2.0);
  std::vector<double> edges(cfg.n_mels + 2);
  for (int32 i = 0; i < cfg.n_mels + 2; i++)
    edges[i] = MelToHz(lo + (hi - lo) * i / (cfg.n_mels + 1));
  return edges;
}

}  // namespace

Matrix MelFilterbank(const FeatureConfig &cfg) {
  const int32 bins = cfg.n_fft / 2 + 1;
  std::vector<double> edges = MelEdges(cfg);
  Matrix fb(cfg.n_mels, bins);
  for (int32 m = 0; m < cfg.n_mels; m++) {
    const double lower_w = edges[m + 1] - edges[m];
    const double upper_w = edges[m + 2] - edges[m + 1];
    const double norm = 2.0 / (edges[m + 2] - edges[m]);
    for (int32 k = 0; k < bins; k++) {
      const double f = static_cast<double>(k) * cfg.sample_rate / cfg.n_fft;
      const double rise = (f - edges[m]) / lower_w;
      const double fall = (edges[m + 2] - f) / upper_w;
      fb(m, k) = norm * std::max(0.0, std::min(rise, fall));
    }
  }
  return fb;
}

std::vector<double> MelCenterFrequencies(const FeatureConfig &cfg) {
  std::vector<double> edges = MelEdges(cfg);
  return std::vector<double>(edges.begin() + 1, edges.end() - 1);
}

namespace {

std::mutex planner_mutex;

struct FftwDeleter {
  void operator()(void *p) const { fftw_free(p); }
};

// One real-to-complex plan per n_fft; fftw_execute_dft_r2c on a created plan
// is thread-safe, the planner itself is not.
class RealFft {
 public:
  explicit RealFft(int32 n) : n_(n) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    in_.reset(fftw_alloc_real(n));
    out_.reset(fftw_alloc_complex(n / 2 + 1));
    plan_ = fftw_plan_dft_r2c_1d(n, in_.get(), out_.get(), FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan_);
  }
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  void Execute(double *in, fftw_complex *out) const {
    fftw_execute_dft_r2c(plan_, in, out);
  }
  int32 Size() const { return n_; }

 private:
  int32 n_;
  std::unique_ptr<double, FftwDeleter> in_;
  std::unique_ptr<fftw_complex, FftwDeleter> out_;
  fftw_plan plan_;
};

int64 ReflectIndex(int64 i, int64 n) {
  if (n == 1) return 0;
  const int64 period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace

Matrix MagnitudeStft(const std::vector<double> &samples,
                     const FeatureConfig &cfg) {
  const int64 n = static_cast<int64>(samples.size());
  if (n == 0) Fail("MagnitudeStft: empty signal");
  const int32 n_fft = cfg.n_fft, pad = n_fft / 2, bins = n_fft / 2 + 1;
  const int32 frames = static_cast<int32>(1 + n / cfg.hop);

  std::vector<double> window(n_fft);
  for (int32 i = 0; i < n_fft; i++)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n_fft);

  RealFft fft(n_fft);
  Matrix mag(frames, bins);
#pragma omp parallel
  {
    std::unique_ptr<double, FftwDeleter> buf(fftw_alloc_real(n_fft));
    std::unique_ptr<fftw_complex, FftwDeleter> spec(fftw_alloc_complex(bins));
#pragma omp for schedule(static)
    for (int32 t = 0; t < frames; t++) {
      const int64 start = static_cast<int64>(t) * cfg.hop - pad;
      double *b = buf.get();
      for (int32 i = 0; i < n_fft; i++)
        b[i] = samples[ReflectIndex(start + i, n)] * window[i];
      fft.Execute(b, spec.get());
      double *row = mag.Row(t);
      for (int32 k = 0; k < bins; k++)
        row[k] = std::hypot(spec.get()[k][0], spec.get()[k][1]);
    }
  }
  return mag;
}

MelFeatures ComputeLogMel(const Waveform &wave, const FeatureConfig &cfg) {
  cfg.Check();
  if (wave.sample_rate != cfg.sample_rate)
    Fail("ComputeLogMel: expected sample rate ", cfg.sample_rate, ", got ",
         wave.sample_rate);
  if (static_cast<int64>(wave.samples.size()) != cfg.NumSamples())
    Fail("ComputeLogMel: expected ", cfg.NumSamples(), " samples, got ",
         wave.samples.size());

  Matrix mag = MagnitudeStft(wave.samples, cfg);
  Matrix fb = MelFilterbank(cfg);
  MelFeatures feats;
  feats.mel = Matrix(mag.NumRows(), cfg.n_mels);
  kernels::GemmNT(mag.NumRows(), cfg.n_mels, mag.NumCols(), mag.Data(),
                  fb.Data(), feats.mel.Data(), false);
  feats.logmel = Matrix(mag.NumRows(), cfg.n_mels);
  std::vector<double> &lv = feats.logmel.Values();
  const std::vector<double> &mv = feats.mel.Values();
  for (size_t i = 0; i < mv.size(); i++)
    lv[i] = std::log(std::max(mv[i], cfg.log_floor));
  return feats;
}

MelFeatures ExtractFeatures(const std::string &wav_path,
                            const FeatureConfig &cfg) {
  Waveform w = LoadWav(wav_path);
  w = FixLength(w, cfg.clip_seconds);
  w = Resample(w, cfg.sample_rate);
  w = FixLength(w, cfg.clip_seconds);
  return ComputeLogMel(w, cfg);
}

}  // namespace sed
