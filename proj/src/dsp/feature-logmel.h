// src/dsp/feature-logmel.h

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

#ifndef SED_DSP_FEATURE_LOGMEL_H_
#define SED_DSP_FEATURE_LOGMEL_H_

#include <string>
#include <vector>

#include "base/sed-common.h"
#include "dsp/wave-io.h"

namespace sed {

struct FeatureConfig {
  int32 sample_rate = 22050;
  int32 n_fft = 2048;
  int32 hop = 345;
  int32 n_mels = 64;
  double log_floor = 1e-10;
  double clip_seconds = 10.0;

  int32 NumSamples() const;
  /// Frames of a centered STFT: 1 + floor(samples / hop).
  int32 NumFrames() const;
  double FrameSeconds() const {
    return static_cast<double>(hop) / sample_rate;
  }
  void Check() const;
};

/// Time x mel feature pair.  mel holds the nonnegative magnitude mel
/// spectrogram, logmel = log(max(mel, log_floor)).
struct MelFeatures {
  Matrix mel;
  Matrix logmel;
};

/// Slaney-style mel scale (linear below 1 kHz, logarithmic above).
double HzToMel(double hz);
double MelToHz(double mel);

/// Area-normalized triangular filters spanning 0 Hz to Nyquist, returned as
/// n_mels x (n_fft/2 + 1).
Matrix MelFilterbank(const FeatureConfig &cfg);

/// Centre frequency (Hz) of every mel filter.
std::vector<double> MelCenterFrequencies(const FeatureConfig &cfg);

/// Magnitude STFT with Hann window and reflection-padded centered frames;
/// frames x (n_fft/2 + 1).
Matrix MagnitudeStft(const std::vector<double> &samples,
                     const FeatureConfig &cfg);

/// Mel and log-mel features of a clip that is already at cfg.sample_rate and
/// exactly cfg.clip_seconds long; anything else is an error.
MelFeatures ComputeLogMel(const Waveform &wave, const FeatureConfig &cfg);

/// Full ingestion path for one file: load, fix length, resample, fix length
/// again (guards rate-conversion rounding), extract features.
MelFeatures ExtractFeatures(const std::string &wav_path,
                            const FeatureConfig &cfg);

}  // namespace sed

#endif  // SED_DSP_FEATURE_LOGMEL_H_
