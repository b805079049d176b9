// src/dsp/resample.h

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

#ifndef SED_DSP_RESAMPLE_H_
#define SED_DSP_RESAMPLE_H_

#include "dsp/wave-io.h"

namespace sed {

/// Truncates at the end or zero-pads at the end so the output has exactly
/// round(target_seconds * sample_rate) samples.
Waveform FixLength(const Waveform &wave, double target_seconds);

/// Rational-ratio polyphase resampler with a Kaiser-windowed sinc kernel.
/// The low-pass cutoff sits at the lower of the two Nyquist rates.  Each
/// polyphase branch is normalized to unit DC gain and the signal is
/// mirror-extended at both ends, so constant input stays constant.
class Resampler {
 public:
  Resampler(int32 input_rate, int32 output_rate, int32 zero_crossings = 16,
            double kaiser_beta = 8.6);

  /// Number of output samples produced for num_input samples.
  int64 OutputLength(int64 num_input) const;

  std::vector<double> Resample(const std::vector<double> &input) const;

 private:
  int32 input_rate_, output_rate_;
  int64 up_, down_;    // output/input = up_/down_ in lowest terms
  int32 half_taps_;    // taps on each side of the centre
  std::vector<double> table_;  // up_ rows x (2 * half_taps_) columns
};

Waveform Resample(const Waveform &wave, int32 target_rate);

}  // namespace sed

#endif  // SED_DSP_RESAMPLE_H_
