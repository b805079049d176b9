// src/dsp/wave-io.h

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

#ifndef SED_DSP_WAVE_IO_H_
#define SED_DSP_WAVE_IO_H_

#include <string>
#include <vector>

#include "base/sed-common.h"

namespace sed {

/// Mono audio.  Samples are nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int32 sample_rate = 0;

  double Duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

/// Reads a RIFF/WAVE file holding 16-bit integer PCM or 32-bit float PCM
/// (plain or WAVE_FORMAT_EXTENSIBLE).  Channels are averaged to mono and the
/// original sample rate is kept.  Throws SedError on anything else,
/// including truncated headers or data.
Waveform LoadWav(const std::string &path);

/// Same, from an in-memory byte buffer; `name` is only used in messages.
Waveform ParseWav(const std::vector<unsigned char> &bytes,
                  const std::string &name);

/// Writes 16-bit PCM mono.  Samples are clipped to [-1, 1] and rounded.
void WriteWav(const std::string &path, const Waveform &wave);

/// 16-bit PCM encoding of the waveform (full file contents).
std::vector<unsigned char> EncodeWav16(const Waveform &wave);

}  // namespace sed

#endif  // SED_DSP_WAVE_IO_H_
