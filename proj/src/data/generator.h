// src/data/generator.h

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

#ifndef SED_DATA_GENERATOR_H_
#define SED_DATA_GENERATOR_H_

#include <string>
#include <vector>

#include "data/corpus.h"
#include "dsp/wave-io.h"

namespace sed {

enum class Archetype { kHarmonic, kBandNoise, kChirp, kImpulseTrain };

std::string ArchetypeName(Archetype a);

struct GenSpec {
  int32 n_classes = 3;
  int32 n_strong = 20;
  int32 n_weak = 20;
  int32 n_unlabeled = 40;
  int32 n_validation = 20;
  int32 min_events = 1;
  int32 max_events = 3;
  double min_duration = 0.5;
  double max_duration = 3.0;
  double snr_min_db = 10.0;
  double snr_max_db = 20.0;
  bool hard = false;      // overlapping class bands
  bool polyphony = false; // events of different classes may overlap
  uint64_t seed = 0;
  double clip_seconds = 10.0;
  int32 sample_rate = 22050;

  void Check() const;
};

/// Spectral identity of one class.
struct ClassProfile {
  std::string label;
  Archetype archetype;
  double lo_hz, hi_hz;
};

/// Bands are consecutive equal slices of the mel axis between 200 Hz and
/// 9 kHz.  By default each class keeps the middle 60% of its slice, so
/// bands are disjoint; with hard set each band spreads 50% into both
/// neighbours.
std::vector<ClassProfile> MakeClassProfiles(int32 n_classes, bool hard);

/// Draws a random event layout for one clip.  Events of the same class are
/// at least 0.5 s apart, events of different classes do not overlap unless
/// polyphony is set; times are rounded to milliseconds.
EventList SampleEvents(const GenSpec &spec,
                       const std::vector<ClassProfile> &profiles,
                       uint64_t seed);

/// Renders pink-noise background plus the given events at one SNR drawn
/// from [snr_min_db, snr_max_db] for the whole clip (event power over background
/// power, measured over each event's span), then peak-normalizes to -3 dBFS.
Waveform SynthesizeClip(const GenSpec &spec,
                        const std::vector<ClassProfile> &profiles,
                        const EventList &events, uint64_t seed);

/// Writes audio/*.wav, strong.tsv, weak.tsv, unlabeled.tsv, validation.tsv
/// (truth), validation_clips.tsv (file list), classes.tsv and
/// hidden/{weak,unlabeled}_truth.tsv under out_dir.
CorpusManifest GenerateCorpus(const GenSpec &spec, const std::string &out_dir);

/// Zeroes FFT bins outside [lo_hz, hi_hz].
void BandLimit(std::vector<double> *x, int32 sample_rate, double lo_hz,
               double hi_hz);

}  // namespace sed

#endif  // SED_DATA_GENERATOR_H_
