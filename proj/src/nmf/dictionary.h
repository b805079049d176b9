// src/nmf/dictionary.h

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

#ifndef SED_NMF_DICTIONARY_H_
#define SED_NMF_DICTIONARY_H_

#include <map>
#include <string>
#include <vector>

#include "base/events.h"
#include "nmf/nmf.h"

namespace sed {

/// A class spectral template: one NMF basis column, scaled to unit max.
struct Template {
  std::vector<double> spectrum;
  std::string label;
  std::string source_clip;
};

enum class TemplateMode {
  kPerEvent,      // one template per annotated event instance
  kClassAverage,  // a single averaged template per class
};

TemplateMode ParseTemplateMode(const std::string &name);
std::string TemplateModeName(TemplateMode mode);

struct NmfConfig {
  int32 iters = 200;
  int32 decode_iters = 200;
  NmfCost cost = NmfCost::kKullbackLeibler;
  NmfCost decode_cost = NmfCost::kEuclidean;
  TemplateMode template_mode = TemplateMode::kClassAverage;
};

class Dictionary {
 public:
  void Add(Template t) { entries_[t.label].push_back(std::move(t)); }
  bool HasClass(const std::string &label) const;
  /// Throws if the class has no templates.
  const std::vector<Template> &Templates(const std::string &label) const;
  const std::map<std::string, std::vector<Template>> &Entries() const {
    return entries_;
  }
  size_t NumTemplates() const;

  /// One file per class, "<label>.tsv", one line per template:
  /// source_clip TAB space-separated spectrum values.
  void WriteDir(const std::string &dir) const;
  static Dictionary ReadDir(const std::string &dir);

  /// Replaces each class's templates by their unit-max normalized mean.
  Dictionary ClassAverage() const;

 private:
  std::map<std::string, std::vector<Template>> entries_;
};

/// Zeroes every frame not in active_frames, factorizes the masked
/// spectrogram (time x mel) with r = 1 and returns the basis column scaled to
/// unit max.  Throws if active_frames is empty or the masked spectrogram is
/// all zero.
Template ExtractTemplate(const Matrix &frames,
                         const std::vector<int32> &active_frames, int32 iters,
                         uint64_t seed,
                         NmfCost cost = NmfCost::kKullbackLeibler);

/// A strongly labelled clip: mel spectrogram (time x mel) plus its events.
struct StrongClip {
  std::string clip_id;
  Matrix mel;
  EventList events;
};

/// One template per event instance, each from its own temporal mask
/// (overlapping events are masked independently), grouped by class.  Every
/// label in label_set must end up with at least one template.
Dictionary BuildDictionary(const std::vector<StrongClip> &clips,
                           const std::vector<std::string> &label_set,
                           double frame_seconds, const NmfConfig &cfg,
                           uint64_t seed);

/// Fits activations of `frames` against the fixed templates and returns the
/// per-frame max over templates, normalized to unit max over the clip.
std::vector<double> DecodeActivations(const Matrix &frames,
                                      const std::vector<Template> &templates,
                                      int32 iters, uint64_t seed,
                                      NmfCost cost = NmfCost::kKullbackLeibler);

}  // namespace sed

#endif  // SED_NMF_DICTIONARY_H_
