// src/labeler/labeler.h

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

#ifndef SED_LABELER_LABELER_H_
#define SED_LABELER_LABELER_H_

#include <string>
#include <utility>
#include <vector>

#include "base/events.h"
#include "base/sed-common.h"
#include "nmf/dictionary.h"

namespace sed {

/// Clip-level tags with no timing.
struct WeakAnnotation {
  std::string clip_id;
  std::vector<std::string> tags;
};

/// Binary frames x classes matrix; column order is the label set's.
struct FrameLabelMatrix {
  std::string clip_id;
  Matrix values;
};

/// Index of label in label_set; throws if absent.
int32 LabelIndex(const std::vector<std::string> &label_set,
                 const std::string &label);

/// Decodes each tagged class independently against its own templates and
/// marks frames whose unit-max activation is >= theta.  Untagged columns
/// stay zero.  `frames` is the clip's mel spectrogram (time x mel).
FrameLabelMatrix ApproximateStrongLabels(
    const std::string &clip_id, const Matrix &frames,
    const WeakAnnotation &weak, const Dictionary &dict,
    const std::vector<std::string> &label_set, double theta,
    const NmfConfig &cfg, uint64_t seed);

/// Frame labels from true event annotations.
FrameLabelMatrix StrongLabelMatrix(const std::string &clip_id,
                                   const EventList &events,
                                   const std::vector<std::string> &label_set,
                                   int32 num_frames, double frame_seconds);

/// Header "frame_index<TAB>label...", then one row per frame.
void WriteLabelTsv(const std::string &path, const FrameLabelMatrix &labels,
                   const std::vector<std::string> &label_set);
FrameLabelMatrix ReadLabelTsv(const std::string &path,
                              const std::vector<std::string> &label_set);

/// clip_id TAB label-file path, one line per clip.  Relative paths in a
/// manifest file are relative to the manifest's directory; ReadLabelManifest
/// returns them resolved.
typedef std::vector<std::pair<std::string, std::string>> LabelManifest;
void WriteLabelManifest(const std::string &path, const LabelManifest &m);
LabelManifest ReadLabelManifest(const std::string &path);

}  // namespace sed

#endif  // SED_LABELER_LABELER_H_
