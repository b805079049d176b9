// src/postproc/postproc.h

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

#ifndef SED_POSTPROC_POSTPROC_H_
#define SED_POSTPROC_POSTPROC_H_

#include <string>
#include <utility>
#include <vector>

#include "base/events.h"
#include "models/models.h"

namespace sed {

struct DecodeConfig {
  double clip_threshold = 0.5;
  /// Per class; a single value applies to every class.
  std::vector<double> frame_threshold = {0.5};
  double low_threshold = 0.08;
  double min_duration = 0.1;
  double merge_gap = 0.2;
  /// Per class (first round, second round); a single pair applies to every
  /// class.
  std::vector<std::vector<int32>> median_windows = {{5, 11}};
  double frame_seconds = 345.0 / 22050.0;
  double clip_seconds = 10.0;

  /// Validates against the number of classes.
  void Check(int32 num_classes) const;
  double FrameThreshold(int32 k) const;
  const std::vector<int32> &Windows(int32 k) const;
};

/// Median filter with a window that shrinks symmetrically near the ends
/// (so it always covers an odd number of samples).
std::vector<double> MedianFilter(const std::vector<double> &x, int32 window);

/// For each window in order, applies MedianFilter repeatedly until the
/// sequence stops changing (a root of that filter).
std::vector<double> MedianFilterIterative(const std::vector<double> &x,
                                          const std::vector<int32> &windows);

/// Frame runs [begin, end) of one class.
typedef std::vector<std::pair<int32, int32>> FrameRuns;

/// Maximal runs of values > low that contain at least one value > high.
FrameRuns HysteresisRuns(const std::vector<double> &x, double high, double low);

/// Converts probabilities to events: clip gate, smoothing, hysteresis
/// runs, removal of short runs, then merging of close runs.
EventList Decode(const ClipPrediction &clip, const FramePrediction &frames,
                 const std::vector<std::string> &label_set,
                 const DecodeConfig &cfg);

/// Element-wise mean of several systems' outputs for the same clip.
std::pair<ClipPrediction, FramePrediction> EnsembleAverage(
    const std::vector<std::pair<ClipPrediction, FramePrediction>> &systems);

/// filename TAB onset TAB offset TAB label with 3-decimal times, one row per
/// event, no header.
void WritePredictionTsv(
    const std::string &path,
    const std::vector<std::pair<std::string, EventList>> &predictions);

}  // namespace sed

#endif  // SED_POSTPROC_POSTPROC_H_
