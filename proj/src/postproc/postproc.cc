// src/postproc/postproc.cc

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

#include "postproc/postproc.h"

#include <algorithm>
#include <cmath>

#include "base/text-utils.h"

namespace sed {

void DecodeConfig::Check(int32 num_classes) const {
  if (frame_threshold.size() != 1 &&
      static_cast<int32>(frame_threshold.size()) != num_classes)
    Fail("decode: ", frame_threshold.size(), " frame thresholds for ",
         num_classes, " classes");
  if (median_windows.size() != 1 &&
      static_cast<int32>(median_windows.size()) != num_classes)
    Fail("decode: ", median_windows.size(), " median window sets for ",
         num_classes, " classes");
  for (double t : frame_threshold)
    if (!(low_threshold < t)) Fail("decode: low_threshold ", low_threshold,
                                   " must be below every frame threshold");
  for (const auto &ws : median_windows)
    for (int32 w : ws)
      if (w < 1 || w % 2 == 0)
        Fail("decode: median windows must be odd and >= 1, got ", w);
  if (!(frame_seconds > 0.0) || !(clip_seconds > 0.0))
    Fail("decode: frame and clip durations must be positive");
  if (min_duration < 0.0 || merge_gap < 0.0)
    Fail("decode: min_duration and merge_gap must be nonnegative");
}

double DecodeConfig::FrameThreshold(int32 k) const {
  return frame_threshold.size() == 1 ? frame_threshold[0] : frame_threshold[k];
}

const std::vector<int32> &DecodeConfig::Windows(int32 k) const {
  return median_windows.size() == 1 ? median_windows[0] : median_windows[k];
}

std::vector<double> MedianFilter(const std::vector<double> &x, int32 window) {
  if (window < 1 || window % 2 == 0)
    Fail("median filter: window must be odd and >= 1, got ", window);
  const int32 n = static_cast<int32>(x.size()), half = window / 2;
  std::vector<double> y(n), buf;
  for (int32 i = 0; i < n; i++) {
    const int32 h = std::min({half, i, n - 1 - i});
    buf.assign(x.begin() + (i - h), x.begin() + (i + h + 1));
    std::nth_element(buf.begin(), buf.begin() + h, buf.end());
    y[i] = buf[h];
  }
  return y;
}

std::vector<double> MedianFilterIterative(const std::vector<double> &x,
                                          const std::vector<int32> &windows) {
  std::vector<double> y = x;
  for (int32 w : windows) {
    // Median filters reach a root within n passes; the cap is a guard.
    for (size_t pass = 0; pass <= x.size(); pass++) {
      std::vector<double> next = MedianFilter(y, w);
      if (next == y) break;
      y.swap(next);
    }
  }
  return y;
}

FrameRuns HysteresisRuns(const std::vector<double> &x, double high,
                         double low) {
  FrameRuns runs;
  const int32 n = static_cast<int32>(x.size());
  for (int32 i = 0; i < n;) {
    if (!(x[i] > low)) {
      i++;
      continue;
    }
    int32 j = i;
    bool core = false;
    for (; j < n && x[j] > low; j++) core = core || x[j] > high;
    if (core) runs.push_back({i, j});
    i = j;
  }
  return runs;
}

EventList Decode(const ClipPrediction &clip, const FramePrediction &frames,
                 const std::vector<std::string> &label_set,
                 const DecodeConfig &cfg) {
  const int32 k = static_cast<int32>(label_set.size());
  cfg.Check(k);
  if (static_cast<int32>(clip.probs.size()) != k || frames.probs.NumCols() != k)
    Fail("decode: predictions for clip '", clip.clip_id, "' have ",
         clip.probs.size(), "/", frames.probs.NumCols(), " classes, expected ",
         k);
  EventList events;
  const int32 t = frames.probs.NumRows();
  for (int32 c = 0; c < k; c++) {
    if (!(clip.probs[c] > cfg.clip_threshold)) continue;
    std::vector<double> col(t);
    for (int32 i = 0; i < t; i++) col[i] = frames.probs(i, c);
    col = MedianFilterIterative(col, cfg.Windows(c));
    std::vector<std::pair<double, double>> spans;
    for (const auto &[b, e] :
         HysteresisRuns(col, cfg.FrameThreshold(c), cfg.low_threshold)) {
      const double on = b * cfg.frame_seconds;
      const double off = std::min(e * cfg.frame_seconds, cfg.clip_seconds);
      // Noise removal comes before merging.
      if (off - on >= cfg.min_duration) spans.push_back({on, off});
    }
    std::vector<std::pair<double, double>> merged;
    for (const auto &s : spans) {
      if (!merged.empty() && s.first - merged.back().second < cfg.merge_gap)
        merged.back().second = s.second;
      else
        merged.push_back(s);
    }
    for (const auto &[on, off] : merged) events.push_back({label_set[c], on, off});
  }
  std::sort(events.begin(), events.end(), [](const Event &a, const Event &b) {
    return a.onset != b.onset ? a.onset < b.onset : a.label < b.label;
  });
  return events;
}

namespace {

// Mean of the same element across systems; exact where all of them agree.
void AverageInto(const std::vector<const std::vector<double> *> &in,
                 std::vector<double> *out) {
  const double n = static_cast<double>(in.size());
  out->resize(in[0]->size());
  for (size_t i = 0; i < out->size(); i++) {
    const double first = (*in[0])[i];
    double sum = 0.0;
    bool agree = true;
    for (const std::vector<double> *v : in) {
      sum += (*v)[i];
      agree = agree && (*v)[i] == first;
    }
    (*out)[i] = agree ? first : sum / n;
  }
}

}  // namespace

std::pair<ClipPrediction, FramePrediction> EnsembleAverage(
    const std::vector<std::pair<ClipPrediction, FramePrediction>> &systems) {
  if (systems.empty()) Fail("ensemble: no systems given");
  ClipPrediction clip = systems[0].first;
  FramePrediction frames = systems[0].second;
  std::vector<const std::vector<double> *> clips, grids;
  for (size_t s = 0; s < systems.size(); s++) {
    const auto &[c, f] = systems[s];
    if (c.probs.size() != clip.probs.size() ||
        f.probs.NumRows() != frames.probs.NumRows() ||
        f.probs.NumCols() != frames.probs.NumCols())
      Fail("ensemble: system ", s, " output shape differs for clip '",
           clip.clip_id, "'");
    clips.push_back(&c.probs);
    grids.push_back(&f.probs.Values());
  }
  AverageInto(clips, &clip.probs);
  AverageInto(grids, &frames.probs.Values());
  return {clip, frames};
}

void WritePredictionTsv(
    const std::string &path,
    const std::vector<std::pair<std::string, EventList>> &predictions) {
  std::string text;
  for (const auto &[file, events] : predictions)
    for (const Event &e : events)
      text += file + "\t" + FormatFixed(e.onset, 3) + "\t" +
              FormatFixed(e.offset, 3) + "\t" + e.label + "\n";
  WriteTextFile(path, text);
}

}  // namespace sed
