// src/labeler/labeler.cc

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

#include "labeler/labeler.h"

#include <algorithm>
#include <filesystem>

#include "base/text-utils.h"

namespace sed {

int32 LabelIndex(const std::vector<std::string> &label_set,
                 const std::string &label) {
  auto it = std::find(label_set.begin(), label_set.end(), label);
  if (it == label_set.end()) Fail("label '", label, "' is not in the label set");
  return static_cast<int32>(it - label_set.begin());
}

FrameLabelMatrix ApproximateStrongLabels(
    const std::string &clip_id, const Matrix &frames,
    const WeakAnnotation &weak, const Dictionary &dict,
    const std::vector<std::string> &label_set, double theta,
    const NmfConfig &cfg, uint64_t seed) {
  if (!(theta >= 0.0 && theta <= 1.0))
    Fail("labeler: theta must be in [0, 1], got ", theta);
  if (weak.tags.empty()) Fail("labeler: clip '", clip_id, "' has no tags");
  for (const std::string &tag : weak.tags) {
    LabelIndex(label_set, tag);
    if (!dict.HasClass(tag))
      Fail("labeler: no dictionary templates for class '", tag, "'");
  }
  FrameLabelMatrix out;
  out.clip_id = clip_id;
  out.values = Matrix(frames.NumRows(), static_cast<int32>(label_set.size()));
  for (const std::string &tag : weak.tags) {
    const int32 k = LabelIndex(label_set, tag);
    std::vector<double> act =
        DecodeActivations(frames, dict.Templates(tag), cfg.decode_iters,
                          MixSeed(seed, static_cast<uint64_t>(k)),
                          cfg.decode_cost);
    for (int32 t = 0; t < frames.NumRows(); t++)
      out.values(t, k) = act[t] >= theta ? 1.0 : 0.0;
  }
  return out;
}

FrameLabelMatrix StrongLabelMatrix(const std::string &clip_id,
                                   const EventList &events,
                                   const std::vector<std::string> &label_set,
                                   int32 num_frames, double frame_seconds) {
  FrameLabelMatrix out;
  out.clip_id = clip_id;
  out.values = Matrix(num_frames, static_cast<int32>(label_set.size()));
  for (const Event &e : events) {
    const int32 k = LabelIndex(label_set, e.label);
    auto [begin, end] = EventFrameRange(e, frame_seconds, num_frames);
    for (int32 t = begin; t < end; t++) out.values(t, k) = 1.0;
  }
  return out;
}

void WriteLabelTsv(const std::string &path, const FrameLabelMatrix &labels,
                   const std::vector<std::string> &label_set) {
  if (labels.values.NumCols() != static_cast<int32>(label_set.size()))
    Fail("label matrix for '", labels.clip_id, "' has ",
         labels.values.NumCols(), " columns, label set has ",
         label_set.size());
  std::string text = "frame_index";
  for (const std::string &l : label_set) text += "\t" + l;
  text += "\n";
  for (int32 t = 0; t < labels.values.NumRows(); t++) {
    text += std::to_string(t);
    for (int32 k = 0; k < labels.values.NumCols(); k++)
      text += labels.values(t, k) != 0.0 ? "\t1" : "\t0";
    text += "\n";
  }
  WriteTextFile(path, text);
}

FrameLabelMatrix ReadLabelTsv(const std::string &path,
                              const std::vector<std::string> &label_set) {
  std::vector<std::string> lines = ReadLines(path);
  if (lines.empty()) Fail(path, ": empty label file");
  std::vector<std::string> header = SplitString(lines[0], '\t');
  std::vector<std::string> expected = {"frame_index"};
  expected.insert(expected.end(), label_set.begin(), label_set.end());
  if (header != expected)
    Fail(path, ": header does not match the label set");
  FrameLabelMatrix out;
  const int32 k = static_cast<int32>(label_set.size());
  out.values = Matrix(static_cast<int32>(lines.size()) - 1, k);
  for (size_t i = 1; i < lines.size(); i++) {
    std::vector<std::string> f = SplitString(lines[i], '\t');
    int64 idx;
    if (f.size() != static_cast<size_t>(k) + 1 || !ParseInt(f[0], &idx) ||
        idx != static_cast<int64>(i) - 1)
      Fail(path, ":", i + 1, ": malformed label row");
    for (int32 c = 0; c < k; c++) {
      if (f[c + 1] != "0" && f[c + 1] != "1")
        Fail(path, ":", i + 1, ": labels must be 0 or 1");
      out.values(static_cast<int32>(i) - 1, c) = f[c + 1] == "1" ? 1.0 : 0.0;
    }
  }
  return out;
}

void WriteLabelManifest(const std::string &path, const LabelManifest &m) {
  std::string text;
  for (const auto &[clip, file] : m) text += clip + "\t" + file + "\n";
  WriteTextFile(path, text);
}

LabelManifest ReadLabelManifest(const std::string &path) {
  LabelManifest m;
  std::vector<std::string> lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); i++) {
    if (Trim(lines[i]).empty()) continue;
    std::vector<std::string> f = SplitString(lines[i], '\t');
    if (f.size() != 2) Fail(path, ":", i + 1, ": expected clip_id<TAB>path");
    std::filesystem::path file(f[1]);
    if (file.is_relative())
      file = std::filesystem::path(path).parent_path() / file;
    m.emplace_back(f[0], file.string());
  }
  return m;
}

}  // namespace sed
