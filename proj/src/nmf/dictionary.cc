// src/nmf/dictionary.cc

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

#include "nmf/dictionary.h"

#include <algorithm>
#include <filesystem>
#include <optional>

#include "base/text-utils.h"

namespace sed {

namespace fs = std::filesystem;

TemplateMode ParseTemplateMode(const std::string &name) {
  if (name == "per_event") return TemplateMode::kPerEvent;
  if (name == "class_average") return TemplateMode::kClassAverage;
  Fail("unknown template mode '", name,
       "' (expected per_event or class_average)");
}

std::string TemplateModeName(TemplateMode mode) {
  return mode == TemplateMode::kPerEvent ? "per_event" : "class_average";
}

bool Dictionary::HasClass(const std::string &label) const {
  auto it = entries_.find(label);
  return it != entries_.end() && !it->second.empty();
}

const std::vector<Template> &Dictionary::Templates(
    const std::string &label) const {
  auto it = entries_.find(label);
  if (it == entries_.end() || it->second.empty())
    Fail("dictionary has no templates for class '", label, "'");
  return it->second;
}

size_t Dictionary::NumTemplates() const {
  size_t n = 0;
  for (const auto &kv : entries_) n += kv.second.size();
  return n;
}

namespace {

void CheckLabelIsFileSafe(const std::string &label) {
  if (label.empty() || label == "." || label == ".." ||
      label.find_first_of("/\\\t\n") != std::string::npos)
    Fail("class label '", label, "' cannot be used as a file name");
}

void ScaleToUnitMax(std::vector<double> *v) {
  double peak = 0.0;
  for (double x : *v) peak = std::max(peak, x);
  if (peak <= 0.0) Fail("template is all zero");
  for (double &x : *v) x /= peak;
}

}  // namespace

void Dictionary::WriteDir(const std::string &dir) const {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) Fail("cannot create directory ", dir, ": ", ec.message());
  for (const auto &[label, templates] : entries_) {
    CheckLabelIsFileSafe(label);
    std::string text;
    for (const Template &t : templates) {
      text += t.source_clip;
      text += '\t';
      for (size_t i = 0; i < t.spectrum.size(); i++) {
        if (i > 0) text += ' ';
        text += FormatDouble(t.spectrum[i]);
      }
      text += '\n';
    }
    WriteTextFile((fs::path(dir) / (label + ".tsv")).string(), text);
  }
}

Dictionary Dictionary::ReadDir(const std::string &dir) {
  if (!fs::is_directory(dir)) Fail("dictionary directory not found: ", dir);
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".tsv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  Dictionary dict;
  for (const fs::path &p : files) {
    const std::string label = p.stem().string();
    std::vector<std::string> lines = ReadLines(p.string());
    for (size_t i = 0; i < lines.size(); i++) {
      if (lines[i].empty()) continue;
      std::vector<std::string> cols = SplitString(lines[i], '\t');
      if (cols.size() != 2) Fail(p.string(), ":", i + 1, ": expected 2 columns");
      Template t;
      t.label = label;
      t.source_clip = cols[0];
      for (const std::string &tok : SplitWhitespace(cols[1])) {
        double x;
        if (!ParseDouble(tok, &x) || !(x >= 0.0))
          Fail(p.string(), ":", i + 1, ": bad template value '", tok, "'");
        t.spectrum.push_back(x);
      }
      if (t.spectrum.empty()) Fail(p.string(), ":", i + 1, ": empty template");
      dict.Add(std::move(t));
    }
  }
  return dict;
}

Dictionary Dictionary::ClassAverage() const {
  Dictionary out;
  for (const auto &[label, templates] : entries_) {
    if (templates.empty()) continue;
    Template avg;
    avg.label = label;
    avg.source_clip = "class_average";
    avg.spectrum.assign(templates[0].spectrum.size(), 0.0);
    for (const Template &t : templates) {
      SED_ASSERT(t.spectrum.size() == avg.spectrum.size());
      for (size_t i = 0; i < t.spectrum.size(); i++)
        avg.spectrum[i] += t.spectrum[i] / templates.size();
    }
    ScaleToUnitMax(&avg.spectrum);
    out.Add(std::move(avg));
  }
  return out;
}

Template ExtractTemplate(const Matrix &frames,
                         const std::vector<int32> &active_frames, int32 iters,
                         uint64_t seed, NmfCost cost) {
  if (active_frames.empty()) Fail("ExtractTemplate: no active frames");
  Matrix masked(frames.NumRows(), frames.NumCols());
  for (int32 t : active_frames) {
    if (t < 0 || t >= frames.NumRows())
      Fail("ExtractTemplate: frame ", t, " out of range");
    std::copy_n(frames.Row(t), frames.NumCols(), masked.Row(t));
  }
  NmfFactors nmf = FactorizeFrames(masked, 1, iters, seed, cost);
  Template out;
  out.spectrum.assign(nmf.w.Data(), nmf.w.Data() + nmf.w.NumRows());
  ScaleToUnitMax(&out.spectrum);
  return out;
}

Dictionary BuildDictionary(const std::vector<StrongClip> &clips,
                           const std::vector<std::string> &label_set,
                           double frame_seconds, const NmfConfig &cfg,
                           uint64_t seed) {
  struct Instance {
    size_t clip;
    size_t event;
  };
  std::vector<Instance> instances;
  for (size_t c = 0; c < clips.size(); c++)
    for (size_t e = 0; e < clips[c].events.size(); e++) {
      const Event &ev = clips[c].events[e];
      auto [b, end] = EventFrameRange(ev, frame_seconds, clips[c].mel.NumRows());
      if (b >= end)
        Fail("event ", ev.label, " [", ev.onset, ", ", ev.offset, ") in ",
             clips[c].clip_id, " covers no frames");
      instances.push_back({c, e});
    }

  std::vector<std::optional<Template>> results(instances.size());
  const int64 n = static_cast<int64>(instances.size());
#pragma omp parallel for schedule(dynamic)
  for (int64 i = 0; i < n; i++) {
    const StrongClip &clip = clips[instances[i].clip];
    const Event &ev = clip.events[instances[i].event];
    auto [b, end] = EventFrameRange(ev, frame_seconds, clip.mel.NumRows());
    std::vector<int32> active;
    for (int32 t = b; t < end; t++) active.push_back(t);
    try {
      Template t = ExtractTemplate(clip.mel, active, cfg.iters,
                                   MixSeed(seed, static_cast<uint64_t>(i)),
                                   cfg.cost);
      t.label = ev.label;
      t.source_clip = clip.clip_id;
      results[i] = std::move(t);
    } catch (const SedError &) {
      // Silent (all-zero) instances contribute nothing.
    }
  }

  Dictionary dict;
  for (auto &r : results)
    if (r) dict.Add(std::move(*r));

  std::vector<std::string> missing;
  for (const std::string &label : label_set)
    if (!dict.HasClass(label)) missing.push_back(label);
  if (!missing.empty()) {
    std::string list;
    for (const std::string &m : missing) list += (list.empty() ? "" : ", ") + m;
    Fail("no usable templates for class(es): ", list);
  }
  if (cfg.template_mode == TemplateMode::kClassAverage)
    return dict.ClassAverage();
  return dict;
}

std::vector<double> DecodeActivations(const Matrix &frames,
                                      const std::vector<Template> &templates,
                                      int32 iters, uint64_t seed,
                                      NmfCost cost) {
  if (templates.empty()) Fail("DecodeActivations: no templates");
  std::vector<std::vector<double>> basis;
  basis.reserve(templates.size());
  for (const Template &t : templates) basis.push_back(t.spectrum);
  return NormalizedActivation(FitActivations(frames, basis, iters, seed, cost));
}

}  // namespace sed
