// src/pipeline/pipeline.cc

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

#include "pipeline/pipeline.h"

#include <filesystem>
#include <map>
#include <set>

#include "base/text-utils.h"
#include "kernels/kernels.h"

namespace sed {

namespace fs = std::filesystem;

namespace {

void MakeDir(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) Fail("cannot create directory '", dir, "': ", ec.message());
}

std::vector<double> TagVector(const std::vector<std::string> &tags,
                              const std::vector<std::string> &label_set) {
  std::vector<double> v(label_set.size(), 0.0);
  for (const std::string &t : tags) v[LabelIndex(label_set, t)] = 1.0;
  return v;
}

std::vector<std::string> EventTags(const EventList &events) {
  std::set<std::string> s;
  for (const Event &e : events) s.insert(e.label);
  return {s.begin(), s.end()};
}

}  // namespace

void ApplyThreads(const PipelineConfig &cfg) {
  if (cfg.threads < 0) Fail("threads must be >= 0");
  kernels::SetNumThreads(cfg.threads);
}

void WriteResolvedConfig(const PipelineConfig &cfg, const std::string &dir) {
  MakeDir(dir);
  WriteTextFile((fs::path(dir) / "config.txt").string(), cfg.Dump());
}

std::vector<MelFeatures> ExtractAll(const std::vector<std::string> &paths,
                                    const FeatureConfig &cfg) {
  std::vector<MelFeatures> out(paths.size());
  std::string error;
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < paths.size(); i++) {
    try {
      out[i] = ExtractFeatures(paths[i], cfg);
    } catch (const std::exception &e) {
#pragma omp critical
      if (error.empty()) error = e.what();
    }
  }
  if (!error.empty()) Fail(error);
  return out;
}

CorpusManifest RunGen(const PipelineConfig &cfg, const std::string &out_dir) {
  CorpusManifest m = GenerateCorpus(cfg.gen, out_dir);
  WriteResolvedConfig(cfg, out_dir);
  return m;
}

Dictionary RunDict(const PipelineConfig &cfg, const std::string &corpus_dir,
                   const std::string &out_dir) {
  const CorpusManifest m = LoadManifest(corpus_dir);
  std::vector<std::string> paths;
  for (const StrongEntry &s : m.strong) paths.push_back(m.AudioPath(s.filename));
  std::vector<MelFeatures> feats = ExtractAll(paths, cfg.feature);
  std::vector<StrongClip> clips;
  for (size_t i = 0; i < m.strong.size(); i++)
    clips.push_back({m.strong[i].filename, std::move(feats[i].mel),
                     m.strong[i].events});
  Dictionary dict = BuildDictionary(clips, m.label_set,
                                    cfg.feature.FrameSeconds(), cfg.nmf,
                                    MixSeed(cfg.seed, 11));
  MakeDir(out_dir);
  dict.WriteDir(out_dir);
  WriteResolvedConfig(cfg, out_dir);
  return dict;
}

LabelManifest RunLabel(const PipelineConfig &cfg,
                       const std::string &corpus_dir,
                       const std::string &dict_dir,
                       const std::string &out_dir) {
  const CorpusManifest m = LoadManifest(corpus_dir);
  const Dictionary dict = Dictionary::ReadDir(dict_dir);
  MakeDir(out_dir);
  const size_t n = m.weak.size();
  LabelManifest manifest(n), relative(n);
  std::string error;
  const uint64_t base = MixSeed(cfg.seed, 12);
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < n; i++) {
    try {
      const WeakEntry &w = m.weak[i];
      MelFeatures f = ExtractFeatures(m.AudioPath(w.filename), cfg.feature);
      FrameLabelMatrix labels = ApproximateStrongLabels(
          w.filename, f.mel, {w.filename, w.tags}, dict, m.label_set,
          cfg.theta, cfg.nmf, MixSeed(base, i));
      const std::string name = fs::path(w.filename).stem().string() + ".tsv";
      const std::string path = (fs::path(out_dir) / name).string();
      WriteLabelTsv(path, labels, m.label_set);
      manifest[i] = {w.filename, path};
      relative[i] = {w.filename, name};
    } catch (const std::exception &e) {
#pragma omp critical
      if (error.empty()) error = e.what();
    }
  }
  if (!error.empty()) Fail(error);
  WriteLabelManifest((fs::path(out_dir) / "labels.tsv").string(), relative);
  WriteResolvedConfig(cfg, out_dir);
  return manifest;
}

TrainData LoadTrainData(const PipelineConfig &cfg, const CorpusManifest &m,
                        const std::string &labels_dir) {
  const std::vector<std::string> &labels = m.label_set;
  TrainData d;
  const int32 t = cfg.feature.NumFrames();

  std::vector<std::string> paths;
  for (const StrongEntry &s : m.strong) paths.push_back(m.AudioPath(s.filename));
  std::vector<MelFeatures> feats = ExtractAll(paths, cfg.feature);
  for (size_t i = 0; i < m.strong.size(); i++) {
    const StrongEntry &s = m.strong[i];
    TrainExample e;
    e.clip_id = s.filename;
    e.kind = ExampleKind::kSyntheticStrong;
    e.features = std::move(feats[i].logmel);
    e.frame_labels = StrongLabelMatrix(s.filename, s.events, labels, t,
                                       cfg.feature.FrameSeconds())
                         .values;
    e.clip_labels = TagVector(EventTags(s.events), labels);
    d.strong.push_back(std::move(e));
  }

  if (!m.weak.empty()) {
    std::map<std::string, std::string> label_file;
    for (const auto &[clip, path] :
         ReadLabelManifest((fs::path(labels_dir) / "labels.tsv").string()))
      label_file[clip] = path;
    paths.clear();
    for (const WeakEntry &w : m.weak) paths.push_back(m.AudioPath(w.filename));
    feats = ExtractAll(paths, cfg.feature);
    for (size_t i = 0; i < m.weak.size(); i++) {
      const WeakEntry &w = m.weak[i];
      auto it = label_file.find(w.filename);
      if (it == label_file.end())
        Fail("no approximated labels for weak clip '", w.filename, "' in '",
             labels_dir, "'");
      TrainExample e;
      e.clip_id = w.filename;
      e.kind = ExampleKind::kWeakApprox;
      e.features = std::move(feats[i].logmel);
      e.frame_labels = ReadLabelTsv(it->second, labels).values;
      e.clip_labels = TagVector(w.tags, labels);
      d.weak.push_back(std::move(e));
    }
  }

  paths.clear();
  for (const std::string &u : m.unlabeled) paths.push_back(m.AudioPath(u));
  feats = ExtractAll(paths, cfg.feature);
  for (size_t i = 0; i < m.unlabeled.size(); i++) {
    TrainExample e;
    e.clip_id = m.unlabeled[i];
    e.kind = ExampleKind::kUnlabeled;
    e.features = std::move(feats[i].logmel);
    d.unlabeled.push_back(std::move(e));
  }
  return d;
}

SedSystem RunTrain(const PipelineConfig &cfg, const std::string &corpus_dir,
                   const std::string &labels_dir, const std::string &out_dir,
                   std::vector<LossRecord> *history) {
  const CorpusManifest m = LoadManifest(corpus_dir);
  if (m.label_set.empty()) Fail("train: the corpus has no labels");
  TrainData data = LoadTrainData(cfg, m, labels_dir);
  ModelConfig model = cfg.model;
  model.num_classes = static_cast<int32>(m.label_set.size());
  WriteResolvedConfig(cfg, out_dir);
  return Fit(cfg.train, model, m.label_set, data, out_dir, history);
}

std::vector<StrongEntry> RunPredict(const PipelineConfig &cfg,
                                    const std::vector<std::string> &systems,
                                    const std::string &audio_dir,
                                    const std::vector<std::string> &clips,
                                    const std::string &out_tsv) {
  if (systems.empty()) Fail("predict: no system checkpoints given");
  std::vector<SedSystem> loaded;
  for (const std::string &p : systems) loaded.push_back(SedSystem::ReadFile(p));
  return RunPredict(cfg, &loaded, audio_dir, clips, out_tsv);
}

std::vector<StrongEntry> RunPredict(const PipelineConfig &cfg,
                                    std::vector<SedSystem> *systems,
                                    const std::string &audio_dir,
                                    const std::vector<std::string> &clips,
                                    const std::string &out_tsv) {
  if (systems->empty()) Fail("predict: no systems given");
  const std::vector<std::string> &labels = (*systems)[0].label_set;
  for (size_t s = 1; s < systems->size(); s++)
    if ((*systems)[s].label_set != labels)
      Fail("predict: system ", s, " has a different label set");
  cfg.decode.Check(static_cast<int32>(labels.size()));

  std::vector<StrongEntry> out;
  const size_t kBatch = 8;
  for (size_t b = 0; b < clips.size(); b += kBatch) {
    std::vector<std::string> ids(clips.begin() + b,
                                 clips.begin() + std::min(clips.size(), b + kBatch));
    std::vector<std::string> paths;
    for (const std::string &c : ids)
      paths.push_back((fs::path(audio_dir) / c).string());
    std::vector<MelFeatures> feats = ExtractAll(paths, cfg.feature);
    std::vector<const Matrix *> x;
    for (const MelFeatures &f : feats) x.push_back(&f.logmel);
    std::vector<std::vector<std::pair<ClipPrediction, FramePrediction>>> per_clip(
        ids.size());
    for (SedSystem &sys : *systems) {
      std::vector<ClipPrediction> c;
      std::vector<FramePrediction> f;
      sys.Predict(ids, x, &c, &f);
      for (size_t i = 0; i < ids.size(); i++) per_clip[i].push_back({c[i], f[i]});
    }
    for (size_t i = 0; i < ids.size(); i++) {
      auto [clip, frames] = EnsembleAverage(per_clip[i]);
      out.push_back({ids[i], Decode(clip, frames, labels, cfg.decode)});
    }
  }
  if (!out_tsv.empty()) {
    std::vector<std::pair<std::string, EventList>> rows;
    for (const StrongEntry &e : out) rows.push_back({e.filename, e.events});
    const fs::path parent = fs::path(out_tsv).parent_path();
    if (!parent.empty()) MakeDir(parent.string());
    WritePredictionTsv(out_tsv, rows);
  }
  return out;
}

ScoreReport RunEval(const PipelineConfig &cfg, const std::string &ref_tsv,
                    const std::string &est_tsv,
                    const std::vector<std::string> &label_set) {
  const std::vector<StrongEntry> ref = ReadStrongTsv(ref_tsv);
  const std::vector<StrongEntry> est = ReadStrongTsv(est_tsv);
  std::vector<WeakEntry> none;
  std::vector<std::string> labels = CollectLabels(ref, none);
  for (const std::string &l : label_set) labels.push_back(l);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return ScoreCorpus(ref, est, labels, cfg.eval);
}

}  // namespace sed
