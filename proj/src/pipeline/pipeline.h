// src/pipeline/pipeline.h

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

#ifndef SED_PIPELINE_PIPELINE_H_
#define SED_PIPELINE_PIPELINE_H_

#include <string>
#include <vector>

#include "labeler/labeler.h"
#include "pipeline/config.h"

namespace sed {

/// Applies cfg.threads to the OpenMP runtime.
void ApplyThreads(const PipelineConfig &cfg);

/// Writes the resolved configuration to dir/config.txt.
void WriteResolvedConfig(const PipelineConfig &cfg, const std::string &dir);

/// Features of many files, extracted in parallel; order follows paths.
std::vector<MelFeatures> ExtractAll(const std::vector<std::string> &paths,
                                    const FeatureConfig &cfg);

/// Generates a corpus under out_dir.
CorpusManifest RunGen(const PipelineConfig &cfg, const std::string &out_dir);

/// Builds the class dictionary from the corpus's strong split and writes it
/// to out_dir.  Every class of the corpus label set needs a strong example.
Dictionary RunDict(const PipelineConfig &cfg, const std::string &corpus_dir,
                   const std::string &out_dir);

/// Approximates frame labels for every weak clip; writes one label TSV per
/// clip plus out_dir/labels.tsv (clip TAB path).
LabelManifest RunLabel(const PipelineConfig &cfg,
                       const std::string &corpus_dir,
                       const std::string &dict_dir,
                       const std::string &out_dir);

/// Assembles the three training sets.  Strong clips get frame labels from
/// their annotations, weak clips from labels_dir/labels.tsv.
TrainData LoadTrainData(const PipelineConfig &cfg, const CorpusManifest &m,
                        const std::string &labels_dir);

/// Trains SM and DM; checkpoints and the log go to out_dir.
SedSystem RunTrain(const PipelineConfig &cfg, const std::string &corpus_dir,
                   const std::string &labels_dir, const std::string &out_dir,
                   std::vector<LossRecord> *history = nullptr);

/// Predicts events for the listed clips with one system or an ensemble of
/// several (posteriors averaged before decoding) and writes them to out_tsv
/// if it is nonempty.
std::vector<StrongEntry> RunPredict(const PipelineConfig &cfg,
                                    const std::vector<std::string> &systems,
                                    const std::string &audio_dir,
                                    const std::vector<std::string> &clips,
                                    const std::string &out_tsv);
std::vector<StrongEntry> RunPredict(const PipelineConfig &cfg,
                                    std::vector<SedSystem> *systems,
                                    const std::string &audio_dir,
                                    const std::vector<std::string> &clips,
                                    const std::string &out_tsv);

/// Scores est_tsv against ref_tsv; label_set adds classes to the report.
ScoreReport RunEval(const PipelineConfig &cfg, const std::string &ref_tsv,
                    const std::string &est_tsv,
                    const std::vector<std::string> &label_set = {});

}  // namespace sed

#endif  // SED_PIPELINE_PIPELINE_H_
