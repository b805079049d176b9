// src/pipeline/config.h

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

#ifndef SED_PIPELINE_CONFIG_H_
#define SED_PIPELINE_CONFIG_H_

#include <string>
#include <vector>

#include "data/generator.h"
#include "dsp/feature-logmel.h"
#include "eval/eval.h"
#include "nmf/dictionary.h"
#include "postproc/postproc.h"
#include "train/trainer.h"

namespace sed {

/// Every tunable of the pipeline.  Keys are "section.name" (or bare
/// "seed" / "threads"); see Keys() for the full list.
struct PipelineConfig {
  uint64_t seed = 0;
  int32 threads = 0;  // 0: all cores
  FeatureConfig feature;
  NmfConfig nmf;
  double theta = 0.3;
  ModelConfig model;
  TrainConfig train;
  DecodeConfig decode;
  EvalConfig eval;
  GenSpec gen;

  /// Sets one key from its text value; unknown keys and bad values throw.
  void Set(const std::string &key, const std::string &value);
  std::string Get(const std::string &key) const;
  static std::vector<std::string> Keys();

  /// Applies a key=value file; errors cite path and line.
  void ReadFile(const std::string &path);
  /// All keys with their resolved values, one "key=value" per line.
  std::string Dump() const;

  /// Pushes the shared settings (seed, frame timing) into the sections and
  /// validates every section; throws on the first bad value.
  void Resolve();
};

}  // namespace sed

#endif  // SED_PIPELINE_CONFIG_H_
