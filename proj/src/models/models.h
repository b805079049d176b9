// src/models/models.h

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

#ifndef SED_MODELS_MODELS_H_
#define SED_MODELS_MODELS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "base/sed-common.h"
#include "nn/nnet.h"

namespace sed {

struct ModelConfig {
  int32 num_classes = 10;
  int32 n_mels = 64;
  std::vector<int32> sm_channels = {32, 64, 64};
  double sm_dropout = 0.35;
  std::vector<int32> dm_channels = {16, 32, 64, 64, 64};
  double dm_dropout = 0.25;
  /// Global pooling of the deep model's last feature map: "avg" or "max".
  std::string dm_global_pool = "avg";
  /// Inserts a batch_norm after every convolution.
  bool batch_norm = false;

  void Check() const;
};

/// Per-frame class probabilities, frames x classes.
struct FramePrediction {
  std::string clip_id;
  Matrix probs;
};

/// Clip-level class probabilities.
struct ClipPrediction {
  std::string clip_id;
  std::vector<double> probs;
};

/// Shallow model: blocks of 3x3 conv, context gating, 1x4 max pooling on
/// the mel axis and dropout; then a per-frame dense sigmoid head.  Maps
/// (N, 1, T, n_mels) to (N, K, T, 1) for any T.  n_mels must equal
/// 4^blocks so the mel axis is fully collapsed.
nn::Nnet BuildSm(const ModelConfig &cfg);

/// Deep model: blocks of 3x3 conv, relu and 2x2 max pooling; one dropout;
/// global pooling over time and mel; dense sigmoid head.  Maps (N, 1, T, n_mels) to
/// (N, K, 1, 1); T and n_mels must be divisible by 2^blocks.
nn::Nnet BuildDm(const ModelConfig &cfg);

/// Column-wise max over frames.
ClipPrediction ClipFromFrames(const FramePrediction &f);

/// Global feature standardization estimated on the training features.
struct InputNorm {
  double mean = 0.0;
  double stddev = 1.0;

  static InputNorm Estimate(const std::vector<const Matrix *> &features);
};

/// Stacks time x mel feature matrices into an (N, 1, T, M) tensor,
/// standardized with norm.  All matrices must share one shape.
nn::Tensor MakeInputBatch(const std::vector<const Matrix *> &features,
                          const InputNorm &norm);

/// Row n of an (N, K, T, 1) SM output as a T x K matrix.
Matrix FramesFromOutput(const nn::Tensor &out, int32 n);
/// Row n of an (N, K, 1, 1) DM output.
std::vector<double> ClipFromOutput(const nn::Tensor &out, int32 n);

/// The trained SM/DM pair with everything needed to run inference.
struct SedSystem {
  std::vector<std::string> label_set;
  InputNorm norm;
  nn::Nnet sm;
  nn::Nnet dm;

  /// Inference-mode predictions for a batch of log-mel matrices.
  void Predict(const std::vector<std::string> &clip_ids,
               const std::vector<const Matrix *> &features,
               std::vector<ClipPrediction> *clip,
               std::vector<FramePrediction> *frames);

  /// Binary file: magic, version, labels, normalization, then the two
  /// networks in the nn checkpoint format.
  void Write(std::ostream &os) const;
  static SedSystem Read(std::istream &is);
  void WriteFile(const std::string &path) const;
  static SedSystem ReadFile(const std::string &path);
};

}  // namespace sed

#endif  // SED_MODELS_MODELS_H_
