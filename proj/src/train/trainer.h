// src/train/trainer.h

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

#ifndef SED_TRAIN_TRAINER_H_
#define SED_TRAIN_TRAINER_H_

#include <string>
#include <vector>

#include "models/models.h"
#include "nn/adam.h"
#include "train/losses.h"
#include "train/schedule.h"

namespace sed {

enum class TrainMode { kPs1, kPs2 };
std::string TrainModeName(TrainMode m);
TrainMode ParseTrainMode(const std::string &s);

struct TrainConfig {
  double lambda = 0.9;
  bool confident_absence = false;
  double lr_max = 0.0012;
  double lr_min = 1e-6;
  /// Initial cycle length in steps; 0 means t_i_epochs times the number of
  /// steps in the first epoch.
  int64 t_i_initial = 0;
  int32 t_i_epochs = 1;
  int32 t_mult = 2;
  int32 transfer_epochs = 5;
  TrainMode mode = TrainMode::kPs2;
  int32 epochs = 8;
  int32 batch_size = 4;
  uint64_t seed = 0;
  /// Compute the labeled-batch consistency term during the transfer phase.
  bool consistency_in_transfer = true;

  void Check() const;
  GateConfig Gate() const { return {lambda, confident_absence}; }
};

enum class ExampleKind { kSyntheticStrong, kWeakApprox, kUnlabeled };

/// One training clip.  frame_labels (T x K) and clip_labels (K) are empty
/// for unlabeled clips.
struct TrainExample {
  std::string clip_id;
  ExampleKind kind = ExampleKind::kUnlabeled;
  Matrix features;
  Matrix frame_labels;
  std::vector<double> clip_labels;
};

struct TrainData {
  std::vector<TrainExample> strong;
  std::vector<TrainExample> weak;
  std::vector<TrainExample> unlabeled;
};

/// A batch is a list of pointers into TrainData.
typedef std::vector<const TrainExample *> Batch;

struct LossRecord {
  int64 step = 0;
  int32 epoch = 0;
  double lr = 0.0;
  double w = 0.0;
  double l_f = 0.0;
  double l_c = 0.0;
  double l_con = 0.0;
  double l_unlabel = 0.0;
  bool restart = false;

  double SmLoss() const { return l_f + l_con + l_unlabel; }
};

struct TrainState {
  SedSystem system;
  nn::Adam sm_opt;
  nn::Adam dm_opt;
  RestartSchedule schedule;
  int32 epoch = 0;
  int64 step = 0;
  std::vector<LossRecord> history;
};

/// Forward and backward pass for one step without touching the optimizers.
/// Parameter gradients are zeroed first, then hold d(l_f + l_con +
/// l_unlabel)/d(SM) and d(l_c)/d(DM).  l_con is skipped unless
/// with_consistency; l_unlabel needs a nonempty unlabeled batch.
/// seed fixes the dropout masks.
LossRecord ComputeGradients(SedSystem *system, const Batch &labeled,
                            const Batch &unlabeled, const GateConfig &gate,
                            double w, bool with_consistency, uint64_t seed);

/// ComputeGradients, a finiteness check, one Adam update of each model at
/// lr_at(t_curr, t_i), then one schedule tick.
LossRecord TrainStep(TrainState *state, const TrainConfig &cfg,
                     const Batch &labeled, const Batch &unlabeled,
                     bool with_consistency);

/// Full training run.  Epochs 1..transfer_epochs use the synthetic strong
/// set only; later epochs use weak + unlabeled (PS1) or strong + weak +
/// unlabeled (PS2).  If out_dir is nonempty, writes train_log.tsv,
/// epoch_NNN.sys after every epoch and final.sys.
SedSystem Fit(const TrainConfig &cfg, const ModelConfig &model,
              const std::vector<std::string> &label_set, const TrainData &data,
              const std::string &out_dir, std::vector<LossRecord> *history);

std::string LossRecordHeader();
std::string FormatLossRecord(const LossRecord &r);

}  // namespace sed

#endif  // SED_TRAIN_TRAINER_H_
