// src/train/trainer.cc

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

#include "train/trainer.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "base/events.h"
#include "base/text-utils.h"
#include "nn/nn-loss.h"

namespace sed {

namespace {

// Clip probabilities as the max over time of an (N, K, T, 1) frame output;
// argmax holds the flat index of the winning frame for each (n, k).
std::vector<double> MaxOverTime(const nn::Tensor &frames,
                                std::vector<size_t> *argmax) {
  const int32 n = frames.Dim(0), k = frames.Dim(1), t = frames.Dim(2);
  std::vector<double> clip(static_cast<size_t>(n) * k);
  argmax->assign(clip.size(), 0);
  for (int32 i = 0; i < n; i++)
    for (int32 c = 0; c < k; c++) {
      const size_t base = (static_cast<size_t>(i) * k + c) * t;
      size_t best = base;
      for (int32 j = 1; j < t; j++)
        if (frames[base + j] > frames[best]) best = base + j;
      clip[i * k + c] = frames[best];
      (*argmax)[i * k + c] = best;
    }
  return clip;
}

nn::Tensor FrameTargets(const Batch &batch, int32 k, int32 t) {
  nn::Tensor y({static_cast<int32>(batch.size()), k, t, 1});
  for (size_t i = 0; i < batch.size(); i++) {
    const Matrix &m = batch[i]->frame_labels;
    if (m.NumRows() != t || m.NumCols() != k)
      Fail("clip '", batch[i]->clip_id, "': frame labels are ", m.NumRows(),
           "x", m.NumCols(), ", expected ", t, "x", k);
    for (int32 c = 0; c < k; c++)
      for (int32 j = 0; j < t; j++) y.At(i, c, j, 0) = m(j, c);
  }
  return y;
}

nn::Tensor ClipTargets(const Batch &batch, int32 k) {
  nn::Tensor y({static_cast<int32>(batch.size()), k, 1, 1});
  for (size_t i = 0; i < batch.size(); i++) {
    const std::vector<double> &v = batch[i]->clip_labels;
    if (static_cast<int32>(v.size()) != k)
      Fail("clip '", batch[i]->clip_id, "': ", v.size(),
           " clip labels, expected ", k);
    for (int32 c = 0; c < k; c++) y.At(i, c, 0, 0) = v[c];
  }
  return y;
}

std::vector<const Matrix *> Features(const Batch &batch) {
  std::vector<const Matrix *> f;
  for (const TrainExample *e : batch) f.push_back(&e->features);
  return f;
}

std::string BatchIds(const Batch &batch) {
  std::string s;
  for (const TrainExample *e : batch) s += (s.empty() ? "" : ",") + e->clip_id;
  return s.empty() ? "-" : s;
}

// Fisher-Yates with a fixed reduction so the order only depends on the seed.
void Shuffle(std::vector<const TrainExample *> *v, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (size_t i = v->size(); i > 1; i--) std::swap((*v)[i - 1], (*v)[rng() % i]);
}

}  // namespace

std::string TrainModeName(TrainMode m) {
  return m == TrainMode::kPs1 ? "ps1" : "ps2";
}

TrainMode ParseTrainMode(const std::string &s) {
  if (s == "ps1") return TrainMode::kPs1;
  if (s == "ps2") return TrainMode::kPs2;
  Fail("unknown training mode '", s, "' (expected ps1 or ps2)");
}

void TrainConfig::Check() const {
  if (!(lambda > 0.0 && lambda < 1.0 + 1e-15))
    Fail("train: lambda must lie in (0, 1], got ", lambda);
  if (!(lr_min >= 0.0 && lr_min < lr_max))
    Fail("train: need 0 <= lr_min < lr_max");
  if (t_i_initial < 0 || (t_i_initial == 0 && t_i_epochs < 1))
    Fail("train: the initial cycle length must be positive");
  if (t_mult < 1) Fail("train: t_mult must be >= 1");
  if (transfer_epochs < 0 || epochs < 0)
    Fail("train: epoch counts must be nonnegative");
  if (batch_size < 1) Fail("train: batch_size must be >= 1");
}

LossRecord ComputeGradients(SedSystem *system, const Batch &labeled,
                            const Batch &unlabeled, const GateConfig &gate,
                            double w, bool with_consistency, uint64_t seed) {
  if (labeled.empty()) Fail("train: empty labeled batch");
  nn::Nnet &sm = system->sm, &dm = system->dm;
  const int32 k = static_cast<int32>(system->label_set.size());
  sm.ZeroGrad();
  dm.ZeroGrad();
  LossRecord r;
  r.w = w;

  nn::Tensor x = MakeInputBatch(Features(labeled), system->norm);
  nn::Tensor dm_out, sm_out, g;
  dm.Propagate(x, &dm_out, true, MixSeed(seed, 1));
  r.l_c = nn::Bce(dm_out, ClipTargets(labeled, k), &g);
  dm.Backpropagate(g);

  sm.Propagate(x, &sm_out, true, MixSeed(seed, 0));
  r.l_f = nn::Bce(sm_out, FrameTargets(labeled, k, x.Dim(2)), &g);
  if (with_consistency) {
    std::vector<size_t> argmax;
    std::vector<double> sm_c = MaxOverTime(sm_out, &argmax), gc;
    r.l_con = ConsistencyLoss(sm_c, dm_out.Values(), gate, &gc);
    for (size_t i = 0; i < gc.size(); i++) g[argmax[i]] += gc[i];
  }
  sm.Backpropagate(g);

  if (!unlabeled.empty()) {
    nn::Tensor xu = MakeInputBatch(Features(unlabeled), system->norm);
    nn::Tensor du, su;
    dm.Propagate(xu, &du, true, MixSeed(seed, 2));
    bool any = false;
    for (double v : du.Values()) any = any || gate.Passes(v);
    // With nothing gated in the loss and its gradient are exactly zero.
    if (any) {
      sm.Propagate(xu, &su, true, MixSeed(seed, 3));
      std::vector<size_t> argmax;
      std::vector<double> sm_uc = MaxOverTime(su, &argmax), gu;
      r.l_unlabel = UnlabeledLoss(sm_uc, du.Values(), gate, w, &gu);
      nn::Tensor gsu(su.GetShape());
      for (size_t i = 0; i < gu.size(); i++) gsu[argmax[i]] += gu[i];
      sm.Backpropagate(gsu);
    }
  }
  return r;
}

LossRecord TrainStep(TrainState *state, const TrainConfig &cfg,
                     const Batch &labeled, const Batch &unlabeled,
                     bool with_consistency) {
  RestartSchedule &sched = state->schedule;
  const double lr = LrAt(sched.t_curr, sched.t_i, cfg.lr_max, cfg.lr_min);
  const double w = RampWeight(sched.t_curr, sched.t_i);
  const uint64_t seed = MixSeed(MixSeed(cfg.seed, 7), state->step);
  LossRecord r = ComputeGradients(&state->system, labeled, unlabeled,
                                  cfg.Gate(), w, with_consistency, seed);
  r.step = state->step;
  r.epoch = state->epoch;
  r.lr = lr;
  if (!std::isfinite(r.l_f) || !std::isfinite(r.l_c) ||
      !std::isfinite(r.l_con) || !std::isfinite(r.l_unlabel))
    Fail("non-finite loss at step ", r.step, " (epoch ", r.epoch,
         "): l_f=", r.l_f, " l_c=", r.l_c, " l_con=", r.l_con,
         " l_unlabel=", r.l_unlabel, "; labeled batch [", BatchIds(labeled),
         "], unlabeled batch [", BatchIds(unlabeled), "]");
  state->sm_opt.Step(state->system.sm.Params(), lr);
  state->dm_opt.Step(state->system.dm.Params(), lr);
  r.restart = sched.Advance();
  state->step++;
  state->history.push_back(r);
  return r;
}

std::string LossRecordHeader() {
  return "step\tepoch\tlr\tw\tl_f\tl_c\tl_con\tl_unlabel\trestart";
}

std::string FormatLossRecord(const LossRecord &r) {
  return std::to_string(r.step) + "\t" + std::to_string(r.epoch) + "\t" +
         FormatDouble(r.lr) + "\t" + FormatDouble(r.w) + "\t" +
         FormatDouble(r.l_f) + "\t" + FormatDouble(r.l_c) + "\t" +
         FormatDouble(r.l_con) + "\t" + FormatDouble(r.l_unlabel) + "\t" +
         (r.restart ? "1" : "0");
}

SedSystem Fit(const TrainConfig &cfg, const ModelConfig &model,
              const std::vector<std::string> &label_set, const TrainData &data,
              const std::string &out_dir, std::vector<LossRecord> *history) {
  cfg.Check();
  if (static_cast<int32>(label_set.size()) != model.num_classes)
    Fail("train: label set has ", label_set.size(),
         " classes but the model is configured for ", model.num_classes);
  const int32 transfer = std::min(cfg.transfer_epochs, cfg.epochs);
  if (transfer > 0 && data.strong.empty())
    Fail("train: the transfer phase needs synthetic strong clips, none given");
  if (cfg.epochs > transfer) {
    if (data.weak.empty())
      Fail("train: mode ", TrainModeName(cfg.mode),
           " needs weakly labeled clips after the transfer phase, none given");
    if (data.unlabeled.empty())
      Fail("train: mode ", TrainModeName(cfg.mode),
           " needs unlabeled clips after the transfer phase, none given");
  }

  TrainState state;
  SedSystem &sys = state.system;
  sys.label_set = label_set;
  std::vector<const Matrix *> all;
  for (const auto *set : {&data.strong, &data.weak, &data.unlabeled})
    for (const TrainExample &e : *set) all.push_back(&e.features);
  sys.norm = InputNorm::Estimate(all);
  sys.sm = BuildSm(model);
  sys.dm = BuildDm(model);
  sys.sm.InitParams(MixSeed(cfg.seed, 1));
  sys.dm.InitParams(MixSeed(cfg.seed, 2));

  std::ofstream log;
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    log.open(out_dir + "/train_log.tsv");
    if (!log) Fail("cannot write the training log in '", out_dir, "'");
    log << LossRecordHeader() << "\n";
  }

  for (int32 epoch = 1; epoch <= cfg.epochs; epoch++) {
    state.epoch = epoch;
    const bool in_transfer = epoch <= transfer;
    Batch pool;
    auto add = [&pool](const std::vector<TrainExample> &v) {
      for (const TrainExample &e : v) pool.push_back(&e);
    };
    if (in_transfer || cfg.mode == TrainMode::kPs2) add(data.strong);
    if (!in_transfer) add(data.weak);
    Shuffle(&pool, MixSeed(MixSeed(cfg.seed, 3), epoch));
    Batch unl;
    if (!in_transfer) {
      for (const TrainExample &e : data.unlabeled) unl.push_back(&e);
      Shuffle(&unl, MixSeed(MixSeed(cfg.seed, 4), epoch));
    }
    const size_t bs = cfg.batch_size;
    const size_t num_batches = (pool.size() + bs - 1) / bs;
    if (epoch == 1) {
      const int64 t_i = cfg.t_i_initial > 0
                            ? cfg.t_i_initial
                            : static_cast<int64>(cfg.t_i_epochs) * num_batches;
      state.schedule = RestartSchedule(t_i, cfg.t_mult);
    }
    size_t u = 0;
    for (size_t b = 0; b < num_batches; b++) {
      Batch labeled(pool.begin() + b * bs,
                    pool.begin() + std::min(pool.size(), (b + 1) * bs));
      Batch unlabeled;
      // Round robin over the unlabeled set, wrapping when it runs out.
      for (size_t j = 0; j < labeled.size() && !unl.empty(); j++)
        unlabeled.push_back(unl[u++ % unl.size()]);
      const LossRecord r =
          TrainStep(&state, cfg, labeled, unlabeled,
                    !in_transfer || cfg.consistency_in_transfer);
      if (log.is_open()) log << FormatLossRecord(r) << "\n";
    }
    if (!out_dir.empty()) {
      log.flush();
      char name[32];
      std::snprintf(name, sizeof(name), "/epoch_%03d.sys", epoch);
      sys.WriteFile(out_dir + name);
    }
  }
  if (!out_dir.empty()) sys.WriteFile(out_dir + "/final.sys");
  if (history) *history = state.history;
  return std::move(state.system);
}

}  // namespace sed
