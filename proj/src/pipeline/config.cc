// src/pipeline/config.cc

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

#include "pipeline/config.h"

#include <functional>
#include <map>

#include "base/text-utils.h"

namespace sed {

namespace {

struct Binding {
  std::function<void(PipelineConfig *, const std::string &)> set;
  std::function<std::string(const PipelineConfig &)> get;
};

double ToDouble(const std::string &v) {
  double d;
  if (!ParseDouble(v, &d)) Fail("expected a number, got '", v, "'");
  return d;
}

int64 ToInt(const std::string &v) {
  int64 i;
  if (!ParseInt(v, &i)) Fail("expected an integer, got '", v, "'");
  return i;
}

bool ToBool(const std::string &v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  Fail("expected true or false, got '", v, "'");
}

std::string FromBool(bool b) { return b ? "true" : "false"; }

std::vector<int32> ToIntList(const std::string &v) {
  std::vector<int32> out;
  for (const std::string &f : SplitString(v, ',')) out.push_back(ToInt(Trim(f)));
  if (out.empty()) Fail("expected a comma-separated list");
  return out;
}

std::string FromIntList(const std::vector<int32> &v) {
  std::string s;
  for (int32 x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::vector<double> ToDoubleList(const std::string &v) {
  std::vector<double> out;
  for (const std::string &f : SplitString(v, ','))
    out.push_back(ToDouble(Trim(f)));
  if (out.empty()) Fail("expected a comma-separated list");
  return out;
}

std::string FromDoubleList(const std::vector<double> &v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + FormatDouble(x);
  return s;
}

// "5,11" for every class or "5,11;3,7;..." per class.
std::vector<std::vector<int32>> ToWindows(const std::string &v) {
  std::vector<std::vector<int32>> out;
  for (const std::string &group : SplitString(v, ';'))
    out.push_back(ToIntList(Trim(group)));
  return out;
}

std::string FromWindows(const std::vector<std::vector<int32>> &w) {
  std::string s;
  for (const auto &g : w) s += (s.empty() ? "" : ";") + FromIntList(g);
  return s;
}

#define SED_INT(field)                                                     \
  Binding {                                                                \
    [](PipelineConfig *c, const std::string &v) { c->field = ToInt(v); },  \
        [](const PipelineConfig &c) { return std::to_string(c.field); }    \
  }
#define SED_DOUBLE(field)                                                   \
  Binding {                                                                 \
    [](PipelineConfig *c, const std::string &v) { c->field = ToDouble(v); }, \
        [](const PipelineConfig &c) { return FormatDouble(c.field); }       \
  }
#define SED_BOOL(field)                                                    \
  Binding {                                                                \
    [](PipelineConfig *c, const std::string &v) { c->field = ToBool(v); }, \
        [](const PipelineConfig &c) { return FromBool(c.field); }          \
  }

const std::map<std::string, Binding> &Bindings() {
  static const std::map<std::string, Binding> table = {
      {"seed", SED_INT(seed)},
      {"threads", SED_INT(threads)},
      {"feature.sample_rate", SED_INT(feature.sample_rate)},
      {"feature.n_fft", SED_INT(feature.n_fft)},
      {"feature.hop", SED_INT(feature.hop)},
      {"feature.n_mels", SED_INT(feature.n_mels)},
      {"feature.log_floor", SED_DOUBLE(feature.log_floor)},
      {"feature.clip_seconds", SED_DOUBLE(feature.clip_seconds)},
      {"nmf.iters", SED_INT(nmf.iters)},
      {"nmf.decode_iters", SED_INT(nmf.decode_iters)},
      {"nmf.cost",
       {[](PipelineConfig *c, const std::string &v) { c->nmf.cost = ParseNmfCost(v); },
        [](const PipelineConfig &c) { return NmfCostName(c.nmf.cost); }}},
      {"nmf.decode_cost",
       {[](PipelineConfig *c, const std::string &v) {
          c->nmf.decode_cost = ParseNmfCost(v);
        },
        [](const PipelineConfig &c) { return NmfCostName(c.nmf.decode_cost); }}},
      {"nmf.template_mode",
       {[](PipelineConfig *c, const std::string &v) {
          c->nmf.template_mode = ParseTemplateMode(v);
        },
        [](const PipelineConfig &c) {
          return TemplateModeName(c.nmf.template_mode);
        }}},
      {"labeler.theta", SED_DOUBLE(theta)},
      {"model.sm_channels",
       {[](PipelineConfig *c, const std::string &v) {
          c->model.sm_channels = ToIntList(v);
        },
        [](const PipelineConfig &c) { return FromIntList(c.model.sm_channels); }}},
      {"model.sm_dropout", SED_DOUBLE(model.sm_dropout)},
      {"model.dm_channels",
       {[](PipelineConfig *c, const std::string &v) {
          c->model.dm_channels = ToIntList(v);
        },
        [](const PipelineConfig &c) { return FromIntList(c.model.dm_channels); }}},
      {"model.dm_dropout", SED_DOUBLE(model.dm_dropout)},
      {"model.dm_global_pool",
       {[](PipelineConfig *c, const std::string &v) { c->model.dm_global_pool = v; },
        [](const PipelineConfig &c) { return c.model.dm_global_pool; }}},
      {"model.batch_norm", SED_BOOL(model.batch_norm)},
      {"train.lambda", SED_DOUBLE(train.lambda)},
      {"train.confident_absence", SED_BOOL(train.confident_absence)},
      {"train.lr_max", SED_DOUBLE(train.lr_max)},
      {"train.lr_min", SED_DOUBLE(train.lr_min)},
      {"train.t_i_initial", SED_INT(train.t_i_initial)},
      {"train.t_i_epochs", SED_INT(train.t_i_epochs)},
      {"train.t_mult", SED_INT(train.t_mult)},
      {"train.transfer_epochs", SED_INT(train.transfer_epochs)},
      {"train.mode",
       {[](PipelineConfig *c, const std::string &v) { c->train.mode = ParseTrainMode(v); },
        [](const PipelineConfig &c) { return TrainModeName(c.train.mode); }}},
      {"train.epochs", SED_INT(train.epochs)},
      {"train.batch_size", SED_INT(train.batch_size)},
      {"train.consistency_in_transfer", SED_BOOL(train.consistency_in_transfer)},
      {"decode.clip_threshold", SED_DOUBLE(decode.clip_threshold)},
      {"decode.frame_threshold",
       {[](PipelineConfig *c, const std::string &v) {
          c->decode.frame_threshold = ToDoubleList(v);
        },
        [](const PipelineConfig &c) {
          return FromDoubleList(c.decode.frame_threshold);
        }}},
      {"decode.low_threshold", SED_DOUBLE(decode.low_threshold)},
      {"decode.min_duration", SED_DOUBLE(decode.min_duration)},
      {"decode.merge_gap", SED_DOUBLE(decode.merge_gap)},
      {"decode.median_windows",
       {[](PipelineConfig *c, const std::string &v) {
          c->decode.median_windows = ToWindows(v);
        },
        [](const PipelineConfig &c) { return FromWindows(c.decode.median_windows); }}},
      {"eval.onset_collar", SED_DOUBLE(eval.onset_collar)},
      {"eval.offset_fraction", SED_DOUBLE(eval.offset_fraction)},
      {"gen.classes", SED_INT(gen.n_classes)},
      {"gen.n_strong", SED_INT(gen.n_strong)},
      {"gen.n_weak", SED_INT(gen.n_weak)},
      {"gen.n_unlabeled", SED_INT(gen.n_unlabeled)},
      {"gen.n_validation", SED_INT(gen.n_validation)},
      {"gen.min_events", SED_INT(gen.min_events)},
      {"gen.max_events", SED_INT(gen.max_events)},
      {"gen.min_duration", SED_DOUBLE(gen.min_duration)},
      {"gen.max_duration", SED_DOUBLE(gen.max_duration)},
      {"gen.snr_min_db", SED_DOUBLE(gen.snr_min_db)},
      {"gen.snr_max_db", SED_DOUBLE(gen.snr_max_db)},
      {"gen.hard", SED_BOOL(gen.hard)},
      {"gen.polyphony", SED_BOOL(gen.polyphony)},
  };
  return table;
}

#undef SED_INT
#undef SED_DOUBLE
#undef SED_BOOL

}  // namespace

void PipelineConfig::Set(const std::string &key, const std::string &value) {
  auto it = Bindings().find(key);
  if (it == Bindings().end()) Fail("unknown config key '", key, "'");
  try {
    it->second.set(this, Trim(value));
  } catch (const SedError &e) {
    Fail("config key '", key, "': ", e.what());
  }
}

std::string PipelineConfig::Get(const std::string &key) const {
  auto it = Bindings().find(key);
  if (it == Bindings().end()) Fail("unknown config key '", key, "'");
  return it->second.get(*this);
}

std::vector<std::string> PipelineConfig::Keys() {
  std::vector<std::string> keys;
  for (const auto &[k, b] : Bindings()) keys.push_back(k);
  return keys;
}

void PipelineConfig::ReadFile(const std::string &path) {
  for (const KeyValueEntry &e : ReadKeyValueFile(path)) {
    try {
      Set(e.key, e.value);
    } catch (const SedError &err) {
      Fail(path, ":", e.line, ": ", err.what());
    }
  }
}

std::string PipelineConfig::Dump() const {
  std::string s;
  for (const auto &[k, b] : Bindings()) s += k + "=" + b.get(*this) + "\n";
  return s;
}

void PipelineConfig::Resolve() {
  feature.Check();
  train.seed = seed;
  gen.seed = seed;
  gen.sample_rate = feature.sample_rate;
  gen.clip_seconds = feature.clip_seconds;
  model.n_mels = feature.n_mels;
  decode.frame_seconds = feature.FrameSeconds();
  decode.clip_seconds = feature.clip_seconds;
  if (!(theta >= 0.0 && theta <= 1.0))
    Fail("labeler.theta must be in [0, 1], got ", theta);
  if (nmf.iters < 1 || nmf.decode_iters < 1)
    Fail("nmf.iters and nmf.decode_iters must be >= 1");
  if (!(eval.onset_collar >= 0.0 && eval.offset_fraction >= 0.0))
    Fail("eval tolerances must be >= 0");
  if (threads < 0) Fail("threads must be >= 0, got ", threads);
  gen.Check();
  model.Check();
  train.Check();
}

}  // namespace sed
