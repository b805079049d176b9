// src/models/models.cc

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

#include "models/models.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "base/text-utils.h"

namespace sed {

namespace {

const char kMagic[8] = {'S', 'E', 'D', 'S', 'Y', 'S', '\0', '\0'};
const uint32_t kVersion = 1;

void AddLayer(nn::Nnet *net, const std::string &descr) {
  net->Append(nn::NewComponent(descr));
}

std::string Join(const std::vector<std::string> &parts) {
  std::string s;
  for (const std::string &p : parts) s += (s.empty() ? "" : " ") + p;
  return s;
}

template <typename T>
void WritePod(std::ostream &os, T v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T ReadPod(std::istream &is) {
  T v;
  is.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!is) Fail("model file: unexpected end of data");
  return v;
}

void WriteString(std::ostream &os, const std::string &s) {
  WritePod<uint32_t>(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string ReadString(std::istream &is) {
  const uint32_t n = ReadPod<uint32_t>(is);
  if (n > 4096) Fail("model file: corrupt string length");
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (!is) Fail("model file: unexpected end of data");
  return s;
}

}  // namespace

void ModelConfig::Check() const {
  if (num_classes < 1) Fail("model: num_classes must be >= 1");
  if (sm_channels.empty() || dm_channels.empty())
    Fail("model: channel lists must be nonempty");
  for (int32 c : sm_channels)
    if (c < 1) Fail("model: sm channel widths must be >= 1");
  for (int32 c : dm_channels)
    if (c < 1) Fail("model: dm channel widths must be >= 1");
  if (!(sm_dropout >= 0.0 && sm_dropout < 1.0) ||
      !(dm_dropout >= 0.0 && dm_dropout < 1.0))
    Fail("model: dropout rates must lie in [0, 1)");
  if (dm_global_pool != "avg" && dm_global_pool != "max")
    Fail("model: dm_global_pool must be avg or max, got '", dm_global_pool,
         "'");
  int64 collapse = 1;
  for (size_t i = 0; i < sm_channels.size(); i++) collapse *= 4;
  if (collapse != n_mels)
    Fail("model: the shallow model pools the mel axis by 4 per block, so ",
         sm_channels.size(), " blocks need n_mels = ", collapse, ", got ",
         n_mels);
  if (n_mels % (1 << dm_channels.size()) != 0)
    Fail("model: n_mels ", n_mels, " is not divisible by 2^",
         dm_channels.size());
}

nn::Nnet BuildSm(const ModelConfig &cfg) {
  cfg.Check();
  nn::Nnet net;
  int32 in = 1;
  for (int32 out : cfg.sm_channels) {
    AddLayer(&net, Join({"conv2d", std::to_string(in), std::to_string(out),
                         "3", "3"}));
    if (cfg.batch_norm) AddLayer(&net, "batch_norm " + std::to_string(out));
    AddLayer(&net, "context_gate " + std::to_string(out));
    AddLayer(&net, "max_pool2d 1 4");
    AddLayer(&net, "dropout " + FormatDouble(cfg.sm_dropout));
    in = out;
  }
  AddLayer(&net, Join({"dense", std::to_string(in),
                       std::to_string(cfg.num_classes)}));
  AddLayer(&net, "sigmoid");
  return net;
}

nn::Nnet BuildDm(const ModelConfig &cfg) {
  cfg.Check();
  nn::Nnet net;
  int32 in = 1;
  for (int32 out : cfg.dm_channels) {
    AddLayer(&net, Join({"conv2d", std::to_string(in), std::to_string(out),
                         "3", "3"}));
    if (cfg.batch_norm) AddLayer(&net, "batch_norm " + std::to_string(out));
    AddLayer(&net, "relu");
    AddLayer(&net, "max_pool2d 2 2");
    in = out;
  }
  AddLayer(&net, "dropout " + FormatDouble(cfg.dm_dropout));
  AddLayer(&net, cfg.dm_global_pool + "_pool2d 0 0");
  AddLayer(&net, Join({"dense", std::to_string(in),
                       std::to_string(cfg.num_classes)}));
  AddLayer(&net, "sigmoid");
  return net;
}

ClipPrediction ClipFromFrames(const FramePrediction &f) {
  ClipPrediction c;
  c.clip_id = f.clip_id;
  c.probs.assign(f.probs.NumCols(), 0.0);
  for (int32 t = 0; t < f.probs.NumRows(); t++)
    for (int32 k = 0; k < f.probs.NumCols(); k++)
      c.probs[k] = t == 0 ? f.probs(t, k) : std::max(c.probs[k], f.probs(t, k));
  return c;
}

InputNorm InputNorm::Estimate(const std::vector<const Matrix *> &features) {
  double sum = 0.0, sum_sq = 0.0;
  size_t n = 0;
  for (const Matrix *m : features) {
    for (double v : m->Values()) {
      sum += v;
      sum_sq += v * v;
    }
    n += m->Values().size();
  }
  InputNorm norm;
  if (n == 0) return norm;
  norm.mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - norm.mean * norm.mean);
  norm.stddev = var > 1e-12 ? std::sqrt(var) : 1.0;
  return norm;
}

nn::Tensor MakeInputBatch(const std::vector<const Matrix *> &features,
                          const InputNorm &norm) {
  if (features.empty()) Fail("MakeInputBatch: empty batch");
  const int32 t = features[0]->NumRows(), m = features[0]->NumCols();
  nn::Tensor x({static_cast<int32>(features.size()), 1, t, m});
  double *dst = x.Data();
  for (const Matrix *f : features) {
    if (f->NumRows() != t || f->NumCols() != m)
      Fail("MakeInputBatch: feature shapes differ (", f->NumRows(), "x",
           f->NumCols(), " vs ", t, "x", m, ")");
    for (double v : f->Values()) *dst++ = (v - norm.mean) / norm.stddev;
  }
  return x;
}

Matrix FramesFromOutput(const nn::Tensor &out, int32 n) {
  SED_ASSERT(out.NumAxes() == 4 && out.Dim(3) == 1 && n < out.Dim(0));
  const int32 k = out.Dim(1), t = out.Dim(2);
  Matrix m(t, k);
  for (int32 c = 0; c < k; c++)
    for (int32 i = 0; i < t; i++) m(i, c) = out.At(n, c, i, 0);
  return m;
}

std::vector<double> ClipFromOutput(const nn::Tensor &out, int32 n) {
  SED_ASSERT(out.NumAxes() == 4 && out.Dim(2) == 1 && out.Dim(3) == 1 &&
             n < out.Dim(0));
  std::vector<double> v(out.Dim(1));
  for (int32 c = 0; c < out.Dim(1); c++) v[c] = out.At(n, c, 0, 0);
  return v;
}

void SedSystem::Predict(const std::vector<std::string> &clip_ids,
                        const std::vector<const Matrix *> &features,
                        std::vector<ClipPrediction> *clip,
                        std::vector<FramePrediction> *frames) {
  SED_ASSERT(clip_ids.size() == features.size());
  clip->clear();
  frames->clear();
  if (features.empty()) return;
  nn::Tensor x = MakeInputBatch(features, norm), sm_out, dm_out;
  sm.Propagate(x, &sm_out, false);
  dm.Propagate(x, &dm_out, false);
  for (size_t n = 0; n < features.size(); n++) {
    clip->push_back({clip_ids[n], ClipFromOutput(dm_out, n)});
    frames->push_back({clip_ids[n], FramesFromOutput(sm_out, n)});
  }
}

void SedSystem::Write(std::ostream &os) const {
  os.write(kMagic, sizeof(kMagic));
  WritePod<uint32_t>(os, kVersion);
  WritePod<uint32_t>(os, static_cast<uint32_t>(label_set.size()));
  for (const std::string &l : label_set) WriteString(os, l);
  WritePod<double>(os, norm.mean);
  WritePod<double>(os, norm.stddev);
  sm.Write(os);
  dm.Write(os);
  if (!os) Fail("model file: write failed");
}

SedSystem SedSystem::Read(std::istream &is) {
  char magic[sizeof(kMagic)];
  is.read(magic, sizeof(magic));
  if (!is || !std::equal(magic, magic + sizeof(magic), kMagic))
    Fail("model file: bad magic, not a system checkpoint");
  const uint32_t version = ReadPod<uint32_t>(is);
  if (version != kVersion) Fail("model file: unsupported version ", version);
  SedSystem s;
  const uint32_t k = ReadPod<uint32_t>(is);
  if (k == 0 || k > 100000) Fail("model file: corrupt label count");
  for (uint32_t i = 0; i < k; i++) s.label_set.push_back(ReadString(is));
  s.norm.mean = ReadPod<double>(is);
  s.norm.stddev = ReadPod<double>(is);
  s.sm = nn::Nnet::Read(is);
  s.dm = nn::Nnet::Read(is);
  // The heads must agree with the label set.
  for (const nn::Nnet *net : {&s.sm, &s.dm}) {
    const std::string arch = net->Architecture();
    const size_t dense = arch.rfind("dense ");
    int64 out = -1;
    if (dense != std::string::npos) {
      auto fields = SplitWhitespace(arch.substr(dense, arch.find('\n', dense) - dense));
      if (fields.size() == 3) ParseInt(fields[2], &out);
    }
    if (out != static_cast<int64>(k))
      Fail("model file: network head has ", out, " outputs but the label set has ",
           k, " classes");
  }
  return s;
}

void SedSystem::WriteFile(const std::string &path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail("cannot open '", path, "' for writing");
  Write(os);
}

SedSystem SedSystem::ReadFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail("cannot open '", path, "'");
  try {
    return Read(is);
  } catch (const SedError &e) {
    Fail(path, ": ", e.what());
  }
}

}  // namespace sed
