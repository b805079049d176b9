// src/nn/nn-component.cc

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

#include "nn/nn-component.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "base/text-utils.h"
#include "kernels/kernels.h"

namespace sed {
namespace nn {

std::string ShapeString(const Shape &shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); i++) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

size_t ShapeSize(const Shape &shape) {
  size_t n = 1;
  for (int32 d : shape) {
    SED_ASSERT(d >= 0);
    n *= static_cast<size_t>(d);
  }
  return n;
}

std::string KindName(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::kConv2d: return "conv2d";
    case ComponentKind::kDense: return "dense";
    case ComponentKind::kRelu: return "relu";
    case ComponentKind::kSigmoid: return "sigmoid";
    case ComponentKind::kContextGate: return "context_gate";
    case ComponentKind::kMaxPool2d: return "max_pool2d";
    case ComponentKind::kAvgPool2d: return "avg_pool2d";
    case ComponentKind::kDropout: return "dropout";
    case ComponentKind::kBatchNorm: return "batch_norm";
  }
  return "unknown";
}

namespace {

void Require4d(const Shape &in, const char *what) {
  if (in.size() != 4)
    Fail(what, ": expected a 4-d input, got ", ShapeString(in));
}

void RequireChannels(const Shape &in, int32 channels, const char *what) {
  Require4d(in, what);
  if (in[1] != channels)
    Fail(what, ": expected ", channels, " channels, got input ",
         ShapeString(in));
}

inline double SigmoidOf(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                  : std::exp(x) / (1.0 + std::exp(x));
}

void FillNormal(std::vector<double> *v, double stddev, std::mt19937_64 *rng) {
  std::normal_distribution<double> dist(0.0, stddev);
  for (double &x : *v) x = dist(*rng);
}

// out(n) = W [out x in] * x(n) [in x positions] + b, for every batch item.
void ChannelAffine(const std::vector<double> &w, const std::vector<double> &b,
                   int32 in_dim, int32 out_dim, const Tensor &x, Tensor *y) {
  const int32 batch = x.Dim(0), pos = x.Dim(2) * x.Dim(3);
  y->Resize({batch, out_dim, x.Dim(2), x.Dim(3)});
  for (int32 n = 0; n < batch; n++) {
    double *yn = y->Data() + static_cast<size_t>(n) * out_dim * pos;
    for (int32 o = 0; o < out_dim; o++)
      std::fill(yn + static_cast<size_t>(o) * pos,
                yn + static_cast<size_t>(o + 1) * pos, b[o]);
    kernels::GemmNN(out_dim, pos, in_dim, w.data(),
                    x.Data() + static_cast<size_t>(n) * in_dim * pos, yn,
                    true);
  }
}

// Gradients of ChannelAffine.  dx may be null.
void ChannelAffineBackward(const std::vector<double> &w, int32 in_dim,
                           int32 out_dim, const Tensor &x, const Tensor &dy,
                           std::vector<double> *dw, std::vector<double> *db,
                           Tensor *dx) {
  const int32 batch = x.Dim(0), pos = x.Dim(2) * x.Dim(3);
  if (dx) dx->Resize(x.GetShape());
  for (int32 n = 0; n < batch; n++) {
    const double *dyn = dy.Data() + static_cast<size_t>(n) * out_dim * pos;
    const double *xn = x.Data() + static_cast<size_t>(n) * in_dim * pos;
    kernels::GemmNT(out_dim, in_dim, pos, dyn, xn, dw->data(), true);
    for (int32 o = 0; o < out_dim; o++) {
      const double *row = dyn + static_cast<size_t>(o) * pos;
      (*db)[o] += std::accumulate(row, row + pos, 0.0);
    }
    if (dx)
      kernels::GemmTN(in_dim, pos, out_dim, w.data(), dyn,
                      dx->Data() + static_cast<size_t>(n) * in_dim * pos,
                      false);
  }
}

}  // namespace

// ---------------------------------------------------------------- Conv2d

Conv2d::Conv2d(int32 in_channels, int32 out_channels, int32 kh, int32 kw)
    : in_(in_channels), out_(out_channels), kh_(kh), kw_(kw) {
  if (in_ < 1 || out_ < 1 || kh_ < 1 || kw_ < 1 || kh_ % 2 == 0 ||
      kw_ % 2 == 0)
    Fail("conv2d: invalid configuration ", Describe());
  const size_t k = static_cast<size_t>(in_) * kh_ * kw_;
  weight_.assign(out_ * k, 0.0);
  weight_grad_.assign(out_ * k, 0.0);
  bias_.assign(out_, 0.0);
  bias_grad_.assign(out_, 0.0);
}

std::string Conv2d::Describe() const {
  return "conv2d " + std::to_string(in_) + " " + std::to_string(out_) + " " +
         std::to_string(kh_) + " " + std::to_string(kw_);
}

Shape Conv2d::OutputShape(const Shape &in) const {
  RequireChannels(in, in_, "conv2d");
  return {in[0], out_, in[2], in[3]};
}

void Conv2d::Propagate(const Tensor &in, Tensor *out, bool, std::mt19937_64 *) {
  const Shape out_shape = OutputShape(in.GetShape());
  input_ = in;
  const int32 batch = in.Dim(0), h = in.Dim(2), w = in.Dim(3), pos = h * w;
  const int32 k = in_ * kh_ * kw_;
  out->Resize(out_shape);
  std::vector<double> cols(static_cast<size_t>(k) * pos);
  for (int32 n = 0; n < batch; n++) {
    kernels::Im2Col(in.Data() + static_cast<size_t>(n) * in_ * pos, in_, h, w,
                    kh_, kw_, cols.data());
    double *yn = out->Data() + static_cast<size_t>(n) * out_ * pos;
    for (int32 o = 0; o < out_; o++)
      std::fill(yn + static_cast<size_t>(o) * pos,
                yn + static_cast<size_t>(o + 1) * pos, bias_[o]);
    kernels::GemmNN(out_, pos, k, weight_.data(), cols.data(), yn, true);
  }
}

void Conv2d::Backpropagate(const Tensor &out_diff, Tensor *in_diff) {
  const int32 batch = input_.Dim(0), h = input_.Dim(2), w = input_.Dim(3);
  const int32 pos = h * w, k = in_ * kh_ * kw_;
  in_diff->Resize(input_.GetShape());
  std::vector<double> cols(static_cast<size_t>(k) * pos);
  for (int32 n = 0; n < batch; n++) {
    const double *dyn = out_diff.Data() + static_cast<size_t>(n) * out_ * pos;
    kernels::Im2Col(input_.Data() + static_cast<size_t>(n) * in_ * pos, in_, h,
                    w, kh_, kw_, cols.data());
    kernels::GemmNT(out_, k, pos, dyn, cols.data(), weight_grad_.data(), true);
    for (int32 o = 0; o < out_; o++) {
      const double *row = dyn + static_cast<size_t>(o) * pos;
      bias_grad_[o] += std::accumulate(row, row + pos, 0.0);
    }
    kernels::GemmTN(k, pos, out_, weight_.data(), dyn, cols.data(), false);
    kernels::Col2ImAdd(cols.data(), in_, h, w, kh_, kw_,
                       in_diff->Data() + static_cast<size_t>(n) * in_ * pos);
  }
}

std::vector<ParamRef> Conv2d::Params() {
  return {{&weight_, &weight_grad_}, {&bias_, &bias_grad_}};
}

void Conv2d::InitParams(std::mt19937_64 *rng) {
  FillNormal(&weight_, std::sqrt(2.0 / (in_ * kh_ * kw_)), rng);
  std::fill(bias_.begin(), bias_.end(), 0.0);
}

std::unique_ptr<Component> Conv2d::Copy() const {
  return std::make_unique<Conv2d>(*this);
}

// ----------------------------------------------------------------- Dense

Dense::Dense(int32 in_dim, int32 out_dim) : in_(in_dim), out_(out_dim) {
  if (in_ < 1 || out_ < 1) Fail("dense: invalid configuration ", Describe());
  weight_.assign(static_cast<size_t>(out_) * in_, 0.0);
  weight_grad_.assign(weight_.size(), 0.0);
  bias_.assign(out_, 0.0);
  bias_grad_.assign(out_, 0.0);
}

std::string Dense::Describe() const {
  return "dense " + std::to_string(in_) + " " + std::to_string(out_);
}

Shape Dense::OutputShape(const Shape &in) const {
  RequireChannels(in, in_, "dense");
  return {in[0], out_, in[2], in[3]};
}

void Dense::Propagate(const Tensor &in, Tensor *out, bool, std::mt19937_64 *) {
  OutputShape(in.GetShape());
  input_ = in;
  ChannelAffine(weight_, bias_, in_, out_, in, out);
}

void Dense::Backpropagate(const Tensor &out_diff, Tensor *in_diff) {
  ChannelAffineBackward(weight_, in_, out_, input_, out_diff, &weight_grad_,
                        &bias_grad_, in_diff);
}

std::vector<ParamRef> Dense::Params() {
  return {{&weight_, &weight_grad_}, {&bias_, &bias_grad_}};
}

void Dense::InitParams(std::mt19937_64 *rng) {
  FillNormal(&weight_, std::sqrt(1.0 / in_), rng);
  std::fill(bias_.begin(), bias_.end(), 0.0);
}

std::unique_ptr<Component> Dense::Copy() const {
  return std::make_unique<Dense>(*this);
}

// ----------------------------------------------------------- ContextGate

ContextGate::ContextGate(int32 channels) : channels_(channels) {
  if (channels_ < 1) Fail("context_gate: invalid configuration ", Describe());
  weight_.assign(static_cast<size_t>(channels_) * channels_, 0.0);
  weight_grad_.assign(weight_.size(), 0.0);
  bias_.assign(channels_, 0.0);
  bias_grad_.assign(channels_, 0.0);
}

std::string ContextGate::Describe() const {
  return "context_gate " + std::to_string(channels_);
}

Shape ContextGate::OutputShape(const Shape &in) const {
  RequireChannels(in, channels_, "context_gate");
  return in;
}

void ContextGate::Propagate(const Tensor &in, Tensor *out, bool,
                            std::mt19937_64 *) {
  OutputShape(in.GetShape());
  input_ = in;
  ChannelAffine(weight_, bias_, channels_, channels_, in, &gate_);
  out->Resize(in.GetShape());
  for (size_t i = 0; i < in.Size(); i++) {
    gate_[i] = SigmoidOf(gate_[i]);
    (*out)[i] = in[i] * gate_[i];
  }
}

void ContextGate::Backpropagate(const Tensor &out_diff, Tensor *in_diff) {
  // y = x * g, g = sigmoid(z), z = W x + b.
  Tensor dz(input_.GetShape());
  for (size_t i = 0; i < dz.Size(); i++)
    dz[i] = out_diff[i] * input_[i] * gate_[i] * (1.0 - gate_[i]);
  ChannelAffineBackward(weight_, channels_, channels_, input_, dz,
                        &weight_grad_, &bias_grad_, in_diff);
  for (size_t i = 0; i < dz.Size(); i++)
    (*in_diff)[i] += out_diff[i] * gate_[i];
}

std::vector<ParamRef> ContextGate::Params() {
  return {{&weight_, &weight_grad_}, {&bias_, &bias_grad_}};
}

void ContextGate::InitParams(std::mt19937_64 *rng) {
  FillNormal(&weight_, std::sqrt(1.0 / channels_), rng);
  std::fill(bias_.begin(), bias_.end(), 0.0);
}

std::unique_ptr<Component> ContextGate::Copy() const {
  return std::make_unique<ContextGate>(*this);
}

// ------------------------------------------------------ Relu and Sigmoid

void Relu::Propagate(const Tensor &in, Tensor *out, bool, std::mt19937_64 *) {
  out->Resize(in.GetShape());
  for (size_t i = 0; i < in.Size(); i++) (*out)[i] = std::max(in[i], 0.0);
  output_ = *out;
}

void Relu::Backpropagate(const Tensor &out_diff, Tensor *in_diff) {
  in_diff->Resize(output_.GetShape());
  for (size_t i = 0; i < output_.Size(); i++)
    (*in_diff)[i] = output_[i] > 0.0 ? out_diff[i] : 0.0;
}

std::unique_ptr<Component> Relu::Copy() const {
  return std::make_unique<Relu>(*this);
}

void Sigmoid::Propagate(const Tensor &in, Tensor *out, bool,
                        std::mt19937_64 *) {
  out->Resize(in.GetShape());
  for (size_t i = 0; i < in.Size(); i++) (*out)[i] = SigmoidOf(in[i]);
  output_ = *out;
}

void Sigmoid::Backpropagate(const Tensor &out_diff, Tensor *in_diff) {
  in_diff->Resize(output_.GetShape());
  for (size_t i = 0; i < output_.Size(); i++)
    (*in_diff)[i] = out_diff[i] * output_[i] * (1.0 - output_[i]);
}

std::unique_ptr<Component> Sigmoid::Copy() const {
  return std::make_unique<Sigmoid>(*this);
}

// ---------------------------------------------------------------- Pool2d

Pool2d::Pool2d(bool max_pool, int32 kh, int32 kw)
    : max_(max_pool), kh_(kh), kw_(kw) {
  if (kh_ < 0 || kw_ < 0) Fail("pool: invalid configuration ", Describe());
}

std::string Pool2d::Describe() const {
  return std::string(max_ ? "max_pool2d " : "avg_pool2d ") +
         std::to_string(kh_) + " " + std::to_string(kw_);
}

Shape Pool2d::OutputShape(const Shape &in) const {
  const std::string name = KindName(Kind());
  Require4d(in, name.c_str());
  const int32 kh = KernelH(in), kw = KernelW(in);
  if (kh < 1 || kw < 1 || in[2] % kh != 0 || in[3] % kw != 0)
    Fail(name, ": input ", ShapeString(in), " is not divisible by kernel ",
         kh, "x", kw);
  return {in[0], in[1], in[2] / kh, in[3] / kw};
}

void Pool2d::Propagate(const Tensor &in, Tensor *out, bool,
                       std::mt19937_64 *) {
  const Shape out_shape = OutputShape(in.GetShape());
  in_shape_ = in.GetShape();
  const int32 kh = KernelH(in_shape_), kw = KernelW(in_shape_);
  const int32 oh = out_shape[2], ow = out_shape[3], w = in.Dim(3);
  const size_t planes = static_cast<size_t>(in.Dim(0)) * in.Dim(1);
  const size_t in_plane = static_cast<size_t>(in.Dim(2)) * w;
  const double scale = 1.0 / (kh * kw);
  out->Resize(out_shape);
  if (max_) argmax_.assign(out->Size(), 0);
  for (size_t p = 0; p < planes; p++)
    for (int32 y = 0; y < oh; y++)
      for (int32 x = 0; x < ow; x++) {
        const size_t o = (p * oh + y) * ow + x;
        double best = -std::numeric_limits<double>::infinity(), sum = 0.0;
        size_t best_at = 0;
        for (int32 dy = 0; dy < kh; dy++)
          for (int32 dx = 0; dx < kw; dx++) {
            const size_t i = p * in_plane +
                             static_cast<size_t>(y * kh + dy) * w + x * kw + dx;
            sum += in[i];
            if (in[i] > best) {
              best = in[i];
              best_at = i;
            }
          }
        if (max_) {
          (*out)[o] = best;
          argmax_[o] = best_at;
        } else {
          (*out)[o] = sum * scale;
        }
      }
}

void Pool2d::Backpropagate(const Tensor &out_diff, Tensor *in_diff) {
  in_diff->Resize(in_shape_);
  if (max_) {
    for (size_t o = 0; o < out_diff.Size(); o++)
      (*in_diff)[argmax_[o]] += out_diff[o];
    return;
  }
  const int32 kh = KernelH(in_shape_), kw = KernelW(in_shape_);
  const int32 oh = out_diff.Dim(2), ow = out_diff.Dim(3), w = in_shape_[3];
  const size_t planes = static_cast<size_t>(in_shape_[0]) * in_shape_[1];
  const size_t in_plane = static_cast<size_t>(in_shape_[2]) * w;
  const double scale = 1.0 / (kh * kw);
  for (size_t p = 0; p < planes; p++)
    for (int32 y = 0; y < oh; y++)
      for (int32 x = 0; x < ow; x++) {
        const double g = out_diff[(p * oh + y) * ow + x] * scale;
        for (int32 dy = 0; dy < kh; dy++)
          for (int32 dx = 0; dx < kw; dx++)
            (*in_diff)[p * in_plane + static_cast<size_t>(y * kh + dy) * w +
                       x * kw + dx] = g;
      }
}

std::unique_ptr<Component> Pool2d::Copy() const {
  return std::make_unique<Pool2d>(*this);
}

// --------------------------------------------------------------- Dropout

Dropout::Dropout(double rate) : rate_(rate) {
  if (!(rate_ >= 0.0 && rate_ < 1.0))
    Fail("dropout: rate must be in [0, 1), got ", rate_);
}

std::string Dropout::Describe() const {
  return "dropout " + FormatDouble(rate_);
}

void Dropout::Propagate(const Tensor &in, Tensor *out, bool training,
                        std::mt19937_64 *rng) {
  *out = in;
  if (!training || rate_ == 0.0) {
    mask_.clear();
    return;
  }
  SED_ASSERT(rng != nullptr);
  std::bernoulli_distribution keep(1.0 - rate_);
  const double scale = 1.0 / (1.0 - rate_);
  mask_.resize(in.Size());
  for (size_t i = 0; i < in.Size(); i++) {
    mask_[i] = keep(*rng) ? scale : 0.0;
    (*out)[i] *= mask_[i];
  }
}

void Dropout::Backpropagate(const Tensor &out_diff, Tensor *in_diff) {
  *in_diff = out_diff;
  if (mask_.empty()) return;
  for (size_t i = 0; i < in_diff->Size(); i++) (*in_diff)[i] *= mask_[i];
}

std::unique_ptr<Component> Dropout::Copy() const {
  return std::make_unique<Dropout>(*this);
}

// ------------------------------------------------------------- BatchNorm

BatchNorm::BatchNorm(int32 channels, double momentum, double epsilon)
    : channels_(channels), momentum_(momentum), epsilon_(epsilon) {
  if (channels_ < 1) Fail("batch_norm: invalid configuration ", Describe());
  gamma_.assign(channels_, 1.0);
  beta_.assign(channels_, 0.0);
  gamma_grad_.assign(channels_, 0.0);
  beta_grad_.assign(channels_, 0.0);
  running_mean_.assign(channels_, 0.0);
  running_var_.assign(channels_, 1.0);
}

std::string BatchNorm::Describe() const {
  return "batch_norm " + std::to_string(channels_);
}

Shape BatchNorm::OutputShape(const Shape &in) const {
  RequireChannels(in, channels_, "batch_norm");
  return in;
}

void BatchNorm::Propagate(const Tensor &in, Tensor *out, bool training,
                          std::mt19937_64 *) {
  OutputShape(in.GetShape());
  const int32 batch = in.Dim(0);
  const size_t pos = static_cast<size_t>(in.Dim(2)) * in.Dim(3);
  const double count = static_cast<double>(batch) * pos;
  out->Resize(in.GetShape());
  normalized_.Resize(in.GetShape());
  inv_std_.assign(channels_, 0.0);
  last_training_ = training;
  for (int32 c = 0; c < channels_; c++) {
    double mean, var;
    if (training) {
      double sum = 0.0, sq = 0.0;
      for (int32 n = 0; n < batch; n++) {
        const double *x = in.Data() + (static_cast<size_t>(n) * channels_ + c) * pos;
        for (size_t i = 0; i < pos; i++) sum += x[i];
      }
      mean = sum / count;
      for (int32 n = 0; n < batch; n++) {
        const double *x = in.Data() + (static_cast<size_t>(n) * channels_ + c) * pos;
        for (size_t i = 0; i < pos; i++) sq += (x[i] - mean) * (x[i] - mean);
      }
      var = sq / count;
      running_mean_[c] = (1.0 - momentum_) * running_mean_[c] + momentum_ * mean;
      running_var_[c] = (1.0 - momentum_) * running_var_[c] + momentum_ * var;
    } else {
      mean = running_mean_[c];
      var = running_var_[c];
    }
    inv_std_[c] = 1.0 / std::sqrt(var + epsilon_);
    for (int32 n = 0; n < batch; n++) {
      const size_t off = (static_cast<size_t>(n) * channels_ + c) * pos;
      for (size_t i = 0; i < pos; i++) {
        normalized_[off + i] = (in[off + i] - mean) * inv_std_[c];
        (*out)[off + i] = gamma_[c] * normalized_[off + i] + beta_[c];
      }
    }
  }
}

void BatchNorm::Backpropagate(const Tensor &out_diff, Tensor *in_diff) {
  const int32 batch = normalized_.Dim(0);
  const size_t pos = static_cast<size_t>(normalized_.Dim(2)) * normalized_.Dim(3);
  const double count = static_cast<double>(batch) * pos;
  in_diff->Resize(normalized_.GetShape());
  for (int32 c = 0; c < channels_; c++) {
    double sum_dy = 0.0, sum_dy_xhat = 0.0;
    for (int32 n = 0; n < batch; n++) {
      const size_t off = (static_cast<size_t>(n) * channels_ + c) * pos;
      for (size_t i = 0; i < pos; i++) {
        sum_dy += out_diff[off + i];
        sum_dy_xhat += out_diff[off + i] * normalized_[off + i];
      }
    }
    gamma_grad_[c] += sum_dy_xhat;
    beta_grad_[c] += sum_dy;
    const double k = gamma_[c] * inv_std_[c];
    for (int32 n = 0; n < batch; n++) {
      const size_t off = (static_cast<size_t>(n) * channels_ + c) * pos;
      for (size_t i = 0; i < pos; i++) {
        if (last_training_)
          (*in_diff)[off + i] =
              k * (out_diff[off + i] - sum_dy / count -
                   normalized_[off + i] * sum_dy_xhat / count);
        else
          (*in_diff)[off + i] = k * out_diff[off + i];
      }
    }
  }
}

std::vector<ParamRef> BatchNorm::Params() {
  return {{&gamma_, &gamma_grad_}, {&beta_, &beta_grad_}};
}

std::vector<std::vector<double> *> BatchNorm::Buffers() {
  return {&running_mean_, &running_var_};
}

void BatchNorm::InitParams(std::mt19937_64 *) {
  std::fill(gamma_.begin(), gamma_.end(), 1.0);
  std::fill(beta_.begin(), beta_.end(), 0.0);
  std::fill(running_mean_.begin(), running_mean_.end(), 0.0);
  std::fill(running_var_.begin(), running_var_.end(), 1.0);
}

std::unique_ptr<Component> BatchNorm::Copy() const {
  return std::make_unique<BatchNorm>(*this);
}

// --------------------------------------------------------------- factory

std::unique_ptr<Component> NewComponent(const std::string &description) {
  std::vector<std::string> f = SplitWhitespace(description);
  if (f.empty()) Fail("empty component description");
  auto arity = [&](size_t n) {
    if (f.size() != n + 1)
      Fail("component '", description, "': expected ", n, " arguments");
  };
  auto int_arg = [&](size_t i) {
    int64 v;
    if (!ParseInt(f[i], &v)) Fail("component '", description, "': bad integer");
    return static_cast<int32>(v);
  };
  const std::string &kind = f[0];
  if (kind == "conv2d") {
    arity(4);
    return std::make_unique<Conv2d>(int_arg(1), int_arg(2), int_arg(3),
                                    int_arg(4));
  }
  if (kind == "dense") {
    arity(2);
    return std::make_unique<Dense>(int_arg(1), int_arg(2));
  }
  if (kind == "context_gate") {
    arity(1);
    return std::make_unique<ContextGate>(int_arg(1));
  }
  if (kind == "relu") {
    arity(0);
    return std::make_unique<Relu>();
  }
  if (kind == "sigmoid") {
    arity(0);
    return std::make_unique<Sigmoid>();
  }
  if (kind == "max_pool2d" || kind == "avg_pool2d") {
    arity(2);
    return std::make_unique<Pool2d>(kind == "max_pool2d", int_arg(1),
                                    int_arg(2));
  }
  if (kind == "dropout") {
    arity(1);
    double rate;
    if (!ParseDouble(f[1], &rate))
      Fail("component '", description, "': bad rate");
    return std::make_unique<Dropout>(rate);
  }
  if (kind == "batch_norm") {
    arity(1);
    return std::make_unique<BatchNorm>(int_arg(1));
  }
  Fail("unknown component kind '", kind, "'");
}

}  // namespace nn
}  // namespace sed
