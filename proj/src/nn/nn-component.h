// src/nn/nn-component.h

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

#ifndef SED_NN_NN_COMPONENT_H_
#define SED_NN_NN_COMPONENT_H_

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "nn/tensor.h"

namespace sed {
namespace nn {

enum class ComponentKind {
  kConv2d,
  kDense,
  kRelu,
  kSigmoid,
  kContextGate,
  kMaxPool2d,
  kAvgPool2d,
  kDropout,
  kBatchNorm,
};

std::string KindName(ComponentKind kind);

/// A trainable array and its gradient accumulator.
struct ParamRef {
  std::vector<double> *value;
  std::vector<double> *grad;
};

/// One layer.  Propagate caches whatever Backpropagate needs, so an
/// instance serves one forward/backward pair at a time.  All components act
/// on 4-d (batch, channels, time, mel) tensors.
class Component {
 public:
  virtual ~Component() = default;

  virtual ComponentKind Kind() const = 0;
  /// Kind plus hyper-parameters, e.g. "conv2d 1 16 3 3".  Parsed back by
  /// NewComponent and hashed into checkpoint architecture ids.
  virtual std::string Describe() const = 0;
  /// Throws SedError if the input shape is not accepted.
  virtual Shape OutputShape(const Shape &in) const = 0;

  virtual void Propagate(const Tensor &in, Tensor *out, bool training,
                         std::mt19937_64 *rng) = 0;
  /// Adds parameter gradients into the accumulators and writes in_diff.
  virtual void Backpropagate(const Tensor &out_diff, Tensor *in_diff) = 0;

  virtual std::vector<ParamRef> Params() { return {}; }
  /// Non-trainable state saved with the parameters (batch-norm statistics).
  virtual std::vector<std::vector<double> *> Buffers() { return {}; }
  virtual void InitParams(std::mt19937_64 *) {}
  virtual std::unique_ptr<Component> Copy() const = 0;
};

/// Builds a component from its Describe() string; parameters are zero.
std::unique_ptr<Component> NewComponent(const std::string &description);

/// "same"-padded convolution with stride 1 and odd kernel sizes.
class Conv2d : public Component {
 public:
  Conv2d(int32 in_channels, int32 out_channels, int32 kh, int32 kw);
  ComponentKind Kind() const override { return ComponentKind::kConv2d; }
  std::string Describe() const override;
  Shape OutputShape(const Shape &in) const override;
  void Propagate(const Tensor &in, Tensor *out, bool training,
                 std::mt19937_64 *rng) override;
  void Backpropagate(const Tensor &out_diff, Tensor *in_diff) override;
  std::vector<ParamRef> Params() override;
  void InitParams(std::mt19937_64 *rng) override;
  std::unique_ptr<Component> Copy() const override;

  std::vector<double> &Weight() { return weight_; }  // out x (in*kh*kw)
  std::vector<double> &Bias() { return bias_; }

 private:
  int32 in_, out_, kh_, kw_;
  std::vector<double> weight_, bias_, weight_grad_, bias_grad_;
  Tensor input_;
};

/// Affine map over the channel axis, applied independently at every
/// (time, mel) position.
class Dense : public Component {
 public:
  Dense(int32 in_dim, int32 out_dim);
  ComponentKind Kind() const override { return ComponentKind::kDense; }
  std::string Describe() const override;
  Shape OutputShape(const Shape &in) const override;
  void Propagate(const Tensor &in, Tensor *out, bool training,
                 std::mt19937_64 *rng) override;
  void Backpropagate(const Tensor &out_diff, Tensor *in_diff) override;
  std::vector<ParamRef> Params() override;
  void InitParams(std::mt19937_64 *rng) override;
  std::unique_ptr<Component> Copy() const override;

  std::vector<double> &Weight() { return weight_; }  // out x in
  std::vector<double> &Bias() { return bias_; }

 private:
  int32 in_, out_;
  std::vector<double> weight_, bias_, weight_grad_, bias_grad_;
  Tensor input_;
};

/// y = x * sigmoid(W x + b) over the channel axis at every position.
class ContextGate : public Component {
 public:
  explicit ContextGate(int32 channels);
  ComponentKind Kind() const override { return ComponentKind::kContextGate; }
  std::string Describe() const override;
  Shape OutputShape(const Shape &in) const override;
  void Propagate(const Tensor &in, Tensor *out, bool training,
                 std::mt19937_64 *rng) override;
  void Backpropagate(const Tensor &out_diff, Tensor *in_diff) override;
  std::vector<ParamRef> Params() override;
  void InitParams(std::mt19937_64 *rng) override;
  std::unique_ptr<Component> Copy() const override;

  std::vector<double> &Weight() { return weight_; }  // channels x channels
  std::vector<double> &Bias() { return bias_; }

 private:
  int32 channels_;
  std::vector<double> weight_, bias_, weight_grad_, bias_grad_;
  Tensor input_, gate_;
};

class Relu : public Component {
 public:
  ComponentKind Kind() const override { return ComponentKind::kRelu; }
  std::string Describe() const override { return "relu"; }
  Shape OutputShape(const Shape &in) const override { return in; }
  void Propagate(const Tensor &in, Tensor *out, bool training,
                 std::mt19937_64 *rng) override;
  void Backpropagate(const Tensor &out_diff, Tensor *in_diff) override;
  std::unique_ptr<Component> Copy() const override;

 private:
  Tensor output_;
};

class Sigmoid : public Component {
 public:
  ComponentKind Kind() const override { return ComponentKind::kSigmoid; }
  std::string Describe() const override { return "sigmoid"; }
  Shape OutputShape(const Shape &in) const override { return in; }
  void Propagate(const Tensor &in, Tensor *out, bool training,
                 std::mt19937_64 *rng) override;
  void Backpropagate(const Tensor &out_diff, Tensor *in_diff) override;
  std::unique_ptr<Component> Copy() const override;

 private:
  Tensor output_;
};

/// Non-overlapping pooling (stride = kernel) over (time, mel).  The input
/// extent must be divisible by the kernel.  A zero kernel size on an axis
/// means "the whole axis" (global pooling).
class Pool2d : public Component {
 public:
  Pool2d(bool max_pool, int32 kh, int32 kw);
  ComponentKind Kind() const override {
    return max_ ? ComponentKind::kMaxPool2d : ComponentKind::kAvgPool2d;
  }
  std::string Describe() const override;
  Shape OutputShape(const Shape &in) const override;
  void Propagate(const Tensor &in, Tensor *out, bool training,
                 std::mt19937_64 *rng) override;
  void Backpropagate(const Tensor &out_diff, Tensor *in_diff) override;
  std::unique_ptr<Component> Copy() const override;

 private:
  int32 KernelH(const Shape &in) const { return kh_ > 0 ? kh_ : in[2]; }
  int32 KernelW(const Shape &in) const { return kw_ > 0 ? kw_ : in[3]; }
  bool max_;
  int32 kh_, kw_;
  Shape in_shape_;
  std::vector<size_t> argmax_;
};

/// Inverted dropout: scales kept units by 1/(1-rate) at training time,
/// identity at inference.
class Dropout : public Component {
 public:
  explicit Dropout(double rate);
  ComponentKind Kind() const override { return ComponentKind::kDropout; }
  std::string Describe() const override;
  Shape OutputShape(const Shape &in) const override { return in; }
  void Propagate(const Tensor &in, Tensor *out, bool training,
                 std::mt19937_64 *rng) override;
  void Backpropagate(const Tensor &out_diff, Tensor *in_diff) override;
  std::unique_ptr<Component> Copy() const override;
  double Rate() const { return rate_; }

 private:
  double rate_;
  std::vector<double> mask_;  // empty when the last pass was inference
};

/// Per-channel normalization over (batch, time, mel).  Batch statistics at
/// training time, running averages at inference.
class BatchNorm : public Component {
 public:
  explicit BatchNorm(int32 channels, double momentum = 0.1,
                     double epsilon = 1e-5);
  ComponentKind Kind() const override { return ComponentKind::kBatchNorm; }
  std::string Describe() const override;
  Shape OutputShape(const Shape &in) const override;
  void Propagate(const Tensor &in, Tensor *out, bool training,
                 std::mt19937_64 *rng) override;
  void Backpropagate(const Tensor &out_diff, Tensor *in_diff) override;
  std::vector<ParamRef> Params() override;
  std::vector<std::vector<double> *> Buffers() override;
  void InitParams(std::mt19937_64 *rng) override;
  std::unique_ptr<Component> Copy() const override;

 private:
  int32 channels_;
  double momentum_, epsilon_;
  std::vector<double> gamma_, beta_, gamma_grad_, beta_grad_;
  std::vector<double> running_mean_, running_var_;
  Tensor normalized_;
  std::vector<double> inv_std_;
  bool last_training_ = false;
};

}  // namespace nn
}  // namespace sed

#endif  // SED_NN_NN_COMPONENT_H_
