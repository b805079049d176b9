// src/nn/nnet.h

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

#ifndef SED_NN_NNET_H_
#define SED_NN_NNET_H_

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "nn/nn-component.h"

namespace sed {
namespace nn {

/// A feed-forward stack of components.  Owns mutable caches, so one
/// instance must not be used from two threads at once; use Copy() for
/// data-parallel evaluation.
class Nnet {
 public:
  Nnet() = default;
  Nnet(const Nnet &other) { *this = other; }
  Nnet &operator=(const Nnet &other);
  Nnet(Nnet &&) = default;
  Nnet &operator=(Nnet &&) = default;

  void Append(std::unique_ptr<Component> c) { components_.push_back(std::move(c)); }
  int32 NumComponents() const { return static_cast<int32>(components_.size()); }
  Component &GetComponent(int32 i) { return *components_[i]; }
  const Component &GetComponent(int32 i) const { return *components_[i]; }

  /// Output shape for an input shape; throws naming the offending layer.
  Shape OutputShape(const Shape &in) const;

  /// Forward pass.  Dropout masks are drawn from an mt19937_64 seeded with
  /// 'seed', so the result is a pure function of (weights, input, seed).
  void Propagate(const Tensor &in, Tensor *out, bool training,
                 uint64_t seed = 0);
  /// Backward pass for the most recent Propagate.  Parameter gradients are
  /// accumulated; in_diff may be null.
  void Backpropagate(const Tensor &out_diff, Tensor *in_diff = nullptr);

  std::vector<ParamRef> Params();
  size_t NumParams();
  void ZeroGrad();
  /// Initializes all parameters from one generator, layer by layer.
  void InitParams(uint64_t seed);

  /// One descriptor per line, e.g. "conv2d 1 16 3 3".
  std::string Architecture() const;
  /// 64-bit FNV-1a of Architecture().
  uint64_t ArchitectureHash() const;

  /// Binary container: magic, version, architecture hash, component
  /// descriptors, then raw little-endian parameter and buffer arrays.
  void Write(std::ostream &os) const;
  static Nnet Read(std::istream &is);

 private:
  std::vector<std::unique_ptr<Component>> components_;
  std::vector<Tensor> activations_;  // scratch between layers
};

uint64_t Fnv1a64(const std::string &s);

}  // namespace nn
}  // namespace sed

#endif  // SED_NN_NNET_H_
