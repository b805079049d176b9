// src/nn/tensor.h

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

#ifndef SED_NN_TENSOR_H_
#define SED_NN_TENSOR_H_

#include <string>
#include <vector>

#include "base/sed-common.h"

namespace sed {
namespace nn {

typedef std::vector<int32> Shape;

std::string ShapeString(const Shape &shape);
size_t ShapeSize(const Shape &shape);

/// Row-major dense tensor.  Network activations are 4-d:
/// (batch, channels, time, mel).
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double value = 0.0)
      : shape_(std::move(shape)), data_(ShapeSize(shape_), value) {}

  const Shape &GetShape() const { return shape_; }
  int32 Dim(int i) const { return shape_[i]; }
  int NumAxes() const { return static_cast<int>(shape_.size()); }
  size_t Size() const { return data_.size(); }

  double *Data() { return data_.data(); }
  const double *Data() const { return data_.data(); }
  std::vector<double> &Values() { return data_; }
  const std::vector<double> &Values() const { return data_; }
  double &operator[](size_t i) { return data_[i]; }
  double operator[](size_t i) const { return data_[i]; }

  /// Element (n, c, h, w) of a 4-d tensor.
  double &At(int32 n, int32 c, int32 h, int32 w) {
    return data_[((static_cast<size_t>(n) * shape_[1] + c) * shape_[2] + h) *
                     shape_[3] + w];
  }
  double At(int32 n, int32 c, int32 h, int32 w) const {
    return data_[((static_cast<size_t>(n) * shape_[1] + c) * shape_[2] + h) *
                     shape_[3] + w];
  }

  void Resize(const Shape &shape, double value = 0.0) {
    shape_ = shape;
    data_.assign(ShapeSize(shape), value);
  }
  void SetZero() { std::fill(data_.begin(), data_.end(), 0.0); }
  bool SameShape(const Tensor &o) const { return shape_ == o.shape_; }

  bool operator==(const Tensor &o) const {
    return shape_ == o.shape_ && data_ == o.data_;
  }

 private:
  Shape shape_;
  std::vector<double> data_;
};

}  // namespace nn
}  // namespace sed

#endif  // SED_NN_TENSOR_H_
