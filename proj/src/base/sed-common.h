// src/base/sed-common.h

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

#ifndef SED_BASE_SED_COMMON_H_
#define SED_BASE_SED_COMMON_H_

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sed {

typedef int32_t int32;
typedef int64_t int64;

class SedError : public std::runtime_error {
 public:
  explicit SedError(const std::string &msg) : std::runtime_error(msg) {}
};

namespace internal {
inline void StreamAll(std::ostringstream &) {}
template <typename T, typename... Rest>
void StreamAll(std::ostringstream &os, const T &first, const Rest &...rest) {
  os << first;
  StreamAll(os, rest...);
}
}  // namespace internal

/// Throws SedError with the streamed arguments as its message.
template <typename... Args>
[[noreturn]] void Fail(const Args &...args) {
  std::ostringstream os;
  internal::StreamAll(os, args...);
  throw SedError(os.str());
}

#define SED_ASSERT(cond)                                               \
  do {                                                                 \
    if (!(cond))                                                       \
      ::sed::Fail("assertion failed: " #cond " (", __FILE__, ":", __LINE__, \
                  ")");                                                \
  } while (0)

/// Dense row-major matrix of doubles.  Used for spectrograms, NMF factors
/// and label/probability grids; the nn module has its own Tensor.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int32 rows, int32 cols, double value = 0.0)
      : rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * cols, value) {
    SED_ASSERT(rows >= 0 && cols >= 0);
  }

  int32 NumRows() const { return rows_; }
  int32 NumCols() const { return cols_; }
  bool Empty() const { return data_.empty(); }

  double &operator()(int32 r, int32 c) {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  double operator()(int32 r, int32 c) const {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  double *Row(int32 r) { return data_.data() + static_cast<size_t>(r) * cols_; }
  const double *Row(int32 r) const {
    return data_.data() + static_cast<size_t>(r) * cols_;
  }

  double *Data() { return data_.data(); }
  const double *Data() const { return data_.data(); }
  std::vector<double> &Values() { return data_; }
  const std::vector<double> &Values() const { return data_; }

  Matrix Transpose() const {
    Matrix t(cols_, rows_);
    for (int32 r = 0; r < rows_; r++)
      for (int32 c = 0; c < cols_; c++) t(c, r) = (*this)(r, c);
    return t;
  }

  bool operator==(const Matrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  int32 rows_ = 0;
  int32 cols_ = 0;
  std::vector<double> data_;
};

}  // namespace sed

#endif  // SED_BASE_SED_COMMON_H_
