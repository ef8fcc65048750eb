// Copyright 2026 The ANT Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANT_QUANTIZE_HPP_
#define ANT_QUANTIZE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ant/numeric_type.hpp"
#include "ant/tensor.hpp"

namespace ant {

// Scale factors for one tensor. A single scale means per-tensor granularity;
// otherwise there is one scale per index of `axis` (per-channel, weights).
struct QuantScheme {
  NumericType ntype;
  std::vector<double> scales{1.0};
  std::optional<int> axis;

  static QuantScheme per_tensor(const NumericType& type, double scale) { return {type, {scale}, {}}; }
  static QuantScheme per_channel(const NumericType& type, std::vector<double> scales, int axis) {
    return {type, std::move(scales), axis};
  }

  // Throws if a scale is non-positive/non-finite or the scale count does not
  // cover `shape` along the axis.
  void validate(const Shape& shape) const;

  bool operator==(const QuantScheme&) const = default;
};

struct QTensor {
  Shape shape;
  std::vector<std::uint8_t> codes;  // one code per element, LSB-aligned
  QuantScheme scheme;

  void validate() const;
  bool operator==(const QTensor&) const = default;
};

// w_hat = s * Dequant(Clamp(Quant(w / s))). Codes are what gets stored.
QTensor quantize(const Tensor& tensor, const QuantScheme& scheme);
Tensor dequantize(const QTensor& q);

// Mean of squared element-wise differences. 0 for empty inputs.
double mse(std::span<const float> a, std::span<const float> b);
double mse(const Tensor& a, const Tensor& b);

// Mean of squares; used to normalize MSE across tensors of different scale.
double mean_square(std::span<const float> a);

}  // namespace ant

#endif  // ANT_QUANTIZE_HPP_
