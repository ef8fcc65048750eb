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

#include "ant/quantize.hpp"

#include <cmath>
#include <string>

#include "ant/error.hpp"

namespace ant {

void QuantScheme::validate(const Shape& shape) const {
  ntype.validate();
  if (scales.empty()) throw InputError("quant scheme has no scales");
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw InputError("scale " + std::to_string(s) + " is not positive and finite");
    }
  }
  const AxisLayout layout = AxisLayout::make(shape, axis);
  if (axis ? static_cast<std::int64_t>(scales.size()) != layout.channels : scales.size() != 1) {
    throw InputError("scheme has " + std::to_string(scales.size()) + " scales but shape " +
                     shape_string(shape) + " needs " + std::to_string(axis ? layout.channels : 1));
  }
}

void QTensor::validate() const {
  scheme.validate(shape);
  if (element_count(shape) != static_cast<std::int64_t>(codes.size())) {
    throw InputError("qtensor has " + std::to_string(codes.size()) + " codes for shape " +
                     shape_string(shape));
  }
  const std::uint32_t limit = std::uint32_t{1} << scheme.ntype.width;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] >= limit) {
      throw InputError("code " + std::to_string(codes[i]) + " at index " + std::to_string(i) +
                       " exceeds " + std::to_string(scheme.ntype.width) + " bits");
    }
  }
}

QTensor quantize(const Tensor& tensor, const QuantScheme& scheme) {
  scheme.validate(tensor.shape);
  for (std::size_t i = 0; i < tensor.data.size(); ++i) {
    if (!std::isfinite(tensor.data[i])) {
      throw InputError("non-finite value at index " + std::to_string(i));
    }
    if (!scheme.ntype.is_signed && tensor.data[i] < 0.0F) {
      throw PreconditionError("unsigned type " + scheme.ntype.name() +
                              " given negative value at index " + std::to_string(i));
    }
  }
  const Codec codec(scheme.ntype);
  const AxisLayout layout = AxisLayout::make(tensor.shape, scheme.axis);
  QTensor out{tensor.shape, std::vector<std::uint8_t>(tensor.data.size()), scheme};
  for (std::int64_t c = 0; c < layout.channels; ++c) {
    const double s = scheme.scales[static_cast<std::size_t>(c)];
    layout.for_each_in_channel(c, [&](std::size_t i) {
      out.codes[i] = codec.encode(static_cast<double>(tensor.data[i]) / s);
    });
  }
  return out;
}

Tensor dequantize(const QTensor& q) {
  q.validate();
  const Codec codec(q.scheme.ntype);
  const AxisLayout layout = AxisLayout::make(q.shape, q.scheme.axis);
  Tensor out;
  out.shape = q.shape;
  out.data.resize(q.codes.size());
  for (std::int64_t c = 0; c < layout.channels; ++c) {
    const double s = q.scheme.scales[static_cast<std::size_t>(c)];
    layout.for_each_in_channel(c, [&](std::size_t i) {
      out.data[i] = static_cast<float>(s * codec.decode(q.codes[i]));
    });
  }
  return out;
}

double mse(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw InputError("mse: size mismatch " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  if (a.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

double mse(const Tensor& a, const Tensor& b) {
  if (a.shape != b.shape) {
    throw InputError("mse: shape mismatch " + shape_string(a.shape) + " vs " + shape_string(b.shape));
  }
  return mse(std::span<const float>(a.data), std::span<const float>(b.data));
}

double mean_square(std::span<const float> a) {
  if (a.empty()) return 0.0;
  double sum = 0.0;
  for (float v : a) sum += static_cast<double>(v) * v;
  return sum / static_cast<double>(a.size());
}

}  // namespace ant
