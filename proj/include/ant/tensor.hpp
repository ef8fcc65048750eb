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

#ifndef ANT_TENSOR_HPP_
#define ANT_TENSOR_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ant {

using Shape = std::vector<std::int64_t>;

// Product of the dimensions; throws InputError on a negative dimension.
std::int64_t element_count(const Shape& shape);

std::string shape_string(const Shape& shape);

// Dense row-major f32 tensor.
struct Tensor {
  std::string name;
  Shape shape;
  std::vector<float> data;

  Tensor() = default;
  Tensor(Shape s, std::vector<float> values, std::string n = {});

  std::size_t size() const { return data.size(); }
  bool empty() const { return data.empty(); }
};

// Index arithmetic for slices along one axis: element (outer, channel, inner)
// lives at (outer * channels + channel) * inner_size + inner.
struct AxisLayout {
  std::int64_t outer = 1;
  std::int64_t channels = 1;
  std::int64_t inner = 1;

  // No axis means the whole tensor is a single slice.
  static AxisLayout make(const Shape& shape, std::optional<int> axis);

  template <typename Fn>
  void for_each_in_channel(std::int64_t channel, Fn&& fn) const {
    for (std::int64_t o = 0; o < outer; ++o) {
      const std::int64_t base = (o * channels + channel) * inner;
      for (std::int64_t i = 0; i < inner; ++i) fn(static_cast<std::size_t>(base + i));
    }
  }
};

}  // namespace ant

#endif  // ANT_TENSOR_HPP_
