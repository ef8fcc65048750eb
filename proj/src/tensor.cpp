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

#include "ant/tensor.hpp"

#include <sstream>

#include "ant/error.hpp"

namespace ant {

std::int64_t element_count(const Shape& shape) {
  std::int64_t n = 1;
  for (std::int64_t d : shape) {
    if (d < 0) throw InputError("negative dimension in shape " + shape_string(shape));
    n *= d;
  }
  return n;
}

std::string shape_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? ", " : "") << shape[i];
  os << ']';
  return os.str();
}

Tensor::Tensor(Shape s, std::vector<float> values, std::string n)
    : name(std::move(n)), shape(std::move(s)), data(std::move(values)) {
  if (element_count(shape) != static_cast<std::int64_t>(data.size())) {
    throw InputError("tensor shape " + shape_string(shape) + " does not match " +
                     std::to_string(data.size()) + " elements");
  }
}

AxisLayout AxisLayout::make(const Shape& shape, std::optional<int> axis) {
  AxisLayout layout;
  if (!axis) {
    layout.inner = element_count(shape);
    return layout;
  }
  if (*axis < 0 || *axis >= static_cast<int>(shape.size())) {
    throw InputError("axis " + std::to_string(*axis) + " invalid for shape " + shape_string(shape));
  }
  for (int d = 0; d < *axis; ++d) layout.outer *= shape[d];
  layout.channels = shape[*axis];
  for (std::size_t d = *axis + 1; d < shape.size(); ++d) layout.inner *= shape[d];
  return layout;
}

}  // namespace ant
