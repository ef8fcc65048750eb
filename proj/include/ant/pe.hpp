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

#ifndef ANT_PE_HPP_
#define ANT_PE_HPP_

// Bit-true model of the integer-based processing element. Both operands are
// decoded into (base, exponent) pairs at the array boundary; the PE does
//   product = (base_a * base_b) << (exp_a + exp_b)
//   acc     = acc + product
// Signed magnitudes become two's complement during decode, so the multiplier
// only ever sees plain signed integers.

#include <array>
#include <cstdint>
#include <span>

#include "ant/flint.hpp"
#include "ant/numeric_type.hpp"
#include "ant/quantize.hpp"

namespace ant {

enum class OverflowPolicy {
  kSaturate,  // clamp to the accumulator range and flag
  kWrap,      // two's-complement wrap and flag
  kWiden,     // keep the exact sum and flag
};

enum class ProductPolicy {
  kFlag,    // keep the exact product and flag
  kStrict,  // throw DatapathError
};

struct MacState {
  std::int64_t accumulator = 0;
  int acc_width = 32;
  int product_width = 16;  // widened to 32 whenever a PoT operand is involved
  OverflowPolicy overflow_policy = OverflowPolicy::kWiden;
  ProductPolicy product_policy = ProductPolicy::kFlag;
  std::uint64_t acc_overflows = 0;
  std::uint64_t product_overflows = 0;

  bool overflowed() const { return acc_overflows != 0 || product_overflows != 0; }
  bool operator==(const MacState&) const = default;
};

struct PeOperand {
  DecodedPair pair;
  NumericType source;
};

// Int-path decode for every primitive type:
//   int   -> (value, 0)
//   pot   -> (+-1, k - 1), or (0, 0) for code 0
//   flint -> flint_decode_int
//   float -> (2^M + m, e - 1) for normals, (m, 0) for subnormals
PeOperand decode_operand(const NumericType& type, std::uint32_t code);

// Width in bits the product path uses for this operand pair.
int effective_product_width(const MacState& state, const PeOperand& a, const PeOperand& b);

// Shifted product of two decoded operands. Throws DatapathError when the
// result cannot be represented in 63 bits at all.
std::int64_t pe_product(const PeOperand& a, const PeOperand& b);

MacState mac_step(MacState state, const PeOperand& a, const PeOperand& b);

// Number of mac_step calls made on this thread. Lets tests check the 8-bit
// composition uses nothing but PE multiplies.
std::uint64_t mac_step_count();

struct Mul8Trace {
  std::array<PeOperand, 2> a_parts;  // {hi nibble << 4, lo nibble}
  std::array<PeOperand, 2> b_parts;
  std::array<std::int64_t, 4> partials{};  // hi*hi, hi*lo, lo*hi, lo*lo
  std::uint64_t pe_multiplies = 0;
};

// 8-bit int multiply composed from four 4-bit PE multiplies plus one adder.
// Each operand splits into (hi, 4) and (lo, 0); in signed mode hi is the
// arithmetic high nibble and lo the unsigned low nibble.
std::int64_t mul8_via_four(int a, int b, bool is_signed, Mul8Trace* trace = nullptr);

struct DotResult {
  double value = 0.0;  // accumulator * scale_a * scale_b
  MacState state;
};

// Integer-domain dot product of two code rows followed by one rescale.
DotResult dot_product(std::span<const std::uint8_t> codes_a, const NumericType& type_a, double scale_a,
                      std::span<const std::uint8_t> codes_b, const NumericType& type_b, double scale_b,
                      MacState init = {});

struct GemmResult {
  Tensor output;  // [M, N], high precision
  std::uint64_t acc_overflows = 0;
  std::uint64_t product_overflows = 0;
};

// output[m, n] = sum_k act[m, k] * weight[n, k]. Activations are per-tensor;
// weights may carry one scale per output row n (axis 0).
GemmResult quantized_gemm(const QTensor& activations, const QTensor& weights, const MacState& init = {});

}  // namespace ant

#endif  // ANT_PE_HPP_
