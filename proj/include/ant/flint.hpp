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

#ifndef ANT_FLINT_HPP_
#define ANT_FLINT_HPP_

// Flint: a fixed-length type whose exponent field uses first-one encoding.
// Small and large magnitudes get few mantissa bits, mid-range magnitudes get
// many. A b-bit unsigned flint spans [0, 2^(2b-2)].
//
// Signed flint codes are sign-magnitude: the MSB is the sign and the lower
// b-1 bits hold an unsigned (b-1)-bit flint magnitude.

#include <cstdint>
#include <vector>

namespace ant {

inline constexpr int kMinFlintWidth = 3;
inline constexpr int kMaxFlintWidth = 8;

struct FlintCode {
  std::uint32_t bits = 0;  // LSB-aligned
  int width = 4;
  bool is_signed = false;

  bool operator==(const FlintCode&) const = default;
};

// value = base * 2^exponent. Consumed by the integer MAC datapath.
struct DecodedPair {
  std::int64_t base = 0;
  int exponent = 0;

  bool operator==(const DecodedPair&) const = default;
};

// Float-path decode result: value = (-1)^negative * 2^exponent * fraction,
// with fraction in [1, 2), or fraction == 0 for a zero code.
struct FloatFields {
  int exponent = 0;  // exponent bias of -1 already applied
  double fraction = 0.0;
  bool negative = false;

  double value() const;
};

// First-one exponent code for interval `interval` of a `width`-bit flint.
struct ExponentCode {
  std::uint32_t bits = 0;
  int length = 0;
  int mantissa_bits = 0;  // width - length
};

// Number of leading zeros within the low `field_width` bits of `field`.
// Returns field_width when field is zero.
int leading_zeros(std::uint32_t field, int field_width);

// floor(log2(magnitude)) + 1 for 1 <= magnitude <= 2^(2*width-2).
// Throws DomainError otherwise.
int interval_index(std::uint64_t magnitude, int width);

// Exponent code for interval 1 <= interval <= 2*width-1. Throws DomainError.
ExponentCode exponent_code(int width, int interval);

// Largest magnitude representable by a flint of this shape.
std::uint64_t flint_max_magnitude(int width, bool is_signed);

// Element-wise encoder: integer-quantize |value|/scale (round half away from
// zero), clamp, split into interval + mantissa, round the mantissa (carrying
// into the next interval on overflow). Unsigned encodes clamp negatives to 0.
// Requires scale > 0 and width in [3, 8].
FlintCode flint_encode(double value, int width, double scale, bool is_signed);

// Float-style decoder (leading-zero count + shift).
FloatFields flint_decode_float(FlintCode code);

// Integer-style decoder (base integer + even shift amount). Signed codes come
// back with a two's-complement base.
DecodedPair flint_decode_int(FlintCode code);

double flint_value(FlintCode code);

// Strictly increasing representable values; +0 and -0 collapse into one 0.
std::vector<double> flint_values(int width, bool is_signed);

}  // namespace ant

#endif  // ANT_FLINT_HPP_
