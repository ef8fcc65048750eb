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

#ifndef ANT_NUMERIC_TYPE_HPP_
#define ANT_NUMERIC_TYPE_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ant {

enum class TypeKind { kInt, kPot, kFlint, kFloat };

std::string_view kind_name(TypeKind kind);
TypeKind parse_kind(std::string_view name);

// One primitive low-bit type. Values are unit-scaled: the real value of a
// code is scale * value(code).
//
//   int    two's complement (signed) or plain binary (unsigned)
//   pot    code k > 0 is 2^(k-1), code 0 is zero; signed is sign-magnitude
//   flint  first-one encoded, see flint.hpp
//   float  [sign | E | M] with subnormals at E == 0 and bias 1 - M, so the
//          subnormal step is exactly 1 and every value is an integer
struct NumericType {
  TypeKind kind = TypeKind::kInt;
  int width = 4;
  bool is_signed = true;
  int exponent_bits = 0;  // float only
  int mantissa_bits = 0;  // float only

  static NumericType Int(int width, bool is_signed) { return {TypeKind::kInt, width, is_signed}; }
  static NumericType Pot(int width, bool is_signed) { return {TypeKind::kPot, width, is_signed}; }
  static NumericType Flint(int width, bool is_signed) {
    return {TypeKind::kFlint, width, is_signed};
  }
  static NumericType Float(int width, bool is_signed, int exponent_bits, int mantissa_bits) {
    return {TypeKind::kFloat, width, is_signed, exponent_bits, mantissa_bits};
  }
  // Signed 4-bit floats default to E2M1; otherwise split evenly with the
  // spare bit going to the exponent.
  static NumericType DefaultFloat(int width, bool is_signed);

  // Throws DomainError when the descriptor is inconsistent.
  void validate() const;

  // Canonical short name, e.g. "flint4s", "int8u", "float4s_e2m1".
  std::string name() const;
  static NumericType parse(std::string_view name);

  auto operator<=>(const NumericType&) const = default;
};

// Code <-> unit value mapping for one NumericType. Decoding is a table
// lookup; encoding rounds to the type's grid and clamps to its range.
class Codec {
 public:
  explicit Codec(const NumericType& type);

  const NumericType& type() const { return type_; }

  // `units` is the real value already divided by the scale.
  std::uint8_t encode(double units) const;
  double decode(std::uint32_t code) const { return table_.at(code); }

  double max_magnitude() const { return max_magnitude_; }
  double min_value() const { return min_value_; }
  double max_value() const { return max_value_; }

  // Indexed by code.
  std::span<const double> code_values() const { return table_; }

 private:
  std::uint8_t encode_float(double units) const;
  std::uint8_t encode_pot(double units) const;

  NumericType type_;
  std::vector<double> table_;
  // float only: non-negative grid points paired with their magnitude code.
  std::vector<std::pair<double, std::uint8_t>> magnitudes_;
  double max_magnitude_ = 0.0;
  double min_value_ = 0.0;
  double max_value_ = 0.0;
};

// Strictly increasing list of every representable unit value.
std::vector<double> enumerate_values(const NumericType& type);

}  // namespace ant

#endif  // ANT_NUMERIC_TYPE_HPP_
