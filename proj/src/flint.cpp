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

#include "ant/flint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ant/error.hpp"

namespace ant {
namespace {

constexpr std::uint32_t low_mask(int bits) { return (std::uint32_t{1} << bits) - 1; }

void check_code(const FlintCode& code) {
  if (code.width < kMinFlintWidth || code.width > kMaxFlintWidth) {
    throw DomainError("flint width " + std::to_string(code.width) + " outside [3, 8]");
  }
  if (code.bits > low_mask(code.width)) {
    throw DomainError("flint code " + std::to_string(code.bits) + " does not fit in " +
                      std::to_string(code.width) + " bits");
  }
}

// Magnitude helpers operate on an unsigned flint of `width` bits; signed
// codes pass width - 1. Width may be as small as 2 (signed 3-bit).
std::uint32_t encode_magnitude(std::uint64_t magnitude, int width) {
  if (magnitude == 0) return 0;
  int interval = interval_index(magnitude, width);
  ExponentCode exp = exponent_code(width, interval);
  const std::uint64_t floor_value = std::uint64_t{1} << (interval - 1);
  const std::uint64_t rem = magnitude - floor_value;
  // mantissa = round((magnitude / 2^(interval-1) - 1) * 2^mb), done exactly.
  std::uint64_t mantissa;
  if (exp.mantissa_bits >= interval - 1) {
    mantissa = rem << (exp.mantissa_bits - (interval - 1));
  } else {
    const int shift = interval - 1 - exp.mantissa_bits;
    mantissa = (rem + (std::uint64_t{1} << (shift - 1))) >> shift;
  }
  if (mantissa == (std::uint64_t{1} << exp.mantissa_bits)) {
    // Mantissa rounded up past the interval: carry into the next one.
    ++interval;
    exp = exponent_code(width, interval);
    mantissa = 0;
  }
  return (exp.bits << exp.mantissa_bits) | static_cast<std::uint32_t>(mantissa);
}

DecodedPair decode_int_magnitude(std::uint32_t bits, int width) {
  const int field = width - 1;
  const std::uint32_t msb = (bits >> field) & 1U;
  const std::uint32_t low = bits & low_mask(field);
  if (msb == 0) return {static_cast<std::int64_t>(low), 0};
  if (low == 0) return {1, 2 * field};
  return {static_cast<std::int64_t>(low) << 1, 2 * leading_zeros(low, field)};
}

FloatFields decode_float_magnitude(std::uint32_t bits, int width) {
  const int field = width - 1;
  const std::uint32_t msb = (bits >> field) & 1U;
  const std::uint32_t low = bits & low_mask(field);
  if (msb == 0 && low == 0) return {};
  const int lzd = leading_zeros(low, field);
  const int interval = msb ? width + lzd : field - lzd;
  // Shifting past the field drops the leading one; keep field bits only.
  const std::uint32_t mantissa =
      static_cast<std::uint32_t>((std::uint64_t{low} << (lzd + 1)) & low_mask(field));
  FloatFields out;
  out.exponent = interval - 1;
  out.fraction = 1.0 + std::ldexp(static_cast<double>(mantissa), -field);
  return out;
}

}  // namespace

double FloatFields::value() const {
  if (fraction == 0.0) return 0.0;
  const double magnitude = std::ldexp(fraction, exponent);
  return negative ? -magnitude : magnitude;
}

int leading_zeros(std::uint32_t field, int field_width) {
  for (int bit = field_width - 1; bit >= 0; --bit) {
    if ((field >> bit) & 1U) return field_width - 1 - bit;
  }
  return field_width;
}

int interval_index(std::uint64_t magnitude, int width) {
  if (width < 2 || width > kMaxFlintWidth) {
    throw DomainError("flint width " + std::to_string(width) + " unsupported");
  }
  const std::uint64_t max = std::uint64_t{1} << (2 * width - 2);
  if (magnitude == 0 || magnitude > max) {
    throw DomainError("interval_index: magnitude " + std::to_string(magnitude) +
                      " outside [1, " + std::to_string(max) + "]");
  }
  int index = 0;
  while (magnitude != 0) {
    magnitude >>= 1;
    ++index;
  }
  return index;
}

ExponentCode exponent_code(int width, int interval) {
  if (width < 2 || width > kMaxFlintWidth) {
    throw DomainError("flint width " + std::to_string(width) + " unsupported");
  }
  if (interval < 1 || interval > 2 * width - 1) {
    throw DomainError("exponent_code: interval " + std::to_string(interval) + " outside [1, " +
                      std::to_string(2 * width - 1) + "]");
  }
  ExponentCode code;
  if (interval == width) {
    code.bits = 0b11;
    code.length = 2;
  } else if (interval < width) {
    code.bits = 1;
    code.length = width - interval + 1;
  } else if (interval < 2 * width - 1) {
    code.bits = (std::uint32_t{1} << (interval - width + 1)) | 1U;
    code.length = interval - width + 2;
  } else {
    code.bits = std::uint32_t{1} << (width - 1);
    code.length = width;
  }
  code.mantissa_bits = width - code.length;
  return code;
}

std::uint64_t flint_max_magnitude(int width, bool is_signed) {
  const int m = is_signed ? width - 1 : width;
  return std::uint64_t{1} << (2 * m - 2);
}

FlintCode flint_encode(double value, int width, double scale, bool is_signed) {
  if (width < kMinFlintWidth || width > kMaxFlintWidth) {
    throw DomainError("flint width " + std::to_string(width) + " outside [3, 8]");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("flint_encode: scale must be positive and finite");
  }
  if (std::isnan(value)) throw DomainError("flint_encode: NaN input");

  const int magnitude_width = is_signed ? width - 1 : width;
  const double max = static_cast<double>(flint_max_magnitude(width, is_signed));
  double x = value / scale;
  const bool negative = is_signed && x < 0.0;
  if (!is_signed && x < 0.0) x = 0.0;
  // std::round rounds half away from zero.
  const double rounded = std::min(std::round(std::fabs(x)), max);
  const auto magnitude = static_cast<std::uint64_t>(rounded);

  FlintCode code{0, width, is_signed};
  if (magnitude == 0) return code;
  code.bits = encode_magnitude(magnitude, magnitude_width);
  if (negative) code.bits |= std::uint32_t{1} << (width - 1);
  return code;
}

FloatFields flint_decode_float(FlintCode code) {
  check_code(code);
  if (!code.is_signed) return decode_float_magnitude(code.bits, code.width);
  const int field = code.width - 1;
  FloatFields out = decode_float_magnitude(code.bits & low_mask(field), field);
  out.negative = ((code.bits >> field) & 1U) != 0 && out.fraction != 0.0;
  return out;
}

DecodedPair flint_decode_int(FlintCode code) {
  check_code(code);
  if (!code.is_signed) return decode_int_magnitude(code.bits, code.width);
  const int field = code.width - 1;
  DecodedPair out = decode_int_magnitude(code.bits & low_mask(field), field);
  if ((code.bits >> field) & 1U) out.base = -out.base;
  return out;
}

double flint_value(FlintCode code) { return flint_decode_float(code).value(); }

std::vector<double> flint_values(int width, bool is_signed) {
  std::vector<double> values;
  values.reserve(std::size_t{1} << width);
  for (std::uint32_t bits = 0; bits <= low_mask(width); ++bits) {
    values.push_back(flint_value({bits, width, is_signed}));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace ant
