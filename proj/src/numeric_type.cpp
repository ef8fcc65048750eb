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

#include "ant/numeric_type.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ant/error.hpp"
#include "ant/flint.hpp"

namespace ant {
namespace {

constexpr std::uint32_t low_mask(int bits) { return (std::uint32_t{1} << bits) - 1; }

double pot_level(std::uint32_t k) { return k == 0 ? 0.0 : std::ldexp(1.0, static_cast<int>(k) - 1); }

double unit_value(const NumericType& t, std::uint32_t code) {
  const int magnitude_bits = t.is_signed ? t.width - 1 : t.width;
  const bool negative = t.is_signed && ((code >> (t.width - 1)) & 1U);
  const std::uint32_t magnitude = code & low_mask(magnitude_bits);
  switch (t.kind) {
    case TypeKind::kInt:
      if (negative) return static_cast<double>(static_cast<std::int64_t>(code) - (std::int64_t{1} << t.width));
      return static_cast<double>(code);
    case TypeKind::kPot:
      return negative ? -pot_level(magnitude) : pot_level(magnitude);
    case TypeKind::kFlint:
      return flint_value({code, t.width, t.is_signed});
    case TypeKind::kFloat: {
      const std::uint32_t e = (magnitude >> t.mantissa_bits) & low_mask(t.exponent_bits);
      const std::uint32_t m = magnitude & low_mask(t.mantissa_bits);
      const double v = e == 0 ? static_cast<double>(m)
                              : std::ldexp(static_cast<double>((1U << t.mantissa_bits) + m),
                                           static_cast<int>(e) - 1);
      return negative ? -v : v;
    }
  }
  return 0.0;
}

}  // namespace

std::string_view kind_name(TypeKind kind) {
  switch (kind) {
    case TypeKind::kInt: return "int";
    case TypeKind::kPot: return "pot";
    case TypeKind::kFlint: return "flint";
    case TypeKind::kFloat: return "float";
  }
  return "?";
}

TypeKind parse_kind(std::string_view name) {
  if (name == "int") return TypeKind::kInt;
  if (name == "pot") return TypeKind::kPot;
  if (name == "flint") return TypeKind::kFlint;
  if (name == "float") return TypeKind::kFloat;
  throw DomainError("unknown numeric type kind '" + std::string(name) + "'");
}

NumericType NumericType::DefaultFloat(int width, bool is_signed) {
  if (width == 4 && is_signed) return Float(4, true, 2, 1);
  const int bits = width - (is_signed ? 1 : 0);
  const int exponent = (bits + 1) / 2;
  return Float(width, is_signed, exponent, bits - exponent);
}

void NumericType::validate() const {
  if (width < 3 || width > 8) {
    throw DomainError("numeric type width " + std::to_string(width) + " outside [3, 8]");
  }
  if (kind == TypeKind::kFloat) {
    if (exponent_bits < 1 || mantissa_bits < 0 ||
        exponent_bits + mantissa_bits + (is_signed ? 1 : 0) != width) {
      throw DomainError("float split e" + std::to_string(exponent_bits) + "m" +
                        std::to_string(mantissa_bits) + " does not fill " + std::to_string(width) +
                        " bits");
    }
  } else if (exponent_bits != 0 || mantissa_bits != 0) {
    throw DomainError("exponent/mantissa split is only meaningful for float");
  }
}

std::string NumericType::name() const {
  std::string out(kind_name(kind));
  out += std::to_string(width);
  out += is_signed ? 's' : 'u';
  if (kind == TypeKind::kFloat) {
    out += "_e" + std::to_string(exponent_bits) + "m" + std::to_string(mantissa_bits);
  }
  return out;
}

NumericType NumericType::parse(std::string_view name) {
  const auto digit = std::find_if(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (digit == name.end()) throw DomainError("cannot parse numeric type '" + std::string(name) + "'");
  NumericType t;
  t.kind = parse_kind(name.substr(0, static_cast<std::size_t>(digit - name.begin())));
  std::size_t pos = static_cast<std::size_t>(digit - name.begin());
  t.width = 0;
  while (pos < name.size() && name[pos] >= '0' && name[pos] <= '9') t.width = t.width * 10 + (name[pos++] - '0');
  if (pos >= name.size() || (name[pos] != 's' && name[pos] != 'u')) {
    throw DomainError("numeric type '" + std::string(name) + "' lacks an s/u suffix");
  }
  t.is_signed = name[pos++] == 's';
  if (t.kind == TypeKind::kFloat) {
    if (pos == name.size()) {
      t = DefaultFloat(t.width, t.is_signed);
    } else {
      int e = 0, m = 0;
      if (std::sscanf(std::string(name.substr(pos)).c_str(), "_e%dm%d", &e, &m) != 2) {
        throw DomainError("cannot parse float split in '" + std::string(name) + "'");
      }
      t.exponent_bits = e;
      t.mantissa_bits = m;
    }
  } else if (pos != name.size()) {
    throw DomainError("trailing characters in numeric type '" + std::string(name) + "'");
  }
  t.validate();
  return t;
}

Codec::Codec(const NumericType& type) : type_(type) {
  type_.validate();
  const std::uint32_t count = std::uint32_t{1} << type_.width;
  table_.resize(count);
  for (std::uint32_t code = 0; code < count; ++code) table_[code] = unit_value(type_, code);
  min_value_ = *std::min_element(table_.begin(), table_.end());
  max_value_ = *std::max_element(table_.begin(), table_.end());
  max_magnitude_ = std::max(std::fabs(min_value_), max_value_);
  if (type_.kind == TypeKind::kFloat) {
    const std::uint32_t magnitude_codes = std::uint32_t{1} << (type_.width - (type_.is_signed ? 1 : 0));
    for (std::uint32_t code = 0; code < magnitude_codes; ++code) {
      magnitudes_.emplace_back(table_[code], static_cast<std::uint8_t>(code));
    }
    std::sort(magnitudes_.begin(), magnitudes_.end());
  }
}

std::uint8_t Codec::encode(double units) const {
  if (std::isnan(units)) throw DomainError("cannot encode NaN");
  switch (type_.kind) {
    case TypeKind::kInt: {
      const double r = std::clamp(std::round(units), min_value_, max_value_);
      return static_cast<std::uint8_t>(static_cast<std::int64_t>(r) & low_mask(type_.width));
    }
    case TypeKind::kPot:
      return encode_pot(units);
    case TypeKind::kFlint:
      return static_cast<std::uint8_t>(flint_encode(units, type_.width, 1.0, type_.is_signed).bits);
    case TypeKind::kFloat:
      return encode_float(units);
  }
  return 0;
}

std::uint8_t Codec::encode_pot(double units) const {
  if (!type_.is_signed && units < 0.0) units = 0.0;
  const double magnitude = std::fabs(units);
  if (magnitude < 0.5) return 0;
  const int magnitude_bits = type_.is_signed ? type_.width - 1 : type_.width;
  const double k_max = static_cast<double>(low_mask(magnitude_bits));
  const double k = std::clamp(std::round(std::log2(magnitude)) + 1.0, 1.0, k_max);
  auto code = static_cast<std::uint32_t>(k);
  if (units < 0.0) code |= 1U << (type_.width - 1);
  return static_cast<std::uint8_t>(code);
}

std::uint8_t Codec::encode_float(double units) const {
  if (!type_.is_signed && units < 0.0) units = 0.0;
  const double magnitude = std::fabs(units);
  auto upper = std::lower_bound(magnitudes_.begin(), magnitudes_.end(), magnitude,
                                [](const auto& entry, double v) { return entry.first < v; });
  std::uint32_t code;
  if (upper == magnitudes_.end()) {
    code = magnitudes_.back().second;
  } else if (upper == magnitudes_.begin()) {
    code = upper->second;
  } else {
    const auto lower = std::prev(upper);
    // Ties go to the larger magnitude.
    code = (magnitude - lower->first < upper->first - magnitude) ? lower->second : upper->second;
  }
  if (units < 0.0 && code != 0) code |= 1U << (type_.width - 1);
  return static_cast<std::uint8_t>(code);
}

std::vector<double> enumerate_values(const NumericType& type) {
  Codec codec(type);
  std::vector<double> values(codec.code_values().begin(), codec.code_values().end());
  for (double& v : values) v = v + 0.0;  // fold -0 into +0
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace ant
