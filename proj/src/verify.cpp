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

#include "ant/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ant/flint.hpp"
#include "ant/numeric_type.hpp"
#include "ant/pe.hpp"

namespace ant {
namespace {

CheckResult table_check() {
  const double expect[16] = {0, 1, 2, 3, 4, 5, 6, 7, 64, 32, 16, 24, 8, 10, 12, 14};
  CheckResult r{"flint4 value table", true, "16 codes"};
  for (std::uint32_t code = 0; code < 16; ++code) {
    const FlintCode c{code, 4, false};
    const DecodedPair p = flint_decode_int(c);
    if (flint_decode_float(c).value() != expect[code] || std::ldexp(static_cast<double>(p.base), p.exponent) != expect[code]) {
      r.passed = false;
      r.detail = "code " + std::to_string(code) + " decodes wrong";
      return r;
    }
  }
  const std::vector<double> signed_set = {-16, -8, -6, -4, -3, -2, -1, 0, 1, 2, 3, 4, 6, 8, 16};
  if (flint_values(4, true) != signed_set) {
    r.passed = false;
    r.detail = "signed 4-bit value set differs";
  }
  return r;
}

CheckResult encoder_example() {
  const FlintCode c = flint_encode(11.0, 4, 1.0, false);
  const bool ok = c.bits == 0b1110 && flint_value(c) == 12.0;
  return {"flint encode 11 -> 1110", ok, "value " + std::to_string(flint_value(c))};
}

CheckResult decoder_agreement() {
  std::size_t codes = 0;
  for (int w = kMinFlintWidth; w <= kMaxFlintWidth; ++w) {
    for (bool s : {false, true}) {
      for (std::uint32_t bits = 0; bits < (1u << w); ++bits, ++codes) {
        const FlintCode c{bits, w, s};
        const DecodedPair p = flint_decode_int(c);
        if (flint_decode_float(c).value() != std::ldexp(static_cast<double>(p.base), p.exponent)) {
          return {"flint decoder agreement", false,
                  "width " + std::to_string(w) + " code " + std::to_string(bits)};
        }
      }
    }
  }
  return {"flint decoder agreement", true, std::to_string(codes) + " codes, widths 3-8"};
}

CheckResult nearest_value() {
  std::size_t ties = 0, checked = 0;
  for (bool s : {false, true}) {
    const std::vector<double> values = flint_values(4, s);
    const double top = values.back();
    for (double e = s ? -top : 0.0; e <= top; e += 1.0, ++checked) {
      const double got = flint_value(flint_encode(e, 4, 1.0, s));
      double best = INFINITY;
      for (double v : values) best = std::min(best, std::fabs(v - e));
      const auto at_best = std::count_if(values.begin(), values.end(),
                                         [&](double v) { return std::fabs(v - e) == best; });
      if (at_best > 1) ++ties;
      if (std::fabs(got - e) != best) {
        return {"flint4 nearest value", false, "input " + std::to_string(e) + " encoded to " + std::to_string(got)};
      }
    }
  }
  return {"flint4 nearest value", true,
          std::to_string(checked) + " integers, " + std::to_string(ties) + " half-way ties"};
}

CheckResult mac_exhaustive() {
  std::vector<NumericType> types;
  for (bool s : {false, true}) {
    types.push_back(NumericType::Int(4, s));
    types.push_back(NumericType::Pot(4, s));
    types.push_back(NumericType::Flint(4, s));
  }
  std::size_t pairs = 0;
  for (const NumericType& ta : types) {
    const Codec ca(ta);
    for (const NumericType& tb : types) {
      const Codec cb(tb);
      for (std::uint32_t a = 0; a < 16; ++a) {
        for (std::uint32_t b = 0; b < 16; ++b, ++pairs) {
          const MacState st = mac_step({}, decode_operand(ta, a), decode_operand(tb, b));
          if (static_cast<double>(st.accumulator) != ca.decode(a) * cb.decode(b) || st.overflowed()) {
            return {"4-bit MAC exhaustive", false, ta.name() + " x " + tb.name() + " codes " +
                                                       std::to_string(a) + "," + std::to_string(b)};
          }
        }
      }
    }
  }
  return {"4-bit MAC exhaustive", true, std::to_string(pairs) + " code pairs"};
}

CheckResult mul8_exhaustive() {
  for (int a = 0; a < 256; ++a)
    for (int b = 0; b < 256; ++b)
      if (mul8_via_four(a, b, false) != a * b) {
        return {"8-bit multiply via four 4-bit PEs", false, "unsigned " + std::to_string(a) + "*" + std::to_string(b)};
      }
  for (int a = -128; a < 128; ++a)
    for (int b = -128; b < 128; ++b)
      if (mul8_via_four(a, b, true) != a * b) {
        return {"8-bit multiply via four 4-bit PEs", false, "signed " + std::to_string(a) + "*" + std::to_string(b)};
      }
  return {"8-bit multiply via four 4-bit PEs", true, "131072 pairs"};
}

}  // namespace

std::vector<CheckResult> run_oracle_suite() {
  return {table_check(), encoder_example(), decoder_agreement(), nearest_value(), mac_exhaustive(), mul8_exhaustive()};
}

}  // namespace ant
