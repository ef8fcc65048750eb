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

#include "ant/pe.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <vector>

#include "ant/error.hpp"

namespace ant {
namespace {

thread_local std::uint64_t g_mac_steps = 0;

constexpr std::uint32_t low_mask(int bits) { return (std::uint32_t{1} << bits) - 1; }

int bit_length(std::uint64_t v) { return 64 - std::countl_zero(v); }

bool fits(std::int64_t v, int width, bool is_signed) {
  if (width >= 64) return true;
  if (!is_signed) return v >= 0 && static_cast<std::uint64_t>(v) < (std::uint64_t{1} << width);
  const std::int64_t lo = -(std::int64_t{1} << (width - 1));
  const std::int64_t hi = (std::int64_t{1} << (width - 1)) - 1;
  return v >= lo && v <= hi;
}

std::int64_t wrap_to(std::int64_t v, int width) {
  const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
  std::uint64_t u = static_cast<std::uint64_t>(v) & mask;
  if (u >> (width - 1)) u |= ~mask;
  return static_cast<std::int64_t>(u);
}

std::vector<PeOperand> operand_table(const NumericType& type) {
  std::vector<PeOperand> table;
  for (std::uint32_t code = 0; code <= low_mask(type.width); ++code) table.push_back(decode_operand(type, code));
  return table;
}

MacState accumulate(std::span<const std::uint8_t> codes_a, const std::vector<PeOperand>& table_a,
                    std::span<const std::uint8_t> codes_b, const std::vector<PeOperand>& table_b,
                    MacState state) {
  for (std::size_t i = 0; i < codes_a.size(); ++i) {
    state = mac_step(state, table_a.at(codes_a[i]), table_b.at(codes_b[i]));
  }
  return state;
}

}  // namespace

PeOperand decode_operand(const NumericType& type, std::uint32_t code) {
  type.validate();
  if (code > low_mask(type.width)) {
    throw DomainError("code " + std::to_string(code) + " exceeds " + type.name());
  }
  const int magnitude_bits = type.is_signed ? type.width - 1 : type.width;
  const bool negative = type.is_signed && ((code >> (type.width - 1)) & 1U);
  const std::uint32_t magnitude = code & low_mask(magnitude_bits);
  PeOperand op{{}, type};
  switch (type.kind) {
    case TypeKind::kInt:
      op.pair.base = negative ? static_cast<std::int64_t>(code) - (std::int64_t{1} << type.width)
                              : static_cast<std::int64_t>(code);
      return op;
    case TypeKind::kPot:
      if (magnitude != 0) op.pair = {negative ? -1 : 1, static_cast<int>(magnitude) - 1};
      return op;
    case TypeKind::kFlint:
      op.pair = flint_decode_int({code, type.width, type.is_signed});
      return op;
    case TypeKind::kFloat: {
      const std::uint32_t e = (magnitude >> type.mantissa_bits) & low_mask(type.exponent_bits);
      const std::uint32_t m = magnitude & low_mask(type.mantissa_bits);
      op.pair = e == 0 ? DecodedPair{static_cast<std::int64_t>(m), 0}
                       : DecodedPair{static_cast<std::int64_t>((1U << type.mantissa_bits) + m),
                                     static_cast<int>(e) - 1};
      if (negative) op.pair.base = -op.pair.base;
      return op;
    }
  }
  return op;
}

int effective_product_width(const MacState& state, const PeOperand& a, const PeOperand& b) {
  const bool pot = a.source.kind == TypeKind::kPot || b.source.kind == TypeKind::kPot;
  return pot ? std::max(state.product_width, 32) : state.product_width;
}

std::int64_t pe_product(const PeOperand& a, const PeOperand& b) {
  const std::int64_t base = a.pair.base * b.pair.base;
  if (base == 0) return 0;
  const int shift = a.pair.exponent + b.pair.exponent;
  const std::uint64_t magnitude = base < 0 ? static_cast<std::uint64_t>(-base) : static_cast<std::uint64_t>(base);
  if (shift < 0 || bit_length(magnitude) + shift > 62) {
    throw DatapathError("product " + std::to_string(base) + " << " + std::to_string(shift) +
                        " exceeds the modeled 63-bit datapath");
  }
  return base * (std::int64_t{1} << shift);
}

MacState mac_step(MacState state, const PeOperand& a, const PeOperand& b) {
  ++g_mac_steps;
  const std::int64_t product = pe_product(a, b);
  const int product_width = effective_product_width(state, a, b);
  const bool signed_path = a.source.is_signed || b.source.is_signed;
  if (!fits(product, product_width, signed_path)) {
    if (state.product_policy == ProductPolicy::kStrict) {
      throw DatapathError("product " + std::to_string(product) + " does not fit the " +
                          std::to_string(product_width) + "-bit product path");
    }
    ++state.product_overflows;
  }
  std::int64_t sum = 0;
  if (__builtin_add_overflow(state.accumulator, product, &sum)) {
    throw DatapathError("accumulator exceeded 64 bits");
  }
  if (!fits(sum, state.acc_width, true)) {
    ++state.acc_overflows;
    switch (state.overflow_policy) {
      case OverflowPolicy::kSaturate: {
        const std::int64_t hi = (std::int64_t{1} << (state.acc_width - 1)) - 1;
        sum = std::clamp(sum, -hi - 1, hi);
        break;
      }
      case OverflowPolicy::kWrap:
        sum = wrap_to(sum, state.acc_width);
        break;
      case OverflowPolicy::kWiden:
        break;
    }
  }
  state.accumulator = sum;
  return state;
}

std::uint64_t mac_step_count() { return g_mac_steps; }

std::int64_t mul8_via_four(int a, int b, bool is_signed, Mul8Trace* trace) {
  const int lo = is_signed ? -128 : 0;
  const int hi = is_signed ? 127 : 255;
  if (a < lo || a > hi || b < lo || b > hi) {
    throw DomainError("mul8_via_four: operand outside the 8-bit " +
                      std::string(is_signed ? "signed" : "unsigned") + " range");
  }
  const NumericType high_type = NumericType::Int(4, is_signed);
  const NumericType low_type = NumericType::Int(4, false);
  // a >> 4 is an arithmetic shift for negative ints in C++20.
  const std::array<PeOperand, 2> a_parts{PeOperand{{a >> 4, 4}, high_type}, PeOperand{{a & 0xF, 0}, low_type}};
  const std::array<PeOperand, 2> b_parts{PeOperand{{b >> 4, 4}, high_type}, PeOperand{{b & 0xF, 0}, low_type}};

  const std::uint64_t before = mac_step_count();
  std::array<std::int64_t, 4> partials{};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      MacState pe;
      pe.product_policy = ProductPolicy::kStrict;
      partials[i * 2 + j] = mac_step(pe, a_parts[i], b_parts[j]).accumulator;
    }
  }
  // The extra adder.
  const std::int64_t sum = partials[0] + partials[1] + partials[2] + partials[3];
  if (trace) {
    trace->a_parts = a_parts;
    trace->b_parts = b_parts;
    trace->partials = partials;
    trace->pe_multiplies = mac_step_count() - before;
  }
  return sum;
}

DotResult dot_product(std::span<const std::uint8_t> codes_a, const NumericType& type_a, double scale_a,
                      std::span<const std::uint8_t> codes_b, const NumericType& type_b, double scale_b,
                      MacState init) {
  if (codes_a.size() != codes_b.size()) {
    throw InputError("dot_product: length mismatch " + std::to_string(codes_a.size()) + " vs " +
                     std::to_string(codes_b.size()));
  }
  DotResult r;
  r.state = accumulate(codes_a, operand_table(type_a), codes_b, operand_table(type_b), init);
  r.value = static_cast<double>(r.state.accumulator) * scale_a * scale_b;
  return r;
}

GemmResult quantized_gemm(const QTensor& activations, const QTensor& weights, const MacState& init) {
  activations.validate();
  weights.validate();
  if (activations.shape.size() != 2 || weights.shape.size() != 2) {
    throw InputError("quantized_gemm expects 2-D activations [M, K] and weights [N, K]");
  }
  if (activations.scheme.axis) throw InputError("activations must use a per-tensor scale");
  if (weights.scheme.axis && *weights.scheme.axis != 0) {
    throw InputError("weight scales must be per output row (axis 0)");
  }
  const std::int64_t m_dim = activations.shape[0];
  const std::int64_t k_dim = activations.shape[1];
  const std::int64_t n_dim = weights.shape[0];
  if (weights.shape[1] != k_dim) {
    throw InputError("reduction dims differ: " + shape_string(activations.shape) + " x " +
                     shape_string(weights.shape));
  }
  GemmResult out;
  out.output.shape = {m_dim, n_dim};
  out.output.data.resize(static_cast<std::size_t>(m_dim * n_dim));
  const double scale_a = activations.scheme.scales.front();
  const auto k = static_cast<std::size_t>(k_dim);
  const std::vector<PeOperand> table_a = operand_table(activations.scheme.ntype);
  const std::vector<PeOperand> table_w = operand_table(weights.scheme.ntype);
  for (std::int64_t m = 0; m < m_dim; ++m) {
    const std::span<const std::uint8_t> row_a(activations.codes.data() + m * k_dim, k);
    for (std::int64_t n = 0; n < n_dim; ++n) {
      const double scale_w = weights.scheme.axis ? weights.scheme.scales[static_cast<std::size_t>(n)]
                                                 : weights.scheme.scales.front();
      const std::span<const std::uint8_t> row_w(weights.codes.data() + n * k_dim, k);
      const MacState s = accumulate(row_a, table_a, row_w, table_w, init);
      out.output.data[static_cast<std::size_t>(m * n_dim + n)] =
          static_cast<float>(static_cast<double>(s.accumulator) * scale_a * scale_w);
      out.acc_overflows += s.acc_overflows - init.acc_overflows;
      out.product_overflows += s.product_overflows - init.product_overflows;
    }
  }
  return out;
}

}  // namespace ant
