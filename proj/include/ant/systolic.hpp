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

#ifndef ANT_SYSTOLIC_HPP_
#define ANT_SYSTOLIC_HPP_

// Closed-form cycle, traffic, and energy model for an n x n systolic array of
// 4-bit ANT PEs with decoders on the array boundary.
//
// GEMM convention: out[M, N] = act[M, K] * weight[K, N]. An 8-bit layer runs
// on the same PEs regrouped into an (n/2) x (n/2) array of int8 PEs, so the
// effective array edge is ne = n (4-bit) or n / 2 (8-bit). Pipeline fill and
// drain still traverse the n physical PEs.
//
// Timing per layer:
//   OS: ceil(M/ne) * ceil(N/ne) * (K + 2n)
//   WS: ceil(K/ne) * ceil(N/ne) * (n + M + n)      (preload n, stream M, drain n)
//   cycles = max(compute, ceil(dram_bits / dram_bandwidth))
//
// Buffer model (double buffered, so half the buffer is usable): a block of Nb
// weight columns (a multiple of ne) stays resident while activation tiles
// stream past it. Weights are read from DRAM once, activations once per
// weight block, outputs written once. The smallest working set, one weight
// column block plus one activation tile plus one output tile, must fit or the
// layer is rejected.

#include <cstdint>
#include <string>
#include <vector>

#include "ant/numeric_type.hpp"

namespace ant {

enum class Dataflow { kOutputStationary, kWeightStationary };

std::string_view dataflow_name(Dataflow d);  // "os" / "ws"
Dataflow parse_dataflow(std::string_view name);

// Per-event energy in arbitrary units.
struct EnergyTable {
  double dram_per_bit = 0.0;
  double sram_per_bit = 0.0;
  double mac4 = 0.0;
  double mac8 = 0.0;
  double decode = 0.0;  // also charged per output encode
  double static_per_cycle = 0.0;

  bool operator==(const EnergyTable&) const = default;
};

struct ArrayConfig {
  int n = 64;
  std::int64_t buffer_bytes = 512 * 1024;
  Dataflow dataflow = Dataflow::kOutputStationary;
  double dram_bandwidth = 256.0;  // bits per cycle
  EnergyTable energy;

  void validate() const;
  // 2n boundary decoders for OS, n (input side only) for WS.
  int decoder_count() const;
  bool operator==(const ArrayConfig&) const = default;
};

struct GemmLayer {
  std::string layer_id;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
  int width = 4;  // 4 or 8
  NumericType weight_type = NumericType::Flint(4, true);
  NumericType activation_type = NumericType::Flint(4, true);
  int output_bits = 32;

  bool operator==(const GemmLayer&) const = default;
};

struct GemmWorkload {
  std::vector<GemmLayer> layers;
};

struct EnergyBreakdown {
  double static_energy = 0.0;
  double dram = 0.0;
  double buffer = 0.0;
  double core = 0.0;

  double total() const { return static_energy + dram + buffer + core; }
  bool operator==(const EnergyBreakdown&) const = default;
};

struct LayerReport {
  std::string layer_id;
  std::int64_t m = 0, n = 0, k = 0;
  int width = 4;
  std::int64_t tiles = 0;
  std::int64_t compute_cycles = 0;
  std::int64_t cycles = 0;
  std::int64_t weight_dram_bits = 0;
  std::int64_t activation_dram_bits = 0;
  std::int64_t output_dram_bits = 0;
  std::int64_t dram_bits = 0;
  std::int64_t sram_bits = 0;
  std::int64_t mac4 = 0;
  std::int64_t mac8 = 0;
  std::int64_t decode_events = 0;
  std::int64_t encode_events = 0;
  EnergyBreakdown energy;

  bool operator==(const LayerReport&) const = default;
};

struct SimReport {
  Dataflow dataflow = Dataflow::kOutputStationary;
  std::vector<LayerReport> layers;
  LayerReport total;  // field-wise sums; dims left at zero

  bool operator==(const SimReport&) const = default;
};

// One decode per operand element crossing the array boundary: OS streams
// both operands per output tile, WS decodes each weight once at preload and
// streams activations per weight tile.
std::int64_t decoder_events(const ArrayConfig& cfg, const GemmLayer& layer);

// Throws ConfigError for invalid configs or a working set that does not fit.
LayerReport simulate_layer(const ArrayConfig& cfg, const GemmLayer& layer);

// Layers execute back to back; totals are sums of the per-layer entries.
SimReport simulate_model(const ArrayConfig& cfg, const GemmWorkload& workload);

}  // namespace ant

#endif  // ANT_SYSTOLIC_HPP_
