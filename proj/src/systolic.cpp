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

#include "ant/systolic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ant/error.hpp"

namespace ant {
namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

std::int64_t effective_edge(int n, int width) { return width == 8 ? n / 2 : n; }

void check_layer(const GemmLayer& layer) {
  if (layer.m < 0 || layer.n < 0 || layer.k < 0) {
    throw ConfigError("layer '" + layer.layer_id + "' has a negative dimension");
  }
  if (layer.width != 4 && layer.width != 8) {
    throw ConfigError("layer '" + layer.layer_id + "' width must be 4 or 8, got " +
                      std::to_string(layer.width));
  }
  if (layer.output_bits <= 0) throw ConfigError("layer '" + layer.layer_id + "' output_bits must be positive");
}

void accumulate(LayerReport& into, const LayerReport& r) {
  into.tiles += r.tiles;
  into.compute_cycles += r.compute_cycles;
  into.cycles += r.cycles;
  into.weight_dram_bits += r.weight_dram_bits;
  into.activation_dram_bits += r.activation_dram_bits;
  into.output_dram_bits += r.output_dram_bits;
  into.dram_bits += r.dram_bits;
  into.sram_bits += r.sram_bits;
  into.mac4 += r.mac4;
  into.mac8 += r.mac8;
  into.decode_events += r.decode_events;
  into.encode_events += r.encode_events;
  into.energy.static_energy += r.energy.static_energy;
  into.energy.dram += r.energy.dram;
  into.energy.buffer += r.energy.buffer;
  into.energy.core += r.energy.core;
}

}  // namespace

std::string_view dataflow_name(Dataflow d) {
  return d == Dataflow::kOutputStationary ? "os" : "ws";
}

Dataflow parse_dataflow(std::string_view name) {
  if (name == "os" || name == "OS") return Dataflow::kOutputStationary;
  if (name == "ws" || name == "WS") return Dataflow::kWeightStationary;
  throw ConfigError("unknown dataflow '" + std::string(name) + "' (expected os or ws)");
}

void ArrayConfig::validate() const {
  if (n < 2 || n % 2 != 0) throw ConfigError("array dimension n must be even and >= 2, got " + std::to_string(n));
  if (buffer_bytes <= 0) throw ConfigError("bufferBytes must be positive");
  if (!(dram_bandwidth > 0.0)) throw ConfigError("dramBandwidth must be positive");
  const EnergyTable& e = energy;
  for (double c : {e.dram_per_bit, e.sram_per_bit, e.mac4, e.mac8, e.decode, e.static_per_cycle}) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw ConfigError("energy costs must be finite and >= 0");
  }
}

int ArrayConfig::decoder_count() const { return dataflow == Dataflow::kOutputStationary ? 2 * n : n; }

std::int64_t decoder_events(const ArrayConfig& cfg, const GemmLayer& layer) {
  check_layer(layer);
  if (cfg.n < 1) throw ConfigError("array dimension must be positive");
  const std::int64_t ne = std::max<std::int64_t>(1, effective_edge(cfg.n, layer.width));
  const std::int64_t m = layer.m, n = layer.n, k = layer.k;
  if (m == 0 || n == 0 || k == 0) return 0;
  if (cfg.dataflow == Dataflow::kOutputStationary) {
    // Every output tile (i, j) streams its rows of act and columns of weight.
    return k * (m * ceil_div(n, ne) + n * ceil_div(m, ne));
  }
  // Each weight decoded once at preload; act streamed once per weight column block.
  return k * n + m * k * ceil_div(n, ne);
}

LayerReport simulate_layer(const ArrayConfig& cfg, const GemmLayer& layer) {
  cfg.validate();
  check_layer(layer);
  LayerReport r;
  r.layer_id = layer.layer_id;
  r.m = layer.m;
  r.n = layer.n;
  r.k = layer.k;
  r.width = layer.width;
  if (layer.m == 0 || layer.n == 0 || layer.k == 0) return r;

  const std::int64_t m = layer.m, n = layer.n, k = layer.k;
  const std::int64_t ne = effective_edge(cfg.n, layer.width);
  const std::int64_t phys = cfg.n;
  const std::int64_t op_bits = layer.width;
  const std::int64_t out_bits = layer.output_bits;
  const std::int64_t tiles_m = ceil_div(m, ne);
  const std::int64_t tiles_n = ceil_div(n, ne);
  const std::int64_t tiles_k = ceil_div(k, ne);

  // Buffer blocking.
  const std::int64_t usable_bits = cfg.buffer_bytes * 8 / 2;
  const std::int64_t act_tile_bits = std::min(m, ne) * k * op_bits;
  const std::int64_t out_tile_bits = std::min(m, ne) * std::min(n, ne) * out_bits;
  const std::int64_t weight_col_bits = k * op_bits;
  const std::int64_t min_block = std::min(n, ne);
  if (weight_col_bits * min_block + act_tile_bits + out_tile_bits > usable_bits) {
    throw ConfigError("layer '" + layer.layer_id + "': tile of " + std::to_string(std::min(m, ne)) + "x" +
                      std::to_string(k) + " activations + " + std::to_string(k) + "x" +
                      std::to_string(min_block) + " weights + " + std::to_string(std::min(m, ne)) + "x" +
                      std::to_string(std::min(n, ne)) + " outputs needs " +
                      std::to_string((weight_col_bits * min_block + act_tile_bits + out_tile_bits) / 8) +
                      " bytes but only " + std::to_string(usable_bits / 8) +
                      " bytes are usable with double buffering");
  }
  const std::int64_t free_bits = usable_bits - act_tile_bits - out_tile_bits;
  const std::int64_t block_tiles = std::clamp<std::int64_t>(free_bits / (weight_col_bits * ne), 1, tiles_n);
  const std::int64_t weight_blocks = ceil_div(tiles_n, block_tiles);

  r.weight_dram_bits = k * n * op_bits;
  r.activation_dram_bits = weight_blocks * m * k * op_bits;
  r.output_dram_bits = m * n * out_bits;
  r.dram_bits = r.weight_dram_bits + r.activation_dram_bits + r.output_dram_bits;

  // Buffer accesses: DRAM fills, array-side reads, output writes/updates.
  std::int64_t array_reads = 0;
  std::int64_t output_traffic = 0;
  if (cfg.dataflow == Dataflow::kOutputStationary) {
    r.tiles = tiles_m * tiles_n;
    r.compute_cycles = r.tiles * (k + 2 * phys);
    array_reads = k * (m * tiles_n + n * tiles_m) * op_bits;
    output_traffic = m * n * out_bits;
  } else {
    r.tiles = tiles_k * tiles_n;
    r.compute_cycles = r.tiles * (phys + m + phys);
    array_reads = (k * n + m * k * tiles_n) * op_bits;
    // Partial sums leave the array after every K tile: one write per tile,
    // plus a read-back for every tile after the first.
    output_traffic = (2 * tiles_k - 1) * m * n * out_bits;
  }
  r.sram_bits = r.weight_dram_bits + r.activation_dram_bits + array_reads + output_traffic;

  const auto bw_cycles = static_cast<std::int64_t>(std::ceil(static_cast<double>(r.dram_bits) / cfg.dram_bandwidth));
  r.cycles = std::max(r.compute_cycles, bw_cycles);

  const std::int64_t macs = m * n * k;
  (layer.width == 4 ? r.mac4 : r.mac8) = macs;
  r.decode_events = decoder_events(cfg, layer);
  r.encode_events = m * n;

  const EnergyTable& e = cfg.energy;
  r.energy.static_energy = e.static_per_cycle * static_cast<double>(r.cycles);
  r.energy.dram = e.dram_per_bit * static_cast<double>(r.dram_bits);
  r.energy.buffer = e.sram_per_bit * static_cast<double>(r.sram_bits);
  r.energy.core = e.mac4 * static_cast<double>(r.mac4) + e.mac8 * static_cast<double>(r.mac8) +
                  e.decode * static_cast<double>(r.decode_events + r.encode_events);
  return r;
}

SimReport simulate_model(const ArrayConfig& cfg, const GemmWorkload& workload) {
  SimReport report;
  report.dataflow = cfg.dataflow;
  report.total.layer_id = "total";
  report.total.width = 0;
  for (const GemmLayer& layer : workload.layers) {
    report.layers.push_back(simulate_layer(cfg, layer));
    accumulate(report.total, report.layers.back());
  }
  return report;
}

}  // namespace ant
