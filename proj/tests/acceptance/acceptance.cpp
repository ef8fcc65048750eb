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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ant/flint.hpp"
#include "ant/numeric_type.hpp"
#include "ant/pe.hpp"
#include "ant/quantize.hpp"
#include "ant/selector.hpp"
#include "ant/serialize.hpp"
#include "ant/systolic.hpp"
#include "ant/tensor_io.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ant;

struct Outcome {
  bool passed = true;
  std::string detail;

  int failures = 0;

  void fail(const std::string& why) {
    if (passed) detail.clear();
    passed = false;
    if (++failures > 5) {
      if (failures == 6) detail += "; ...";
      return;
    }
    if (!detail.empty()) detail += "; ";
    detail += why;
    passed = false;
  }
};

struct Criterion {
  std::string name;
  double time_limit_s;  // <= 0 means untimed
  std::function<Outcome()> run;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

Outcome golden_tables() {
  Outcome out;
  const std::vector<double> table2 = {0, 1, 2, 3, 4, 5, 6, 7, 64, 32, 16, 24, 8, 10, 12, 14};
  for (std::uint32_t c = 0; c < 16; ++c) {
    const FlintCode code{c, 4, false};
    if (flint_decode_float(code).value() != table2[c]) out.fail("float path code " + std::to_string(c));
    const DecodedPair p = flint_decode_int(code);
    if (std::ldexp(static_cast<double>(p.base), p.exponent) != table2[c]) out.fail("int path code " + std::to_string(c));
  }
  const std::pair<std::uint32_t, DecodedPair> table3[] = {
      {0b1100, {8, 0}}, {0b1101, {10, 0}}, {0b1110, {12, 0}}, {0b1111, {14, 0}},
      {0b1010, {4, 2}}, {0b1011, {6, 2}},  {0b1001, {2, 4}},  {0b1000, {1, 6}}};
  for (const auto& [c, pair] : table3) {
    if (!(flint_decode_int({c, 4, false}) == pair)) out.fail("base/exponent of code " + std::to_string(c));
  }
  std::set<double> signed_set;
  for (std::uint32_t c = 0; c < 16; ++c) signed_set.insert(flint_value({c, 4, true}) + 0.0);
  const std::set<double> want = {0, 1, -1, 2, -2, 3, -3, 4, -4, 6, -6, 8, -8, 16, -16};
  if (signed_set != want) out.fail("signed 4-bit value set");
  if (*std::max_element(table2.begin(), table2.end()) != flint_max_magnitude(4, false)) out.fail("unsigned max");
  if (out.passed) out.detail = "16 unsigned codes, max 64, 8 base/exponent rows, 15 signed values";
  return out;
}

Outcome encoder_example() {
  Outcome out;
  const FlintCode c = flint_encode(11, 4, 1.0, false);
  if (c.bits != 0b1110) out.fail("code " + oracle::to_binary(c.bits, 4));
  if (flint_value(c) != 12.0) out.fail("decodes to " + num(flint_value(c)));
  if (out.passed) out.detail = "11 -> 1110 -> 12";
  return out;
}

Outcome decoder_equivalence() {
  Outcome out;
  std::size_t codes = 0;
  for (int w = 3; w <= 8; ++w) {
    for (bool s : {false, true}) {
      for (std::uint32_t c = 0; c < (1u << w); ++c, ++codes) {
        const FlintCode code{c, w, s};
        if (s && c == (1u << (w - 1))) continue;  // negative zero
        const DecodedPair p = flint_decode_int(code);
        if (flint_decode_float(code).value() != std::ldexp(static_cast<double>(p.base), p.exponent)) {
          out.fail("w=" + std::to_string(w) + " code " + std::to_string(c));
        }
      }
    }
  }
  if (out.passed) out.detail = std::to_string(codes) + " codes agree";
  return out;
}

std::set<std::pair<bool, long>> load_ties() {
  std::ifstream in(std::string(ANT_GOLDEN_DIR) + "/flint4_ties.txt");
  std::set<std::pair<bool, long>> ties;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string sign;
    long x = 0;
    ls >> sign >> x;
    ties.insert({sign == "signed", x});
  }
  return ties;
}

Outcome nearest_fidelity() {
  Outcome out;
  const auto ties = load_ties();
  if (ties.empty()) {
    out.fail("golden tie list missing");
    return out;
  }
  std::size_t checked = 0, disagreements = 0;
  for (bool s : {false, true}) {
    const auto values = oracle::values_of(oracle::flint_table(4, s));
    for (double x = s ? -values.back() : 0.0; x <= values.back(); x += 1, ++checked) {
      const double got = flint_value(flint_encode(x, 4, 1.0, s));
      const auto near = oracle::nearest(values, x);
      const bool tie = ties.count({s, static_cast<long>(x)}) > 0;
      if ((near.size() > 1) != tie) out.fail("golden file disagrees with oracle at " + num(x));
      if (got != near.front()) {
        ++disagreements;
        if (!tie || std::find(near.begin(), near.end(), got) == near.end()) {
          out.fail((s ? "signed " : "unsigned ") + num(x) + " -> " + num(got));
        }
      }
    }
  }
  if (out.passed) {
    out.detail = std::to_string(checked) + " integers, " + std::to_string(ties.size()) + " listed ties, " +
                 std::to_string(disagreements) + " tie-breaks away from the smaller candidate";
  }
  return out;
}

Outcome mac_exhaustive() {
  Outcome out;
  std::vector<std::pair<NumericType, std::vector<double>>> types;
  for (bool s : {false, true}) {
    types.push_back({NumericType::Int(4, s), {}});
    types.push_back({NumericType::Pot(4, s), {}});
    types.push_back({NumericType::Flint(4, s), {}});
  }
  for (auto& [t, vals] : types) {
    switch (t.kind) {
      case TypeKind::kInt:
        for (std::uint32_t c = 0; c < 16; ++c) vals.push_back(t.is_signed ? static_cast<double>(static_cast<std::int8_t>(c << 4) >> 4) : static_cast<double>(c));
        break;
      case TypeKind::kPot:
        for (std::uint32_t c = 0; c < 16; ++c) {
          const std::uint32_t mag = t.is_signed ? (c & 7U) : c;
          const double v = mag == 0 ? 0.0 : std::ldexp(1.0, static_cast<int>(mag) - 1);
          vals.push_back(t.is_signed && (c & 8U) ? -v : v);
        }
        break;
      default: {
        const auto table = oracle::flint_table(4, t.is_signed);
        for (std::uint32_t c = 0; c < 16; ++c) vals.push_back(table.at(c));
      }
    }
  }
  std::size_t pairs = 0;
  for (const auto& [ta, va] : types) {
    for (const auto& [tb, vb] : types) {
      for (std::uint32_t a = 0; a < 16; ++a) {
        for (std::uint32_t b = 0; b < 16; ++b, ++pairs) {
          const MacState st = mac_step({}, decode_operand(ta, a), decode_operand(tb, b));
          if (static_cast<double>(st.accumulator) != va[a] * vb[b] || st.overflowed()) {
            out.fail(ta.name() + "x" + tb.name() + " " + std::to_string(a) + "," + std::to_string(b));
          }
        }
      }
    }
  }
  if (out.passed) out.detail = std::to_string(pairs) + " code pairs";
  return out;
}

Outcome mul8() {
  Outcome out;
  std::size_t pairs = 0;
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b, pairs += 2) {
      if (mul8_via_four(a, b, false) != a * b) out.fail("unsigned " + std::to_string(a) + "*" + std::to_string(b));
      const int sa = a - 128, sb = b - 128;
      if (mul8_via_four(sa, sb, true) != sa * sb) out.fail("signed " + std::to_string(sa) + "*" + std::to_string(sb));
    }
  }
  if (out.passed) out.detail = std::to_string(pairs) + " pairs";
  return out;
}

Tensor make_tensor(std::vector<float> data) {
  const auto n = static_cast<std::int64_t>(data.size());
  return Tensor({n}, std::move(data), "t");
}

Outcome selection() {
  Outcome out;
  const std::vector<TypeKind> kinds = {TypeKind::kInt, TypeKind::kPot, TypeKind::kFlint};
  struct Case {
    const char* label;
    oracle::Dist dist;
    TypeKind expected;
  };
  const Case cases[] = {{"uniform", oracle::Dist::kUniform01, TypeKind::kInt},
                        {"normal", oracle::Dist::kNormal, TypeKind::kFlint},
                        {"cubed-normal", oracle::Dist::kCubedNormal, TypeKind::kPot}};
  std::string summary;
  double worst_flint_ratio = 0.0;
  for (const Case& c : cases) {
    int wins = 0;
    std::map<std::string, int> winners;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Tensor t = make_tensor(oracle::sample(c.dist, 10000, seed));
      const auto cands = candidates_for(kinds, 4, t);
      const SelectionResult r = select_type(t, cands, std::nullopt);
      ++winners[std::string(kind_name(r.ntype.kind))];
      bool strict = r.ntype.kind == c.expected;
      for (const CandidateMse& m : r.per_candidate) {
        if (m.ntype.kind != r.ntype.kind && !(m.mse > r.mse)) strict = false;
      }
      wins += strict;
      if (c.dist == oracle::Dist::kNormal) {
        double fm = 0, im = 0;
        for (const CandidateMse& m : r.per_candidate) {
          if (m.ntype.kind == TypeKind::kFlint) fm = m.mse;
          if (m.ntype.kind == TypeKind::kInt) im = m.mse;
        }
        worst_flint_ratio = std::max(worst_flint_ratio, fm / im);
      }
    }
    std::string w;
    for (const auto& [k, n] : winners) w += (w.empty() ? "" : " ") + k + "=" + std::to_string(n);
    summary += std::string(summary.empty() ? "" : "; ") + c.label + " " + std::to_string(wins) + "/10 [" + w + "]";
    if (wins != 10) out.fail(std::string(c.label) + " expected " + std::string(kind_name(c.expected)) + " on 10/10 seeds");
  }
  summary += "; normal flint/int mse max ratio " + num(worst_flint_ratio);
  if (worst_flint_ratio > 0.9) out.fail("normal flint/int mse ratio above 0.9");
  out.detail = out.passed ? summary : out.detail + " | " + summary;
  return out;
}

std::vector<float> power_normal(double p, std::size_t n, std::uint64_t seed) {
  std::vector<float> z = oracle::sample(oracle::Dist::kNormal, n, seed);
  for (float& v : z) v = static_cast<float>(std::copysign(std::pow(std::abs(static_cast<double>(v)), p), v));
  return z;
}

Outcome promotion() {
  Outcome out;
  const double powers[] = {1.0, 3.0, 0.5, 2.0, 5.0};
  std::vector<LayerTensors> layers;
  std::vector<std::pair<double, std::string>> expected;
  const std::vector<std::pair<std::vector<double>, oracle::Rule>> grids = {
      {oracle::code_values_int(4, true), oracle::Rule::kLinear},
      {oracle::code_values_pot(4, true), oracle::Rule::kPot},
      {oracle::values_of(oracle::flint_table(4, true)), oracle::Rule::kFlint}};
  for (int i = 0; i < 5; ++i) {
    const std::string id = "layer" + std::to_string(i);
    std::vector<float> w = power_normal(powers[i], 4096, 100 + i);
    double power = 0;
    for (float v : w) power += static_cast<double>(v) * v;
    power /= static_cast<double>(w.size());
    double best = INFINITY;
    for (const auto& [g, rule] : grids) best = std::min(best, oracle::best_sweep_mse(w, g, rule));
    expected.push_back({best / power, id});
    LayerTensors l;
    l.layer_id = id;
    l.weight = Tensor({64, 64}, std::move(w), id);
    l.weight_axis = std::nullopt;
    layers.push_back(std::move(l));
  }
  std::stable_sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  PlanOptions opts;
  opts.threshold = 0.0;
  const PrecisionPlan plan = plan_mixed_precision(layers, opts);
  std::vector<std::string> want;
  for (const auto& e : expected) want.push_back(e.second);
  if (plan.promotion_order != want) {
    std::string got;
    for (const auto& s : plan.promotion_order) got += s + " ";
    out.fail("promotion order " + got);
  }
  for (std::size_t i = 1; i < plan.aggregate_history.size(); ++i) {
    if (plan.aggregate_history[i] > plan.aggregate_history[i - 1]) out.fail("aggregate increased at step " + std::to_string(i));
  }
  if (plan.aggregate_history.size() != 6) out.fail("expected 6 history entries");
  if (out.passed) {
    out.detail = "order";
    for (const auto& s : want) out.detail += " " + s;
    out.detail += ", aggregate " + num(plan.aggregate_history.front()) + " -> " + num(plan.aggregate_history.back());
  }
  return out;
}

Outcome simulator_ratios() {
  Outcome out;
  ArrayConfig cfg;
  cfg.energy = {20.0, 1.0, 0.25, 1.0, 0.05, 10.0};
  double min_cycle_ratio = INFINITY, max_os_ws = 0;
  for (std::int64_t d : {64, 128, 256, 512, 1024}) {
    GemmLayer g{"sq", d, d, d, 4, NumericType::Flint(4, true), NumericType::Flint(4, true)};
    GemmLayer g8 = g;
    g8.width = 8;
    g8.weight_type = g8.activation_type = NumericType::Int(8, true);
    const LayerReport r4 = simulate_layer(cfg, g), r8 = simulate_layer(cfg, g8);
    min_cycle_ratio = std::min(min_cycle_ratio, static_cast<double>(r8.compute_cycles) / r4.compute_cycles);
    if (2 * r4.weight_dram_bits != r8.weight_dram_bits) out.fail("weight traffic at d=" + std::to_string(d));
    ArrayConfig ws = cfg;
    ws.dataflow = Dataflow::kWeightStationary;
    const double a = static_cast<double>(r4.cycles), b = static_cast<double>(simulate_layer(ws, g).cycles);
    max_os_ws = std::max(max_os_ws, std::abs(a - b) / std::min(a, b));
  }
  if (min_cycle_ratio < 3.8) out.fail("8-bit/4-bit cycle ratio " + num(min_cycle_ratio));
  if (max_os_ws > 0.15) out.fail("OS/WS gap " + num(max_os_ws));
  const std::string d = "min 8/4-bit cycle ratio " + num(min_cycle_ratio) + ", weight traffic 2x, max OS/WS gap " +
                        num(100 * max_os_ws) + "%";
  out.detail = out.passed ? d : out.detail + " | " + d;
  return out;
}

Outcome round_trips() {
  Outcome out;
  std::vector<float> data = oracle::sample(oracle::Dist::kNormal, 6 * 16, 7);
  const Tensor t({6, 16}, data, "rt");
  const auto tb = encode_tensor(t);
  if (encode_tensor(decode_tensor(tb)) != tb || decode_tensor(tb).data != t.data || decode_tensor(tb).shape != t.shape) out.fail("tensor");

  const auto s = argmin_mse_scale(t, NumericType::Flint(4, true), 0).scheme;
  const QTensor q = quantize(t, s);
  const auto qb = encode_qtensor(q);
  if (encode_qtensor(decode_qtensor(qb)) != qb || !(decode_qtensor(qb) == q)) out.fail("qtensor");

  std::vector<LayerTensors> layers(2);
  layers[0].layer_id = "a";
  layers[0].weight = t;
  layers[0].activation = make_tensor(oracle::sample(oracle::Dist::kLaplace, 200, 8));
  layers[1].layer_id = "b";
  layers[1].weight = Tensor({4, 8}, oracle::sample(oracle::Dist::kCubedNormal, 32, 9), "b");
  PlanOptions opts;
  opts.max_promotions = 1;
  opts.threshold = 0.0;
  RunManifest m;
  m.command = "select model.json";
  m.seed = 3;
  const PlanDocument plan{m, plan_mixed_precision(layers, opts)};
  const std::string ps = plan_to_string(plan);
  if (plan_to_string(plan_from_string(ps)) != ps || !(plan_from_string(ps) == plan)) out.fail("plan");

  ArrayConfig cfg;
  cfg.energy = {20.0, 1.0, 0.25, 1.0, 0.05, 10.0};
  GemmWorkload wl;
  wl.layers.push_back({"a", 100, 6, 16, 4, NumericType::Flint(4, true), NumericType::Flint(4, true)});
  wl.layers.push_back({"b", 3, 4, 8, 8, NumericType::Int(8, true), NumericType::Int(8, true)});
  const ReportDocument rep{m, simulate_model(cfg, wl)};
  const std::string rs = report_to_string(rep);
  if (report_to_string(report_from_string(rs)) != rs || !(report_from_string(rs) == rep)) out.fail("report");

  const std::string cmd = std::string("\"") + ANT_CLI_PATH + "\" verify > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (code != 0) out.fail("ant verify exited " + std::to_string(code));
  if (out.passed) out.detail = "tensor, qtensor, plan and report byte-exact; ant verify exit 0";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"golden value tables", 1.0, golden_tables},
      {"encoder worked example", 0.0, encoder_example},
      {"decoder equivalence, widths 3-8", 1.0, decoder_equivalence},
      {"nearest-value fidelity with golden ties", 0.0, nearest_fidelity},
      {"4-bit MAC bit-exactness", 5.0, mac_exhaustive},
      {"8-bit multiply from four 4-bit PEs", 5.0, mul8},
      {"type selection on synthetic tensors", 10.0, selection},
      {"mixed-precision promotion loop", 0.0, promotion},
      {"systolic simulator ratios", 10.0, simulator_ratios},
      {"serialization round-trips and verify", 0.0, round_trips},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) o.fail("took " + num(secs) + " s, limit " + num(c.time_limit_s) + " s");
    failed += !o.passed;
    std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << c.name << " (" << num(secs * 1000) << " ms): " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
