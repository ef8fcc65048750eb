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

#include "ant/selector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ant/error.hpp"
#include "ant/parallel.hpp"

namespace ant {
namespace {

double slice_sse(const Codec& codec, std::span<const double> values, double scale) {
  double sse = 0.0;
  for (double v : values) {
    const double d = v - scale * codec.decode(codec.encode(v / scale));
    sse += d * d;
  }
  return sse;
}

bool has_negative(const Tensor& t) {
  return std::any_of(t.data.begin(), t.data.end(), [](float v) { return v < 0.0F; });
}

void check_finite(const Tensor& t) {
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    if (!std::isfinite(t.data[i])) {
      throw InputError("tensor '" + t.name + "' has non-finite value at index " + std::to_string(i));
    }
  }
}

SelectionResult single_type_selection(const Tensor& tensor, const NumericType& type,
                                      std::optional<int> axis, const SweepConfig& sweep) {
  ScaleSearchResult found = argmin_mse_scale(tensor, type, axis, sweep);
  SelectionResult r;
  r.ntype = type;
  r.scheme = std::move(found.scheme);
  r.mse = found.mse;
  r.mean_square = mean_square(tensor.data);
  r.per_candidate.push_back({type, r.mse});
  return r;
}

}  // namespace

ScaleSearchResult argmin_mse_scale(const Tensor& tensor, const NumericType& type,
                                   std::optional<int> axis, const SweepConfig& sweep) {
  if (tensor.empty()) throw PreconditionError("argmin_mse_scale: empty tensor");
  if (sweep.steps < 1 || !(sweep.min_ratio > 0.0) || sweep.min_ratio > 1.0) {
    throw ConfigError("scale sweep needs steps >= 1 and min_ratio in (0, 1]");
  }
  check_finite(tensor);
  if (!type.is_signed && has_negative(tensor)) {
    throw PreconditionError("unsigned type " + type.name() + " given a tensor with negatives");
  }
  const Codec codec(type);
  const AxisLayout layout = AxisLayout::make(tensor.shape, axis);
  const int first_step = static_cast<int>(std::ceil(sweep.steps * sweep.min_ratio - 1e-9));

  ScaleSearchResult result;
  result.scheme.ntype = type;
  result.scheme.axis = axis;
  result.scheme.scales.assign(static_cast<std::size_t>(layout.channels), 1.0);
  double total_sse = 0.0;
  std::vector<double> values;
  for (std::int64_t c = 0; c < layout.channels; ++c) {
    values.clear();
    layout.for_each_in_channel(c, [&](std::size_t i) { values.push_back(tensor.data[i]); });
    double max_abs = 0.0;
    for (double v : values) max_abs = std::max(max_abs, std::fabs(v));
    if (max_abs == 0.0) {
      result.zero_slices.push_back(c);
      continue;
    }
    double best_scale = 0.0;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int j = std::max(first_step, 1); j <= sweep.steps; ++j) {
      const double clip = max_abs * (static_cast<double>(j) / sweep.steps);
      const double scale = clip / codec.max_magnitude();
      const double sse = slice_sse(codec, values, scale);
      if (sse < best_sse) {
        best_sse = sse;
        best_scale = scale;
      }
    }
    result.scheme.scales[static_cast<std::size_t>(c)] = best_scale;
    total_sse += best_sse;
  }
  result.mse = total_sse / static_cast<double>(tensor.size());
  return result;
}

SelectionResult select_type(const Tensor& tensor, std::span<const NumericType> candidates,
                            std::optional<int> axis, const SweepConfig& sweep) {
  const bool negatives = has_negative(tensor);
  std::vector<NumericType> eligible;
  for (const NumericType& t : candidates) {
    if (t.is_signed || !negatives) eligible.push_back(t);
  }
  if (eligible.empty()) {
    throw PreconditionError("no eligible candidate type for tensor '" + tensor.name + "'");
  }
  SelectionResult best;
  bool have_best = false;
  std::vector<CandidateMse> per_candidate;
  for (const NumericType& t : eligible) {
    SelectionResult r = single_type_selection(tensor, t, axis, sweep);
    per_candidate.push_back({t, r.mse});
    if (!have_best || r.mse < best.mse) {
      best = std::move(r);
      have_best = true;
    }
  }
  best.per_candidate = std::move(per_candidate);
  return best;
}

std::vector<NumericType> candidates_for(std::span<const TypeKind> kinds, int width,
                                        const Tensor& tensor) {
  const bool is_signed = has_negative(tensor);
  std::vector<NumericType> out;
  for (TypeKind k : kinds) {
    out.push_back(k == TypeKind::kFloat ? NumericType::DefaultFloat(width, is_signed)
                                        : NumericType{k, width, is_signed});
  }
  return out;
}

std::vector<TypeKind> default_candidate_kinds() {
  return {TypeKind::kInt, TypeKind::kPot, TypeKind::kFlint};
}

double LayerPlan::layer_mse() const {
  return weight.normalized_mse() + (activation ? activation->normalized_mse() : 0.0);
}

const LayerPlan* PrecisionPlan::find(const std::string& layer_id) const {
  for (const LayerPlan& l : layers) {
    if (l.layer_id == layer_id) return &l;
  }
  return nullptr;
}

double aggregate_layer_mse(const PrecisionPlan& plan) {
  if (plan.layers.empty()) return 0.0;
  double sum = 0.0;
  for (const LayerPlan& l : plan.layers) sum += l.layer_mse();
  return sum / static_cast<double>(plan.layers.size());
}

PrecisionPlan plan_mixed_precision(std::span<const LayerTensors> layers, const PlanOptions& options) {
  if (options.candidate_kinds.empty()) throw PreconditionError("empty candidate list");
  struct Alternatives {
    LayerPlan low;
    LayerPlan high;
  };
  std::vector<Alternatives> alts(layers.size());
  parallel_for(layers.size(), [&](std::size_t i) {
    const LayerTensors& layer = layers[i];
    Alternatives& a = alts[i];
    a.low.layer_id = a.high.layer_id = layer.layer_id;
    a.low.width = options.low_width;
    a.high.width = 8;
    const auto weight_candidates = candidates_for(options.candidate_kinds, options.low_width, layer.weight);
    a.low.weight = select_type(layer.weight, weight_candidates, layer.weight_axis, options.sweep);
    a.high.weight = single_type_selection(
        layer.weight, NumericType::Int(8, has_negative(layer.weight)), layer.weight_axis, options.sweep);
    if (layer.activation) {
      const Tensor& act = *layer.activation;
      const auto act_candidates = candidates_for(options.candidate_kinds, options.low_width, act);
      a.low.activation = select_type(act, act_candidates, std::nullopt, options.sweep);
      a.high.activation =
          single_type_selection(act, NumericType::Int(8, has_negative(act)), std::nullopt, options.sweep);
    }
  });

  const QualityOracle oracle = options.oracle ? options.oracle : QualityOracle(aggregate_layer_mse);
  PrecisionPlan plan;
  for (const Alternatives& a : alts) plan.layers.push_back(a.low);
  plan.initial_layers = plan.layers;
  plan.aggregate_mse = aggregate_layer_mse(plan);
  plan.aggregate_history.push_back(plan.aggregate_mse);

  // Promotion order: descending low-width layer MSE, stable on ties.
  std::vector<std::size_t> order(layers.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return alts[x].low.layer_mse() > alts[y].low.layer_mse();
  });

  std::size_t promoted = 0;
  while (promoted < order.size()) {
    if (oracle(plan) <= options.threshold) break;
    if (options.max_promotions && static_cast<int>(promoted) >= *options.max_promotions) break;
    const std::size_t idx = order[promoted++];
    plan.layers[idx] = alts[idx].high;
    plan.promotion_order.push_back(plan.layers[idx].layer_id);
    plan.aggregate_mse = aggregate_layer_mse(plan);
    plan.aggregate_history.push_back(plan.aggregate_mse);
  }
  return plan;
}

}  // namespace ant
