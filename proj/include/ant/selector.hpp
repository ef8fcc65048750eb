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

#ifndef ANT_SELECTOR_HPP_
#define ANT_SELECTOR_HPP_

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ant/numeric_type.hpp"
#include "ant/quantize.hpp"
#include "ant/tensor.hpp"

namespace ant {

// Linear sweep of clipping maxima c_j = maxAbs * j / steps for
// j = ceil(steps * min_ratio) .. steps.
struct SweepConfig {
  int steps = 100;
  double min_ratio = 0.2;
};

struct ScaleSearchResult {
  QuantScheme scheme;
  double mse = 0.0;
  // Channels (or slice 0 for per-tensor) that were identically zero and got
  // the placeholder scale 1.0.
  std::vector<std::int64_t> zero_slices;
};

// Per slice, picks the clipping scale minimizing the slice MSE. Ties go to
// the smaller scale.
ScaleSearchResult argmin_mse_scale(const Tensor& tensor, const NumericType& type,
                                   std::optional<int> axis, const SweepConfig& sweep = {});

struct CandidateMse {
  NumericType ntype;
  double mse = 0.0;

  bool operator==(const CandidateMse&) const = default;
};

struct SelectionResult {
  NumericType ntype;
  QuantScheme scheme;
  double mse = 0.0;
  double mean_square = 0.0;               // signal power, for normalization
  std::vector<CandidateMse> per_candidate;  // in candidate-list order

  double normalized_mse() const { return mean_square > 0.0 ? mse / mean_square : 0.0; }
  bool operator==(const SelectionResult&) const = default;
};

// Runs the scale search for every eligible candidate and keeps the minimum.
// Unsigned candidates are dropped when the tensor has negative values; an
// empty remaining list throws PreconditionError. Ties keep the earlier
// candidate.
SelectionResult select_type(const Tensor& tensor, std::span<const NumericType> candidates,
                            std::optional<int> axis, const SweepConfig& sweep = {});

// Concrete candidates for `kinds` at `width`, signed iff `tensor` has a
// negative element. Float uses NumericType::DefaultFloat.
std::vector<NumericType> candidates_for(std::span<const TypeKind> kinds, int width,
                                        const Tensor& tensor);

// int, pot, flint.
std::vector<TypeKind> default_candidate_kinds();

// ---------------------------------------------------------------------------
// Layer-wise mixed precision.

struct LayerTensors {
  std::string layer_id;
  Tensor weight;                     // out-channels along weight_axis
  std::optional<int> weight_axis = 0;
  std::optional<Tensor> activation;  // concatenated calibration samples
};

struct LayerPlan {
  std::string layer_id;
  int width = 4;  // 4 (ANT) or 8 (int8)
  SelectionResult weight;
  std::optional<SelectionResult> activation;

  // Normalized weight MSE plus normalized activation MSE.
  double layer_mse() const;
  bool operator==(const LayerPlan&) const = default;
};

struct PrecisionPlan {
  std::vector<LayerPlan> layers;
  double aggregate_mse = 0.0;  // mean of layer_mse()
  std::vector<std::string> promotion_order;
  std::vector<double> aggregate_history;  // aggregate after 0, 1, 2... promotions
  std::vector<LayerPlan> initial_layers;   // the all-low-width starting point

  const LayerPlan* find(const std::string& layer_id) const;
  bool operator==(const PrecisionPlan&) const = default;
};

double aggregate_layer_mse(const PrecisionPlan& plan);

// Returns a scalar; lower is better. Promotion stops once it is <= threshold.
using QualityOracle = std::function<double(const PrecisionPlan&)>;

struct PlanOptions {
  std::vector<TypeKind> candidate_kinds = default_candidate_kinds();
  int low_width = 4;
  SweepConfig sweep;
  double threshold = std::numeric_limits<double>::infinity();
  std::optional<int> max_promotions;  // promote at most this many layers
  QualityOracle oracle;               // defaults to aggregate_layer_mse
};

// Starts every layer at the low-width ANT selection, then repeatedly promotes
// the not-yet-promoted layer with the largest low-width MSE to int8 until the
// oracle is within threshold, the promotion budget is spent, or every layer
// is 8-bit. Type selection runs once per tensor up front.
PrecisionPlan plan_mixed_precision(std::span<const LayerTensors> layers, const PlanOptions& options);

}  // namespace ant

#endif  // ANT_SELECTOR_HPP_
