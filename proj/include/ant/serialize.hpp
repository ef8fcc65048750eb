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

#ifndef ANT_SERIALIZE_HPP_
#define ANT_SERIALIZE_HPP_

// JSON / CSV forms of types, schemes, plans, simulator configs, and reports.
// Every output document carries the RunManifest that produced it.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ant/numeric_type.hpp"
#include "ant/quantize.hpp"
#include "ant/selector.hpp"
#include "ant/systolic.hpp"
#include "json.hpp"

namespace ant {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::vector<std::string> config_paths;
  std::map<std::string, std::string> input_digests;  // path -> sha256 hex
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;

  bool operator==(const RunManifest&) const = default;
};

std::string sha256_hex(const std::vector<std::uint8_t>& bytes);
std::string file_digest(const std::filesystem::path& path);

Json to_json(const NumericType& t);
NumericType numeric_type_from_json(const Json& j);

Json to_json(const QuantScheme& s);
QuantScheme scheme_from_json(const Json& j);

Json to_json(const SelectionResult& r);
SelectionResult selection_from_json(const Json& j);

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

struct PlanDocument {
  std::optional<RunManifest> manifest;
  PrecisionPlan plan;

  bool operator==(const PlanDocument&) const = default;
};

std::string plan_to_string(const PlanDocument& doc);
PlanDocument plan_from_string(const std::string& text);

Json to_json(const ArrayConfig& cfg);
ArrayConfig array_config_from_json(const Json& j);

struct ReportDocument {
  std::optional<RunManifest> manifest;
  SimReport report;

  bool operator==(const ReportDocument&) const = default;
};

std::string report_to_string(const ReportDocument& doc);
ReportDocument report_from_string(const std::string& text);

// Column order (fixed):
// layerId,M,N,K,width,tiles,computeCycles,cycles,weightDramBits,
// activationDramBits,outputDramBits,dramBits,sramBits,mac4,mac8,
// decodeEvents,encodeEvents,energyStatic,energyDram,energyBuffer,
// energyCore,energyTotal
// One row per layer followed by a "total" row.
std::string report_to_csv(const SimReport& report);
extern const std::vector<std::string> kReportCsvColumns;

// Shortest decimal that round-trips.
std::string format_double(double v);

}  // namespace ant

#endif  // ANT_SERIALIZE_HPP_
