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

#include "ant/serialize.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "ant/error.hpp"
#include "ant/tensor_io.hpp"

namespace ant {
namespace {

template <typename T>
T get(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string(where) + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string(where) + ": bad '" + key + "': " + e.what());
  }
}

Json layer_report_json(const LayerReport& r) {
  return {{"layerId", r.layer_id},
          {"M", r.m},
          {"N", r.n},
          {"K", r.k},
          {"width", r.width},
          {"tiles", r.tiles},
          {"computeCycles", r.compute_cycles},
          {"cycles", r.cycles},
          {"weightDramBits", r.weight_dram_bits},
          {"activationDramBits", r.activation_dram_bits},
          {"outputDramBits", r.output_dram_bits},
          {"dramBits", r.dram_bits},
          {"sramBits", r.sram_bits},
          {"mac4", r.mac4},
          {"mac8", r.mac8},
          {"decodeEvents", r.decode_events},
          {"encodeEvents", r.encode_events},
          {"energy",
           {{"static", r.energy.static_energy},
            {"dram", r.energy.dram},
            {"buffer", r.energy.buffer},
            {"core", r.energy.core},
            {"total", r.energy.total()}}}};
}

LayerReport layer_report_from_json(const Json& j) {
  constexpr const char* w = "report layer";
  LayerReport r;
  r.layer_id = get<std::string>(j, "layerId", w);
  r.m = get<std::int64_t>(j, "M", w);
  r.n = get<std::int64_t>(j, "N", w);
  r.k = get<std::int64_t>(j, "K", w);
  r.width = get<int>(j, "width", w);
  r.tiles = get<std::int64_t>(j, "tiles", w);
  r.compute_cycles = get<std::int64_t>(j, "computeCycles", w);
  r.cycles = get<std::int64_t>(j, "cycles", w);
  r.weight_dram_bits = get<std::int64_t>(j, "weightDramBits", w);
  r.activation_dram_bits = get<std::int64_t>(j, "activationDramBits", w);
  r.output_dram_bits = get<std::int64_t>(j, "outputDramBits", w);
  r.dram_bits = get<std::int64_t>(j, "dramBits", w);
  r.sram_bits = get<std::int64_t>(j, "sramBits", w);
  r.mac4 = get<std::int64_t>(j, "mac4", w);
  r.mac8 = get<std::int64_t>(j, "mac8", w);
  r.decode_events = get<std::int64_t>(j, "decodeEvents", w);
  r.encode_events = get<std::int64_t>(j, "encodeEvents", w);
  const Json e = get<Json>(j, "energy", w);
  r.energy.static_energy = get<double>(e, "static", w);
  r.energy.dram = get<double>(e, "dram", w);
  r.energy.buffer = get<double>(e, "buffer", w);
  r.energy.core = get<double>(e, "core", w);
  return r;
}

Json parse_document(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string sha256_hex(const std::vector<std::uint8_t>& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string file_digest(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

Json to_json(const NumericType& t) {
  return {{"kind", std::string(kind_name(t.kind))},
          {"width", t.width},
          {"signed", t.is_signed},
          {"floatSplit", Json::array({t.exponent_bits, t.mantissa_bits})}};
}

NumericType numeric_type_from_json(const Json& j) {
  constexpr const char* w = "ntype";
  NumericType t;
  try {
    t.kind = parse_kind(get<std::string>(j, "kind", w));
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
  t.width = get<int>(j, "width", w);
  t.is_signed = get<bool>(j, "signed", w);
  if (j.contains("floatSplit")) {
    const auto split = get<std::vector<int>>(j, "floatSplit", w);
    if (split.size() != 2) throw FormatError("ntype: floatSplit must have two entries");
    t.exponent_bits = split[0];
    t.mantissa_bits = split[1];
  }
  try {
    t.validate();
  } catch (const DomainError& e) {
    throw FormatError(std::string("ntype: ") + e.what());
  }
  return t;
}

Json to_json(const QuantScheme& s) {
  return {{"ntype", to_json(s.ntype)}, {"scales", s.scales}, {"axis", s.axis ? Json(*s.axis) : Json(nullptr)}};
}

QuantScheme scheme_from_json(const Json& j) {
  QuantScheme s;
  s.ntype = numeric_type_from_json(get<Json>(j, "ntype", "scheme"));
  s.scales = get<std::vector<double>>(j, "scales", "scheme");
  if (j.contains("axis") && !j["axis"].is_null()) s.axis = get<int>(j, "axis", "scheme");
  return s;
}

Json to_json(const SelectionResult& r) {
  Json per = Json::array();
  for (const CandidateMse& c : r.per_candidate) per.push_back({{"ntype", to_json(c.ntype)}, {"mse", c.mse}});
  return {{"ntype", to_json(r.ntype)},
          {"scheme", to_json(r.scheme)},
          {"mse", r.mse},
          {"meanSquare", r.mean_square},
          {"normalizedMse", r.normalized_mse()},
          {"perCandidateMse", per}};
}

SelectionResult selection_from_json(const Json& j) {
  constexpr const char* w = "selection";
  SelectionResult r;
  r.ntype = numeric_type_from_json(get<Json>(j, "ntype", w));
  r.scheme = scheme_from_json(get<Json>(j, "scheme", w));
  r.mse = get<double>(j, "mse", w);
  r.mean_square = get<double>(j, "meanSquare", w);
  for (const Json& c : get<Json>(j, "perCandidateMse", w)) {
    r.per_candidate.push_back({numeric_type_from_json(get<Json>(c, "ntype", w)), get<double>(c, "mse", w)});
  }
  return r;
}

Json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"configPaths", m.config_paths},
          {"inputDigests", m.input_digests},
          {"toolVersion", m.tool_version},
          {"seed", m.seed}};
}

RunManifest manifest_from_json(const Json& j) {
  constexpr const char* w = "manifest";
  RunManifest m;
  m.command = get<std::string>(j, "command", w);
  m.config_paths = get<std::vector<std::string>>(j, "configPaths", w);
  m.input_digests = get<std::map<std::string, std::string>>(j, "inputDigests", w);
  m.tool_version = get<std::string>(j, "toolVersion", w);
  m.seed = get<std::uint64_t>(j, "seed", w);
  return m;
}

namespace {

Json layers_json(const std::vector<LayerPlan>& layers) {
  Json out = Json::array();
  for (const LayerPlan& l : layers) {
    out.push_back({{"layerId", l.layer_id},
                   {"width", l.width},
                   {"layerMse", l.layer_mse()},
                   {"weight", to_json(l.weight)},
                   {"activation", l.activation ? to_json(*l.activation) : Json(nullptr)}});
  }
  return out;
}

std::vector<LayerPlan> layers_from_json(const Json& j) {
  constexpr const char* w = "plan";
  if (!j.is_array()) throw FormatError("plan: layer list must be an array");
  std::vector<LayerPlan> out;
  for (const Json& jl : j) {
    LayerPlan l;
    l.layer_id = get<std::string>(jl, "layerId", w);
    l.width = get<int>(jl, "width", w);
    if (l.width != 4 && l.width != 8) throw FormatError("plan layer '" + l.layer_id + "' width must be 4 or 8");
    l.weight = selection_from_json(get<Json>(jl, "weight", w));
    if (jl.contains("activation") && !jl["activation"].is_null()) l.activation = selection_from_json(jl["activation"]);
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace

std::string plan_to_string(const PlanDocument& doc) {
  Json j = {{"layers", layers_json(doc.plan.layers)},
            {"initialLayers", layers_json(doc.plan.initial_layers)},
            {"aggregateMse", doc.plan.aggregate_mse},
            {"promotionOrder", doc.plan.promotion_order},
            {"aggregateHistory", doc.plan.aggregate_history}};
  if (doc.manifest) j["manifest"] = to_json(*doc.manifest);
  return j.dump(2) + "\n";
}

PlanDocument plan_from_string(const std::string& text) {
  const Json j = parse_document(text, "plan");
  constexpr const char* w = "plan";
  PlanDocument doc;
  if (j.contains("manifest")) doc.manifest = manifest_from_json(j["manifest"]);
  doc.plan.layers = layers_from_json(get<Json>(j, "layers", w));
  if (j.contains("initialLayers")) doc.plan.initial_layers = layers_from_json(j["initialLayers"]);
  doc.plan.aggregate_mse = get<double>(j, "aggregateMse", w);
  doc.plan.promotion_order = get<std::vector<std::string>>(j, "promotionOrder", w);
  doc.plan.aggregate_history = get<std::vector<double>>(j, "aggregateHistory", w);
  return doc;
}

Json to_json(const ArrayConfig& cfg) {
  const EnergyTable& e = cfg.energy;
  return {{"n", cfg.n},
          {"bufferBytes", cfg.buffer_bytes},
          {"dataflow", std::string(dataflow_name(cfg.dataflow))},
          {"dramBandwidth", cfg.dram_bandwidth},
          {"energy",
           {{"dramPerBit", e.dram_per_bit},
            {"sramPerBit", e.sram_per_bit},
            {"mac4", e.mac4},
            {"mac8", e.mac8},
            {"decode", e.decode},
            {"staticPerCycle", e.static_per_cycle}}}};
}

ArrayConfig array_config_from_json(const Json& j) {
  constexpr const char* w = "array config";
  ArrayConfig cfg;
  if (!j.is_object()) throw FormatError("array config must be a JSON object");
  if (j.contains("n")) cfg.n = get<int>(j, "n", w);
  if (j.contains("bufferBytes")) cfg.buffer_bytes = get<std::int64_t>(j, "bufferBytes", w);
  if (j.contains("dataflow")) cfg.dataflow = parse_dataflow(get<std::string>(j, "dataflow", w));
  if (j.contains("dramBandwidth")) cfg.dram_bandwidth = get<double>(j, "dramBandwidth", w);
  const Json e = get<Json>(j, "energy", w);
  cfg.energy.dram_per_bit = get<double>(e, "dramPerBit", w);
  cfg.energy.sram_per_bit = get<double>(e, "sramPerBit", w);
  cfg.energy.mac4 = get<double>(e, "mac4", w);
  cfg.energy.mac8 = get<double>(e, "mac8", w);
  cfg.energy.decode = get<double>(e, "decode", w);
  cfg.energy.static_per_cycle = get<double>(e, "staticPerCycle", w);
  cfg.validate();
  return cfg;
}

std::string report_to_string(const ReportDocument& doc) {
  Json layers = Json::array();
  for (const LayerReport& r : doc.report.layers) layers.push_back(layer_report_json(r));
  Json j = {{"dataflow", std::string(dataflow_name(doc.report.dataflow))},
            {"layers", layers},
            {"total", layer_report_json(doc.report.total)}};
  if (doc.manifest) j["manifest"] = to_json(*doc.manifest);
  return j.dump(2) + "\n";
}

ReportDocument report_from_string(const std::string& text) {
  const Json j = parse_document(text, "report");
  ReportDocument doc;
  if (j.contains("manifest")) doc.manifest = manifest_from_json(j["manifest"]);
  doc.report.dataflow = parse_dataflow(get<std::string>(j, "dataflow", "report"));
  for (const Json& jl : get<Json>(j, "layers", "report")) doc.report.layers.push_back(layer_report_from_json(jl));
  doc.report.total = layer_report_from_json(get<Json>(j, "total", "report"));
  return doc;
}

const std::vector<std::string> kReportCsvColumns = {
    "layerId",      "M",           "N",          "K",           "width",         "tiles",
    "computeCycles", "cycles",     "weightDramBits", "activationDramBits", "outputDramBits", "dramBits",
    "sramBits",     "mac4",        "mac8",       "decodeEvents", "encodeEvents", "energyStatic",
    "energyDram",   "energyBuffer", "energyCore", "energyTotal"};

std::string report_to_csv(const SimReport& report) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kReportCsvColumns.size(); ++i) os << (i ? "," : "") << kReportCsvColumns[i];
  os << '\n';
  auto row = [&](const LayerReport& r) {
    os << r.layer_id << ',' << r.m << ',' << r.n << ',' << r.k << ',' << r.width << ',' << r.tiles << ','
       << r.compute_cycles << ',' << r.cycles << ',' << r.weight_dram_bits << ',' << r.activation_dram_bits
       << ',' << r.output_dram_bits << ',' << r.dram_bits << ',' << r.sram_bits << ',' << r.mac4 << ','
       << r.mac8 << ',' << r.decode_events << ',' << r.encode_events << ','
       << format_double(r.energy.static_energy) << ',' << format_double(r.energy.dram) << ','
       << format_double(r.energy.buffer) << ',' << format_double(r.energy.core) << ','
       << format_double(r.energy.total()) << '\n';
  };
  for (const LayerReport& r : report.layers) row(r);
  row(report.total);
  return os.str();
}

}  // namespace ant
