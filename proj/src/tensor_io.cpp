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

#include "ant/tensor_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "ant/error.hpp"
#include "ant/serialize.hpp"

namespace ant {
namespace fs = std::filesystem;
namespace {

void put_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::vector<std::uint8_t> frame(const Json& header, std::size_t payload_reserve) {
  const std::string text = header.dump();
  std::vector<std::uint8_t> out;
  out.reserve(8 + text.size() + payload_reserve);
  put_u64_le(out, text.size());
  out.insert(out.end(), text.begin(), text.end());
  return out;
}

struct Framed {
  Json header;
  const std::uint8_t* payload = nullptr;
  std::size_t payload_size = 0;
};

Framed unframe(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8) throw FormatError("file is " + std::to_string(bytes.size()) + " bytes, too short for a header");
  const std::uint64_t header_len = get_u64_le(bytes.data());
  if (header_len > bytes.size() - 8) {
    throw FormatError("header length " + std::to_string(header_len) + " exceeds file size " +
                      std::to_string(bytes.size()));
  }
  Framed f;
  try {
    f.header = Json::parse(bytes.begin() + 8, bytes.begin() + 8 + static_cast<std::ptrdiff_t>(header_len));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed header: ") + e.what());
  }
  if (!f.header.is_object()) throw FormatError("header is not a JSON object");
  f.payload = bytes.data() + 8 + header_len;
  f.payload_size = bytes.size() - 8 - header_len;
  return f;
}

Shape shape_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("shape must be an array");
  Shape s;
  for (const Json& d : j) {
    if (!d.is_number_integer() || d.get<std::int64_t>() < 0) throw FormatError("shape entries must be non-negative integers");
    s.push_back(d.get<std::int64_t>());
  }
  return s;
}

void check_payload(std::size_t actual, std::int64_t expected) {
  if (static_cast<std::int64_t>(actual) != expected) {
    throw FormatError("payload size mismatch: expected " + std::to_string(expected) + " bytes, got " +
                      std::to_string(actual));
  }
}

template <typename T>
T require(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw FormatError(where + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(where + ": bad '" + key + "': " + e.what());
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

void require_file(const fs::path& p, const std::string& what) {
  if (!fs::is_regular_file(p)) throw IoError(what + " '" + p.string() + "' does not exist");
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const Tensor& tensor) {
  if (element_count(tensor.shape) != static_cast<std::int64_t>(tensor.data.size())) {
    throw InputError("tensor shape " + shape_string(tensor.shape) + " does not match its data");
  }
  Json header = {{"name", tensor.name}, {"shape", tensor.shape}, {"dtype", "f32"}, {"byteOrder", "little"}};
  std::vector<std::uint8_t> out = frame(header, tensor.data.size() * 4);
  for (float v : tensor.data) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  return out;
}

Tensor decode_tensor(const std::vector<std::uint8_t>& bytes) {
  const Framed f = unframe(bytes);
  const std::string dtype = require<std::string>(f.header, "dtype", "tensor header");
  const std::string order = require<std::string>(f.header, "byteOrder", "tensor header");
  if (dtype != "f32") throw FormatError("unsupported dtype '" + dtype + "' (only f32)");
  if (order != "little") throw FormatError("unsupported byteOrder '" + order + "' (only little)");
  Tensor t;
  t.name = f.header.contains("name") ? require<std::string>(f.header, "name", "tensor header") : "";
  t.shape = shape_from_json(f.header.contains("shape") ? f.header["shape"] : Json());
  const std::int64_t count = element_count(t.shape);
  check_payload(f.payload_size, count * 4);
  t.data.resize(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    std::uint32_t bits = 0;
    for (int b = 3; b >= 0; --b) bits = (bits << 8) | f.payload[i * 4 + static_cast<std::size_t>(b)];
    t.data[i] = std::bit_cast<float>(bits);
    if (!std::isfinite(t.data[i])) {
      throw InputError("non-finite value in tensor '" + t.name + "' at index " + std::to_string(i));
    }
  }
  return t;
}

std::vector<std::uint8_t> encode_qtensor(const QTensor& q) {
  q.validate();
  Json header = {{"shape", q.shape},
                 {"ntype", to_json(q.scheme.ntype)},
                 {"scales", q.scheme.scales},
                 {"axis", q.scheme.axis ? Json(*q.scheme.axis) : Json(nullptr)}};
  std::vector<std::uint8_t> out = frame(header, q.codes.size());
  out.insert(out.end(), q.codes.begin(), q.codes.end());
  return out;
}

QTensor decode_qtensor(const std::vector<std::uint8_t>& bytes) {
  const Framed f = unframe(bytes);
  QTensor q;
  q.shape = shape_from_json(f.header.contains("shape") ? f.header["shape"] : Json());
  if (!f.header.contains("ntype")) throw FormatError("qtensor header: missing 'ntype'");
  q.scheme.ntype = numeric_type_from_json(f.header["ntype"]);
  q.scheme.scales = require<std::vector<double>>(f.header, "scales", "qtensor header");
  if (f.header.contains("axis") && !f.header["axis"].is_null()) {
    q.scheme.axis = require<int>(f.header, "axis", "qtensor header");
  }
  check_payload(f.payload_size, element_count(q.shape));
  q.codes.assign(f.payload, f.payload + f.payload_size);
  const std::uint32_t limit = std::uint32_t{1} << q.scheme.ntype.width;
  for (std::size_t i = 0; i < q.codes.size(); ++i) {
    if (q.codes[i] >= limit) {
      throw FormatError("payload byte " + std::to_string(q.codes[i]) + " at index " + std::to_string(i) +
                        " exceeds " + std::to_string(q.scheme.ntype.width) + "-bit range");
    }
  }
  try {
    q.scheme.validate(q.shape);
  } catch (const InputError& e) {
    throw FormatError(std::string("qtensor header: ") + e.what());
  }
  return q;
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

std::string read_text(const fs::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void save_tensor(const fs::path& path, const Tensor& tensor) { write_file(path, encode_tensor(tensor)); }
Tensor load_tensor(const fs::path& path) { return decode_tensor(read_file(path)); }
void save_qtensor(const fs::path& path, const QTensor& q) { write_file(path, encode_qtensor(q)); }
QTensor load_qtensor(const fs::path& path) { return decode_qtensor(read_file(path)); }

GemmDims lower_conv_to_gemm(const ConvDims& c) {
  if (c.batch <= 0 || c.channels <= 0 || c.height <= 0 || c.width <= 0 || c.out_channels <= 0 ||
      c.kernel_h <= 0 || c.kernel_w <= 0 || c.stride <= 0 || c.pad < 0) {
    throw InputError("conv dims must be positive (pad non-negative)");
  }
  const std::int64_t padded_h = c.height + 2 * c.pad;
  const std::int64_t padded_w = c.width + 2 * c.pad;
  if (padded_h < c.kernel_h || padded_w < c.kernel_w) {
    throw InputError("conv kernel " + std::to_string(c.kernel_h) + "x" + std::to_string(c.kernel_w) +
                     " larger than padded input " + std::to_string(padded_h) + "x" + std::to_string(padded_w));
  }
  GemmDims g;
  g.out_h = (padded_h - c.kernel_h) / c.stride + 1;
  g.out_w = (padded_w - c.kernel_w) / c.stride + 1;
  g.m = c.batch * g.out_h * g.out_w;
  g.k = c.channels * c.kernel_h * c.kernel_w;
  g.n = c.out_channels;
  return g;
}

ModelGraph load_model_graph(const fs::path& path) {
  Json doc;
  try {
    doc = Json::parse(read_text(path));
  } catch (const Json::exception& e) {
    throw FormatError("model '" + path.string() + "': " + e.what());
  }
  const fs::path base = path.parent_path();
  if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array()) {
    throw FormatError("model '" + path.string() + "' needs a 'layers' array");
  }
  ModelGraph graph;
  for (const Json& jl : doc["layers"]) {
    ModelLayer layer;
    layer.layer_id = require<std::string>(jl, "layerId", "model layer");
    const std::string where = "layer '" + layer.layer_id + "'";
    layer.kind = require<std::string>(jl, "kind", where);
    if (layer.kind == "gemm") {
      layer.gemm.m = require<std::int64_t>(jl, "M", where);
      layer.gemm.n = require<std::int64_t>(jl, "N", where);
      layer.gemm.k = require<std::int64_t>(jl, "K", where);
      if (layer.gemm.m <= 0 || layer.gemm.n <= 0 || layer.gemm.k <= 0) {
        throw InputError(where + ": GEMM dims must be positive");
      }
    } else if (layer.kind == "conv") {
      if (!jl.contains("conv")) throw FormatError(where + ": conv layer needs 'conv' dims");
      const Json& jc = jl["conv"];
      ConvDims c;
      c.batch = require<std::int64_t>(jc, "N", where);
      c.channels = require<std::int64_t>(jc, "C", where);
      c.height = require<std::int64_t>(jc, "H", where);
      c.width = require<std::int64_t>(jc, "W", where);
      c.out_channels = require<std::int64_t>(jc, "Cout", where);
      c.kernel_h = require<std::int64_t>(jc, "Kh", where);
      c.kernel_w = require<std::int64_t>(jc, "Kw", where);
      c.stride = jc.contains("stride") ? require<std::int64_t>(jc, "stride", where) : 1;
      c.pad = jc.contains("pad") ? require<std::int64_t>(jc, "pad", where) : 0;
      layer.conv = c;
      layer.gemm = lower_conv_to_gemm(c);
    } else {
      throw FormatError(where + ": unknown kind '" + layer.kind + "'");
    }
    layer.weight_path = resolve(base, require<std::string>(jl, "weightTensor", where));
    require_file(layer.weight_path, where + " weight tensor");
    if (jl.contains("calibrationActivations")) {
      for (const std::string& p : require<std::vector<std::string>>(jl, "calibrationActivations", where)) {
        layer.calibration_paths.push_back(resolve(base, p));
        require_file(layer.calibration_paths.back(), where + " calibration tensor");
      }
    }
    graph.layers.push_back(std::move(layer));
  }
  return graph;
}

LayerTensors load_layer_tensors(const ModelLayer& layer, bool with_activations,
                                std::optional<std::size_t> calibration_limit) {
  const std::string where = "layer '" + layer.layer_id + "'";
  LayerTensors out;
  out.layer_id = layer.layer_id;
  out.weight = load_tensor(layer.weight_path);
  const GemmDims& g = layer.gemm;
  if (out.weight.shape.empty() || out.weight.shape[0] != g.n ||
      element_count(out.weight.shape) != g.n * g.k) {
    throw InputError(where + ": weight shape " + shape_string(out.weight.shape) + " inconsistent with N=" +
                     std::to_string(g.n) + ", K=" + std::to_string(g.k));
  }
  if (layer.conv) {
    const ConvDims& c = *layer.conv;
    if (out.weight.shape != Shape{c.out_channels, c.channels, c.kernel_h, c.kernel_w} &&
        out.weight.shape != Shape{g.n, g.k}) {
      throw InputError(where + ": conv weight shape " + shape_string(out.weight.shape) + " should be " +
                       shape_string({c.out_channels, c.channels, c.kernel_h, c.kernel_w}));
    }
  }
  out.weight.shape = {g.n, g.k};
  out.weight_axis = 0;

  if (!with_activations) return out;
  if (layer.calibration_paths.empty()) {
    throw PreconditionError(where + ": activation selection requested but the calibration list is empty");
  }
  std::size_t count = layer.calibration_paths.size();
  if (calibration_limit && *calibration_limit > 0) count = std::min(count, *calibration_limit);
  Tensor act;
  act.name = layer.layer_id + ".activations";
  for (std::size_t i = 0; i < count; ++i) {
    Tensor t = load_tensor(layer.calibration_paths[i]);
    bool consistent;
    if (layer.conv) {
      const ConvDims& c = *layer.conv;
      consistent = t.shape.size() == 4 && t.shape[1] == c.channels && t.shape[2] == c.height &&
                   t.shape[3] == c.width;
    } else {
      consistent = !t.shape.empty() && t.shape.back() == g.k;
    }
    if (!consistent) {
      throw InputError(where + ": calibration tensor '" + layer.calibration_paths[i].string() + "' has shape " +
                       shape_string(t.shape) + " inconsistent with the layer");
    }
    act.data.insert(act.data.end(), t.data.begin(), t.data.end());
  }
  act.shape = {static_cast<std::int64_t>(act.data.size())};
  out.activation = std::move(act);
  return out;
}

}  // namespace ant
