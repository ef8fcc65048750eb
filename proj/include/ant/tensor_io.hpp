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

#ifndef ANT_TENSOR_IO_HPP_
#define ANT_TENSOR_IO_HPP_

// On-disk formats. Tensor and quantized-tensor files share one framing:
//
//   offset 0   uint64 little-endian  header length H
//   offset 8   H bytes               UTF-8 JSON header
//   offset 8+H payload
//
// Tensor header:  {"byteOrder":"little","dtype":"f32","name":...,"shape":[...]}
//                 payload = row-major little-endian IEEE-754 binary32
// QTensor header: {"axis":null|int,"ntype":{...},"scales":[...],"shape":[...]}
//                 payload = one code per byte
//
// Headers are written with sorted keys and no whitespace, so a load/save
// cycle reproduces the file byte for byte.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ant/quantize.hpp"
#include "ant/selector.hpp"
#include "ant/tensor.hpp"

namespace ant {

std::vector<std::uint8_t> encode_tensor(const Tensor& tensor);
Tensor decode_tensor(const std::vector<std::uint8_t>& bytes);
void save_tensor(const std::filesystem::path& path, const Tensor& tensor);
Tensor load_tensor(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_qtensor(const QTensor& q);
QTensor decode_qtensor(const std::vector<std::uint8_t>& bytes);
void save_qtensor(const std::filesystem::path& path, const QTensor& q);
QTensor load_qtensor(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Model graphs.

struct ConvDims {
  std::int64_t batch = 1;
  std::int64_t channels = 1;
  std::int64_t height = 1;
  std::int64_t width = 1;
  std::int64_t out_channels = 1;
  std::int64_t kernel_h = 1;
  std::int64_t kernel_w = 1;
  std::int64_t stride = 1;
  std::int64_t pad = 0;

  bool operator==(const ConvDims&) const = default;
};

struct GemmDims {
  std::int64_t m = 0;
  std::int64_t n = 0;  // output channels; the per-channel weight axis
  std::int64_t k = 0;
  std::int64_t out_h = 1;
  std::int64_t out_w = 1;

  bool operator==(const GemmDims&) const = default;
};

// im2col: M = batch * H_out * W_out, K = C * Kh * Kw, N = out_channels.
// Throws InputError for non-positive dims or an empty output.
GemmDims lower_conv_to_gemm(const ConvDims& conv);

struct ModelLayer {
  std::string layer_id;
  std::string kind;  // "gemm" | "conv"
  GemmDims gemm;     // lowered dims for conv layers
  std::optional<ConvDims> conv;
  std::filesystem::path weight_path;
  std::vector<std::filesystem::path> calibration_paths;
};

struct ModelGraph {
  std::vector<ModelLayer> layers;
};

// Relative tensor paths resolve against the model file's directory. Missing
// referenced files raise IoError; malformed JSON raises FormatError.
ModelGraph load_model_graph(const std::filesystem::path& path);

// Loads and shape-checks one layer's weights (reshaped to [N, K]) and up to
// `calibration_limit` calibration tensors (concatenated into one flat
// tensor). With `with_activations` set, an empty calibration list is an
// error.
LayerTensors load_layer_tensors(const ModelLayer& layer, bool with_activations,
                                std::optional<std::size_t> calibration_limit = std::nullopt);

}  // namespace ant

#endif  // ANT_TENSOR_IO_HPP_
