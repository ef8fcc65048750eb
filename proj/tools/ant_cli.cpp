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

// ant: command-line front end for the flint/ANT quantization toolkit.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ant/error.hpp"
#include "ant/flint.hpp"
#include "ant/numeric_type.hpp"
#include "ant/pe.hpp"
#include "ant/quantize.hpp"
#include "ant/selector.hpp"
#include "ant/serialize.hpp"
#include "ant/systolic.hpp"
#include "ant/tensor_io.hpp"
#include "ant/verify.hpp"

namespace fs = std::filesystem;
using namespace ant;

namespace {

enum ExitCode {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kIo = 3,
  kFormat = 4,
  kInput = 5,
  kConfig = 6,
  kDatapath = 7,
  kVerifyFailed = 8,
  kPrecondition = 9,
  kDomain = 10,
};

const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error (bad flags or arguments)\n"
    "  3  I/O error (missing or unreadable file)\n"
    "  4  format error (malformed file header, JSON or payload)\n"
    "  5  input error (non-finite data, shape mismatch)\n"
    "  6  configuration error (array config, tiling, plan/model mismatch)\n"
    "  7  datapath error (value does not fit the modeled PE)\n"
    "  8  verification failed\n"
    "  9  precondition error (e.g. negative data for an unsigned type,\n"
    "     empty calibration list)\n"
    " 10  domain error (unsupported width or type)\n"
    "\n"
    "ANT_THREADS caps the worker pool.";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::string command_line;
  std::uint64_t seed = 0;
};

RunManifest make_manifest(const Context& ctx, std::vector<fs::path> configs, const std::vector<fs::path>& inputs) {
  RunManifest m;
  m.command = ctx.command_line;
  for (const fs::path& p : configs) m.config_paths.push_back(p.string());
  for (const fs::path& p : inputs) m.input_digests[p.string()] = file_digest(p);
  m.seed = ctx.seed;
  return m;
}

std::vector<TypeKind> parse_kinds(const std::string& list) {
  std::vector<TypeKind> kinds;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) kinds.push_back(parse_kind(item));
  }
  if (kinds.empty()) throw UsageError("empty candidate list");
  return kinds;
}

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return format_double(v);
}

// ---------------------------------------------------------------------------
// tables

struct TablesArgs {
  std::string type = "flint";
  int bits = 4;
  bool is_signed = false;
  std::string float_split;
  std::string csv;
};

int cmd_tables(const TablesArgs& a) {
  NumericType t;
  const TypeKind kind = parse_kind(a.type);
  if (kind == TypeKind::kFloat) {
    t = NumericType::DefaultFloat(a.bits, a.is_signed);
    if (!a.float_split.empty()) {
      int e = 0, m = 0;
      if (std::sscanf(a.float_split.c_str(), "%d,%d", &e, &m) != 2) throw UsageError("--float-split expects E,M");
      t = NumericType::Float(a.bits, a.is_signed, e, m);
    }
  } else {
    t = NumericType{kind, a.bits, a.is_signed};
  }
  t.validate();
  const Codec codec(t);

  std::ostringstream csv;
  csv << "code,bits,base,exponent,value\n";
  std::cout << t.name() << " (" << (1u << t.width) << " codes)\n";
  std::cout << "code  bits      base  exponent  value\n";
  for (std::uint32_t code = 0; code < (1u << t.width); ++code) {
    std::string bits;
    for (int b = t.width - 1; b >= 0; --b) bits += ((code >> b) & 1U) ? '1' : '0';
    const DecodedPair p = decode_operand(t, code).pair;
    const std::string value = format_double(codec.decode(code));
    csv << code << ',' << bits << ',' << p.base << ',' << p.exponent << ',' << value << '\n';
    std::cout << std::left << std::setw(6) << code << std::setw(10) << bits << std::setw(6) << p.base
              << std::setw(10) << p.exponent << value << '\n';
  }
  if (!a.csv.empty()) write_text(a.csv, csv.str());
  return kOk;
}

// ---------------------------------------------------------------------------
// quantize

struct QuantizeArgs {
  std::string input;
  std::string output;
  std::string type;
  std::optional<double> scale;
  std::optional<int> axis;
  std::string candidates = "int,pot,flint";
  int bits = 4;
};

int cmd_quantize(const Context& ctx, const QuantizeArgs& a) {
  if (a.scale && a.type.empty()) throw UsageError("--scale requires --type");
  const Tensor t = load_tensor(a.input);
  QuantScheme scheme;
  std::string how;
  if (!a.type.empty()) {
    const NumericType type = NumericType::parse(a.type);
    if (a.scale) {
      const std::int64_t channels = AxisLayout::make(t.shape, a.axis).channels;
      scheme = a.axis ? QuantScheme::per_channel(type, std::vector<double>(static_cast<std::size_t>(channels), *a.scale), *a.axis)
                      : QuantScheme::per_tensor(type, *a.scale);
      how = "fixed scale";
    } else {
      scheme = argmin_mse_scale(t, type, a.axis).scheme;
      how = "scale search";
    }
  } else {
    const auto kinds = parse_kinds(a.candidates);
    const auto cands = candidates_for(kinds, a.bits, t);
    scheme = select_type(t, cands, a.axis).scheme;
    how = "type selection";
  }
  const QTensor q = quantize(t, scheme);
  const double err = mse(t, dequantize(q));
  save_qtensor(a.output, q);
  const RunManifest m = make_manifest(ctx, {}, {a.input});
  write_text(a.output + ".manifest.json", to_json(m).dump(2) + "\n");
  std::cout << a.output << ": " << scheme.ntype.name() << " (" << how << "), " << scheme.scales.size()
            << " scale(s), mse " << format_double(err) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// select

struct SelectArgs {
  std::string model;
  std::string candidates = "int,pot,flint";
  std::size_t calib = 0;
  bool weights_only = false;
  double threshold = std::numeric_limits<double>::infinity();
  std::optional<int> budget;
  int bits = 4;
  std::string out;
  std::string csv;
};

std::string default_csv_path(const std::string& out) {
  fs::path p(out);
  return (p.parent_path() / (p.stem().string() + "_mse.csv")).string();
}

void append_mse_rows(std::ostringstream& csv, const std::string& layer_id, const char* role,
                     const SelectionResult& r, const std::vector<TypeKind>& kinds) {
  std::optional<double> flint_mse;
  for (const CandidateMse& c : r.per_candidate)
    if (c.ntype.kind == TypeKind::kFlint) flint_mse = c.mse;
  csv << layer_id << ',' << role << ',' << r.ntype.name() << ',' << csv_number(r.mse) << ','
      << csv_number(r.normalized_mse());
  for (TypeKind k : kinds) {
    std::optional<double> v;
    for (const CandidateMse& c : r.per_candidate)
      if (c.ntype.kind == k) v = c.mse;
    csv << ',';
    if (!v) continue;
    if (!flint_mse) {
      csv << csv_number(*v);
    } else if (*flint_mse == 0.0) {
      csv << (*v == 0.0 ? "1" : "inf");
    } else {
      csv << csv_number(*v / *flint_mse);
    }
  }
  csv << '\n';
}

int cmd_select(const Context& ctx, const SelectArgs& a) {
  const auto kinds = parse_kinds(a.candidates);
  const ModelGraph graph = load_model_graph(a.model);
  std::vector<LayerTensors> layers;
  std::vector<fs::path> inputs{a.model};
  for (const ModelLayer& ml : graph.layers) {
    layers.push_back(load_layer_tensors(ml, !a.weights_only, a.calib ? std::optional<std::size_t>(a.calib) : std::nullopt));
    inputs.push_back(ml.weight_path);
    if (!a.weights_only) {
      const std::size_t used = a.calib ? std::min(a.calib, ml.calibration_paths.size()) : ml.calibration_paths.size();
      for (std::size_t i = 0; i < used; ++i) inputs.push_back(ml.calibration_paths[i]);
    }
  }
  PlanOptions opts;
  opts.candidate_kinds = kinds;
  opts.low_width = a.bits;
  opts.threshold = a.threshold;
  opts.max_promotions = a.budget;
  const PrecisionPlan plan = plan_mixed_precision(layers, opts);
  const PlanDocument doc{make_manifest(ctx, {a.model}, inputs), plan};
  write_text(a.out, plan_to_string(doc));

  const bool have_flint = std::find(kinds.begin(), kinds.end(), TypeKind::kFlint) != kinds.end();
  std::ostringstream csv;
  csv << "layerId,tensor,selected,mse,normalizedMse";
  for (TypeKind k : kinds) csv << ',' << kind_name(k) << (have_flint ? "_vs_flint" : "_mse");
  csv << '\n';
  for (const LayerPlan& l : plan.initial_layers) {
    append_mse_rows(csv, l.layer_id, "weight", l.weight, kinds);
    if (l.activation) append_mse_rows(csv, l.layer_id, "activation", *l.activation, kinds);
  }
  const std::string csv_path = a.csv.empty() ? default_csv_path(a.out) : a.csv;
  write_text(csv_path, csv.str());

  for (const LayerPlan& l : plan.layers) {
    std::cout << l.layer_id << ": " << l.width << "-bit, weight " << l.weight.ntype.name();
    if (l.activation) std::cout << ", activation " << l.activation->ntype.name();
    std::cout << '\n';
  }
  std::cout << "aggregate mse " << format_double(plan.aggregate_mse) << ", " << plan.promotion_order.size()
            << " layer(s) promoted to int8\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string model;
  std::string plan;
  std::string config;
  std::string dataflow;
  std::string out;
};

int cmd_simulate(const Context& ctx, const SimulateArgs& a) {
  const ModelGraph graph = load_model_graph(a.model);
  const PlanDocument plan = plan_from_string(read_text(a.plan));
  Json cfg_json;
  try {
    cfg_json = Json::parse(read_text(a.config));
  } catch (const Json::exception& e) {
    throw FormatError("array config '" + a.config + "': " + e.what());
  }
  ArrayConfig cfg = array_config_from_json(cfg_json);
  if (!a.dataflow.empty()) cfg.dataflow = parse_dataflow(a.dataflow);

  if (plan.plan.layers.size() != graph.layers.size()) {
    throw ConfigError("plan has " + std::to_string(plan.plan.layers.size()) + " layers but the model has " +
                      std::to_string(graph.layers.size()));
  }
  GemmWorkload workload;
  for (const ModelLayer& ml : graph.layers) {
    const LayerPlan* lp = plan.plan.find(ml.layer_id);
    if (!lp) throw ConfigError("plan has no entry for model layer '" + ml.layer_id + "'");
    GemmLayer g;
    g.layer_id = ml.layer_id;
    g.m = ml.gemm.m;
    g.n = ml.gemm.n;
    g.k = ml.gemm.k;
    g.width = lp->width;
    g.weight_type = lp->weight.ntype;
    g.activation_type = lp->activation ? lp->activation->ntype : lp->weight.ntype;
    workload.layers.push_back(g);
  }
  const SimReport report = simulate_model(cfg, workload);
  const ReportDocument doc{make_manifest(ctx, {a.model, a.plan, a.config}, {a.model, a.plan, a.config}), report};
  write_text(a.out + ".json", report_to_string(doc));
  write_text(a.out + ".csv", report_to_csv(report));
  std::cout << dataflow_name(cfg.dataflow) << ": " << report.total.cycles << " cycles, energy "
            << format_double(report.total.energy.total()) << " over " << report.layers.size() << " layer(s)\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify() {
  bool ok = true;
  for (const CheckResult& r : run_oracle_suite()) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? kOk : kVerifyFailed;
}

int report(int code, const std::string& what) {
  std::cerr << "ant: error: " << what << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ant: flint / adaptive numeric type quantization and accelerator model"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_option("--seed", ctx.seed, "Seed recorded in output manifests")->capture_default_str();

  TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "Print the code table of a numeric type");
  tables->add_option("--type", ta.type, "int, pot, flint or float")->capture_default_str();
  tables->add_option("--bits", ta.bits, "Bit width (3-8)")->capture_default_str();
  tables->add_flag("--signed", ta.is_signed, "Signed variant");
  tables->add_option("--float-split", ta.float_split, "Exponent,mantissa bits for float (e.g. 2,1)");
  tables->add_option("--csv", ta.csv, "Also write the table as CSV");

  QuantizeArgs qa;
  auto* quant = app.add_subcommand("quantize", "Quantize a tensor file");
  quant->add_option("--input", qa.input, "Tensor file")->required();
  quant->add_option("--output", qa.output, "Quantized tensor file to write")->required();
  quant->add_option("--type", qa.type, "Numeric type, e.g. flint4s; omit to select automatically");
  quant->add_option("--scale", qa.scale, "Fixed scale (requires --type); otherwise the MSE-optimal scale is searched");
  quant->add_option("--axis", qa.axis, "Per-channel axis");
  quant->add_option("--candidates", qa.candidates, "Candidate kinds for automatic selection")->capture_default_str();
  quant->add_option("--bits", qa.bits, "Width for automatic selection")->capture_default_str();

  SelectArgs sa;
  auto* select = app.add_subcommand("select", "Select per-tensor types and plan mixed precision");
  select->add_option("model", sa.model, "Model graph JSON")->required();
  select->add_option("--candidates", sa.candidates, "Comma-separated candidate kinds")->capture_default_str();
  select->add_option("--calib", sa.calib, "Calibration tensors per layer (0 = all)")->capture_default_str();
  select->add_flag("--weights-only", sa.weights_only, "Skip activation selection");
  select->add_option("--threshold", sa.threshold, "Stop promoting once aggregate MSE <= threshold");
  select->add_option("--budget", sa.budget, "Promote at most this many layers to int8");
  select->add_option("--bits", sa.bits, "Low width")->capture_default_str();
  select->add_option("--out", sa.out, "Plan JSON to write")->required();
  select->add_option("--csv", sa.csv, "Per-tensor MSE CSV (default: <plan stem>_mse.csv)");

  SimulateArgs ma;
  auto* simulate = app.add_subcommand("simulate", "Simulate a planned model on the systolic array");
  simulate->add_option("model", ma.model, "Model graph JSON")->required();
  simulate->add_option("plan", ma.plan, "Plan JSON from 'select'")->required();
  simulate->add_option("config", ma.config, "Array config JSON")->required();
  simulate->add_option("--dataflow", ma.dataflow, "os or ws (overrides the config)");
  simulate->add_option("--out", ma.out, "Output prefix; writes <prefix>.json and <prefix>.csv")->required();

  auto* verify = app.add_subcommand("verify", "Run the exhaustive codec and datapath checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  for (int i = 1; i < argc; ++i) ctx.command_line += (i > 1 ? " " : "") + std::string(argv[i]);

  try {
    if (*tables) return cmd_tables(ta);
    if (*quant) return cmd_quantize(ctx, qa);
    if (*select) return cmd_select(ctx, sa);
    if (*simulate) return cmd_simulate(ctx, ma);
    if (*verify) return cmd_verify();
  } catch (const UsageError& e) {
    return report(kUsage, e.what());
  } catch (const IoError& e) {
    return report(kIo, e.what());
  } catch (const FormatError& e) {
    return report(kFormat, e.what());
  } catch (const InputError& e) {
    return report(kInput, e.what());
  } catch (const ConfigError& e) {
    return report(kConfig, e.what());
  } catch (const DatapathError& e) {
    return report(kDatapath, e.what());
  } catch (const PreconditionError& e) {
    return report(kPrecondition, e.what());
  } catch (const DomainError& e) {
    return report(kDomain, e.what());
  } catch (const std::exception& e) {
    return report(kInternal, e.what());
  }
  return kInternal;
}
