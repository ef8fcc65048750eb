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


#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "ant/selector.hpp"
#include "ant/serialize.hpp"
#include "ant/tensor_io.hpp"
#include "support/oracles.hpp"

namespace ant {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string("\"") + ANT_CLI_PATH + "\" " + args + " 2>&1";
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ant_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string p(const std::string& name) const { return (dir_ / name).string(); }

  // Two gemm layers with Gaussian weights and activations.
  std::string write_toy_model(bool with_calibration = true) {
    const int dims[2][3] = {{16, 32, 64}, {16, 16, 32}};  // M, N, K
    Json layers = Json::array();
    for (int i = 0; i < 2; ++i) {
      const auto [m, n, k] = std::tuple{dims[i][0], dims[i][1], dims[i][2]};
      const std::string id = "fc" + std::to_string(i);
      save_tensor(p(id + ".w"), Tensor({n, k}, oracle::sample(oracle::Dist::kNormal, n * k, 10 + i), id));
      save_tensor(p(id + ".a"), Tensor({m, k}, oracle::sample(oracle::Dist::kNormal, m * k, 20 + i), id));
      layers.push_back({{"layerId", id},
                        {"kind", "gemm"},
                        {"M", m},
                        {"N", n},
                        {"K", k},
                        {"weightTensor", id + ".w"},
                        {"calibrationActivations", with_calibration ? Json::array({id + ".a"}) : Json::array()}});
    }
    write_text(p("model.json"), Json{{"layers", layers}}.dump(2));
    return p("model.json");
  }

  std::string write_config() {
    ArrayConfig cfg;
    cfg.n = 16;
    cfg.energy = {20.0, 1.0, 0.25, 1.0, 0.05, 10.0};
    write_text(p("array.json"), to_json(cfg).dump(2));
    return p("array.json");
  }

  fs::path dir_;
};

std::set<double> table_values(const std::string& out) {
  std::set<double> v;
  for (const std::string& l : lines(out)) {
    std::istringstream in(l);
    std::string code, bits, base, exp, value;
    if (!(in >> code >> bits >> base >> exp >> value) || code == "code") continue;
    v.insert(std::stod(value));
  }
  return v;
}

TEST_F(CliTest, TablesFlint4) {
  const RunResult r = run("tables --type flint --bits 4 --csv " + p("t.csv"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(table_values(r.out), (std::set<double>{0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 14, 16, 24, 32, 64}));
  const auto csv = lines(read_text(p("t.csv")));
  ASSERT_EQ(csv.size(), 17u);
  EXPECT_EQ(csv[0], "code,bits,base,exponent,value");
  EXPECT_EQ(csv[9], "8,1000,1,6,64");
  EXPECT_EQ(csv[15], "14,1110,12,0,12");
}

TEST_F(CliTest, TablesSignedFlintAndInt) {
  RunResult r = run("tables --type flint --bits 4 --signed");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(table_values(r.out), (std::set<double>{0, 1, -1, 2, -2, 3, -3, 4, -4, 6, -6, 8, -8, 16, -16}));
  r = run("tables --type int --bits 4");
  ASSERT_EQ(r.code, 0);
  std::set<double> want;
  for (int i = 0; i < 16; ++i) want.insert(i);
  EXPECT_EQ(table_values(r.out), want);
}

TEST_F(CliTest, TablesErrors) {
  EXPECT_EQ(run("tables --type flint --bits 9").code, 10);
  EXPECT_EQ(run("tables --type posit --bits 4").code, 10);
  EXPECT_EQ(run("tables --bits").code, 2);
  EXPECT_EQ(run("").code, 2);
  const RunResult help = run("--help");
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("Exit codes"), std::string::npos);
}

TEST_F(CliTest, SelectMatchesLibraryPlan) {
  const std::string model = write_toy_model();
  const RunResult r = run("select " + model + " --out " + p("plan.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const PlanDocument doc = plan_from_string(read_text(p("plan.json")));
  ASSERT_TRUE(doc.manifest.has_value());
  EXPECT_EQ(doc.manifest->input_digests.size(), 5u);

  const ModelGraph g = load_model_graph(model);
  std::vector<LayerTensors> layers;
  for (const ModelLayer& l : g.layers) layers.push_back(load_layer_tensors(l, true));
  EXPECT_EQ(doc.plan, plan_mixed_precision(layers, {}));
  ASSERT_EQ(doc.plan.layers.size(), 2u);
  for (const LayerPlan& l : doc.plan.initial_layers) {
    double best = INFINITY;
    for (const CandidateMse& c : l.weight.per_candidate) best = std::min(best, c.mse);
    EXPECT_EQ(l.weight.mse, best);
  }

  const auto csv = lines(read_text(p("plan_mse.csv")));
  ASSERT_EQ(csv.size(), 5u);
  EXPECT_EQ(csv[0], "layerId,tensor,selected,mse,normalizedMse,int_vs_flint,pot_vs_flint,flint_vs_flint");
  EXPECT_EQ(csv[1].rfind("fc0,weight,", 0), 0u);
  EXPECT_EQ(csv[1].substr(csv[1].rfind(',')), ",1");
}

TEST_F(CliTest, SelectSingleCandidateIsDegenerate) {
  const std::string model = write_toy_model();
  ASSERT_EQ(run("select " + model + " --candidates int --budget 0 --out " + p("plan.json")).code, 0);
  const PlanDocument doc = plan_from_string(read_text(p("plan.json")));
  for (const LayerPlan& l : doc.plan.layers) {
    EXPECT_EQ(l.width, 4);
    EXPECT_EQ(l.weight.ntype.kind, TypeKind::kInt);
    EXPECT_EQ(l.activation->ntype.kind, TypeKind::kInt);
  }
  EXPECT_EQ(lines(read_text(p("plan_mse.csv")))[0], "layerId,tensor,selected,mse,normalizedMse,int_mse");
}

TEST_F(CliTest, SelectErrors) {
  const std::string model = write_toy_model(false);
  EXPECT_EQ(run("select " + model + " --out " + p("plan.json")).code, 9);
  EXPECT_EQ(run("select " + model + " --weights-only --out " + p("plan.json")).code, 0);
  EXPECT_EQ(run("select " + p("missing.json") + " --out " + p("plan.json")).code, 3);
  write_text(p("bad.json"), "{\"layers\": [");
  EXPECT_EQ(run("select " + p("bad.json") + " --out " + p("plan.json")).code, 4);
  save_tensor(p("fc0.w"), Tensor({32, 63}, std::vector<float>(32 * 63, 1.0F)));
  EXPECT_EQ(run("select " + model + " --weights-only --out " + p("plan.json")).code, 5);
  EXPECT_EQ(run("select " + model + " --out").code, 2);
}

TEST_F(CliTest, SelectIsDeterministic) {
  const std::string model = write_toy_model();
  ASSERT_EQ(run("select " + model + " --seed 7 --out " + p("a.json")).code, 0);
  ASSERT_EQ(run("select " + model + " --seed 7 --out " + p("a2.json") + " --csv " + p("a2.csv")).code, 0);
  const std::string a = read_text(p("a.json")), b = read_text(p("a2.json"));
  EXPECT_EQ(plan_from_string(a).plan, plan_from_string(b).plan);
  EXPECT_EQ(read_text(p("a_mse.csv")), read_text(p("a2.csv")));
  ASSERT_EQ(run("select " + model + " --seed 7 --out " + p("a.json")).code, 0);
  EXPECT_EQ(read_text(p("a.json")), a);
  EXPECT_EQ(plan_from_string(a).manifest->seed, 7u);
}

Json strip(Json j, const std::set<std::string>& keys) {
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!keys.count(it.key())) out[it.key()] = strip(it.value(), keys);
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const Json& e : j) out.push_back(strip(e, keys));
    return out;
  }
  return j;
}

TEST_F(CliTest, SimulateDataflowsDifferOnlyInCyclesAndEnergy) {
  const std::string model = write_toy_model();
  const std::string cfg = write_config();
  ASSERT_EQ(run("select " + model + " --out " + p("plan.json")).code, 0);
  const std::string base = "simulate " + model + " " + p("plan.json") + " " + cfg;
  ASSERT_EQ(run(base + " --dataflow os --out " + p("os")).code, 0);
  ASSERT_EQ(run(base + " --dataflow ws --out " + p("ws")).code, 0);
  const Json os = Json::parse(read_text(p("os.json")));
  const Json ws = Json::parse(read_text(p("ws.json")));
  EXPECT_NE(os, ws);
  const std::set<std::string> varying = {"dataflow", "cycles", "computeCycles", "energy", "tiles", "sramBits", "manifest"};
  EXPECT_EQ(strip(os, varying), strip(ws, varying));
  const auto csv = lines(read_text(p("os.csv")));
  ASSERT_EQ(csv.size(), 4u);
  EXPECT_EQ(csv[3].rfind("total,", 0), 0u);
}

TEST_F(CliTest, SimulateWidthRatio) {
  const std::string model = write_toy_model();
  const std::string cfg = write_config();
  ASSERT_EQ(run("select " + model + " --out " + p("low.json") + " --budget 0").code, 0);
  ASSERT_EQ(run("select " + model + " --out " + p("high.json") + " --threshold 0").code, 0);
  ASSERT_EQ(run("simulate " + model + " " + p("low.json") + " " + cfg + " --out " + p("low")).code, 0);
  ASSERT_EQ(run("simulate " + model + " " + p("high.json") + " " + cfg + " --out " + p("high")).code, 0);
  const SimReport low = report_from_string(read_text(p("low.json"))).report;
  const SimReport high = report_from_string(read_text(p("high.json"))).report;
  EXPECT_EQ(high.total.mac4, 0);
  EXPECT_GT(high.total.mac8, 0);
  EXPECT_EQ(low.total.mac8, 0);
  ASSERT_EQ(low.layers.size(), high.layers.size());
  for (std::size_t i = 0; i < low.layers.size(); ++i) {
    const double ratio = static_cast<double>(high.layers[i].compute_cycles) / low.layers[i].compute_cycles;
    EXPECT_NEAR(ratio, 4.0, 0.2) << low.layers[i].layer_id;
  }
}

TEST_F(CliTest, SimulateErrors) {
  const std::string model = write_toy_model();
  const std::string cfg = write_config();
  ASSERT_EQ(run("select " + model + " --out " + p("plan.json")).code, 0);
  Json one = Json::parse(read_text(model));
  one["layers"].erase(1);
  write_text(p("one.json"), one.dump());
  EXPECT_EQ(run("simulate " + p("one.json") + " " + p("plan.json") + " " + cfg + " --out " + p("r")).code, 6);
  Json bad_cfg = Json::parse(read_text(cfg));
  bad_cfg["n"] = 3;
  write_text(p("bad_cfg.json"), bad_cfg.dump());
  EXPECT_EQ(run("simulate " + model + " " + p("plan.json") + " " + p("bad_cfg.json") + " --out " + p("r")).code, 6);
  EXPECT_EQ(run("simulate " + model + " " + p("plan.json") + " " + cfg + " --dataflow xy --out " + p("r")).code, 6);
  EXPECT_EQ(run("simulate " + model + " " + p("nope.json") + " " + cfg + " --out " + p("r")).code, 3);
}

TEST_F(CliTest, QuantizeModes) {
  save_tensor(p("x.bin"), Tensor({8, 32}, oracle::sample(oracle::Dist::kNormal, 256, 3), "x"));
  ASSERT_EQ(run("quantize --input " + p("x.bin") + " --output " + p("q1") + " --type flint4s --scale 0.25").code, 0);
  const QTensor q1 = load_qtensor(p("q1"));
  EXPECT_EQ(q1.scheme.scales, std::vector<double>{0.25});
  EXPECT_TRUE(fs::exists(p("q1.manifest.json")));

  ASSERT_EQ(run("quantize --input " + p("x.bin") + " --output " + p("q2") + " --type int4s --axis 0").code, 0);
  EXPECT_EQ(load_qtensor(p("q2")).scheme.scales.size(), 8u);

  ASSERT_EQ(run("quantize --input " + p("x.bin") + " --output " + p("q3") + " --candidates pot").code, 0);
  EXPECT_EQ(load_qtensor(p("q3")).scheme.ntype.kind, TypeKind::kPot);

  EXPECT_EQ(run("quantize --input " + p("x.bin") + " --output " + p("q4") + " --type flint4u").code, 9);
  EXPECT_EQ(run("quantize --input " + p("x.bin") + " --output " + p("q4") + " --scale 1").code, 2);
  EXPECT_EQ(run("quantize --input " + p("none") + " --output " + p("q4") + " --type int4s").code, 3);
}

TEST_F(CliTest, VerifyPasses) {
  const RunResult r = run("verify");
  EXPECT_EQ(r.code, 0) << r.out;
  const auto out = lines(r.out);
  EXPECT_EQ(out.size(), 6u);
  for (const std::string& l : out) EXPECT_EQ(l.rfind("[PASS]", 0), 0u) << l;
}

}  // namespace
}  // namespace ant
