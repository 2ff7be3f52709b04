// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "v2xloc/error.hpp"
#include "v2xloc/runner.hpp"

namespace v2xloc {
namespace {

std::string preset(const std::string& name) {
  return (std::filesystem::path(V2XLOC_PRESET_DIR) / name).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Config, EmptyDocumentIsUrbanPreset) {
  EXPECT_EQ(parse_config(""), parse_config("  \n\t "));
  EXPECT_EQ(parse_config(""), load_config(preset("urban.cfg")));
  EXPECT_EQ(parse_config("{}"), parse_config(""));
}

TEST(Config, UrbanPresetMatchesBaseline) {
  const ScenarioConfig cfg = load_config(preset("urban.cfg"));
  const Scenario s = build_scenario(cfg);
  int cells = 0, sats = 0;
  for (const Anchor& a : s.anchors) (a.is_cellular() ? cells : sats)++;
  EXPECT_EQ(cells, 57);
  EXPECT_EQ(sats, 11);
  EXPECT_EQ(s.policy.beta, 5);
  EXPECT_EQ(s.policy.epsilon_acc, 10.0);
  EXPECT_FALSE(s.road.tunnel.has_value());
}

TEST(Config, TunnelPresetsDifferOnlyInTunnelAndRsus) {
  const ScenarioConfig urban = load_config(preset("urban.cfg"));
  ScenarioConfig tunnel = load_config(preset("tunnel.cfg"));
  ScenarioConfig rsu = load_config(preset("tunnel_rsu.cfg"));
  ASSERT_TRUE(tunnel.layout.tunnel.has_value());
  EXPECT_TRUE(tunnel.layout.rsus.empty());
  EXPECT_EQ(rsu.layout.rsus.size(), 2u);
  for (const RsuSection& r : rsu.layout.rsus) EXPECT_EQ(r.height_m, 5.0);
  rsu.layout.rsus.clear();
  EXPECT_EQ(rsu, tunnel);
  tunnel.layout.tunnel.reset();
  tunnel.policy = urban.policy;
  EXPECT_EQ(tunnel, urban);
}

TEST(Config, DensityValidationNamesField) {
  try {
    parse_config(R"({"campaign": {"density_per_km": -1}})");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("density"), std::string::npos);
    EXPECT_EQ(e.field(), "campaign.density_per_km");
  }
}

TEST(Config, UnknownKeyRejectedWithLine) {
  const std::string doc = "{\n  \"policy\": {\n    \"betta\": 4\n  }\n}\n";
  try {
    parse_config(doc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "policy.betta");
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Config, SyntaxErrorReportsLine) {
  try {
    parse_config("{\n  \"policy\": {\n    \"beta\": 4,,\n  }\n}\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Config, TypeMismatchNamesField) {
  try {
    parse_config(R"({"policy": {"beta": "five"}})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "policy.beta");
  }
}

TEST(Config, CommentsAllowed) {
  const ScenarioConfig c = parse_config("// header\n{ /* inline */ \"policy\": {\"beta\": 4} }");
  EXPECT_EQ(c.policy.beta, 4);
}

TEST(Config, RejectsImpossibleValues) {
  EXPECT_THROW(parse_config(R"({"layout": {"isd_m": -200}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"layout": {"tunnel": {"start_m": 900, "end_m": 1200}}})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"policy": {"beta": 1}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"campaign": {"n_drops": 0}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"error_model": {"p_sat_los": 1.5}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"policy": {"policy": "magic"}})"), ConfigError);
}

TEST(Config, RoundTripAllPresets) {
  for (const char* name : {"urban.cfg", "tunnel.cfg", "tunnel_rsu.cfg"}) {
    const ScenarioConfig c = load_config(preset(name));
    const std::string text = serialize_config(c);
    EXPECT_EQ(parse_config(text), c) << name;
    EXPECT_EQ(serialize_config(parse_config(text)), text) << name;
  }
}

TEST(Config, RoundTripNonDefaultValues) {
  ScenarioConfig c;
  c.layout.tunnel = TunnelSection{100.0, 300.5};
  c.layout.rsus = {{1.25, -3.0, 4.0}};
  c.estimator.sigma_gnss_ns = 7.123456789;
  c.estimator.w_cell = {0.1 + 0.2, 1e-17};
  c.policy.policy = Policy::kEFusion;
  c.campaign.base_seed = 18446744073709551615ULL;
  c.campaign.thresholds_m = {1.0, 3.0, 10.0};
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, LoadReportsMissingFile) {
  EXPECT_THROW(load_config("/nonexistent/dir/x.cfg"), ConfigError);
}

TEST(Config, BuildersConvertUnits) {
  ScenarioConfig c;
  c.policy.eta_ns = 123.0;
  c.estimator.sigma_cell_ns = 20.0;
  EXPECT_DOUBLE_EQ(policy_config(c).eta, 123e-9);
  EXPECT_DOUBLE_EQ(weight_table(c).sigma_cell, 20e-9);
  EXPECT_DOUBLE_EQ(weight_table(c, 1).w_cell, c.estimator.w_cell[1]);
  const RoadLayout road = road_layout(c);
  EXPECT_NEAR(road.axis.x, 1.0, 1e-15);
  EXPECT_NEAR(road.axis.y, 0.0, 1e-15);
  const SolverOptions opts = solver_options(c);
  EXPECT_NEAR(opts.box.x_min, -500.0, 1e-9);
  EXPECT_NEAR(opts.box.x_max, 500.0, 1e-9);
  EXPECT_NEAR(opts.box.y_min, -10.5, 1e-9);
  EXPECT_NEAR(opts.box.y_max, 10.5, 1e-9);
}

TEST(Config, PresetFilesAreValidJson) {
  for (const char* name : {"urban.cfg", "tunnel.cfg", "tunnel_rsu.cfg"})
    EXPECT_NO_THROW(parse_config(read_file(preset(name)))) << name;
}

}  // namespace
}  // namespace v2xloc
