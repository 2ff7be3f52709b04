// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/runner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "v2xloc/config.hpp"
#include "v2xloc/records.hpp"

namespace v2xloc {
namespace {

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.campaign.density_per_km = 40.0;
  return cfg;
}

std::string csv(const std::vector<UeRecord>& records) {
  std::ostringstream out;
  write_records(out, records);
  return out.str();
}

TEST(Runner, EveryUeGetsOneRecord) {
  const Scenario s = build_scenario(small_config());
  const CampaignResult r = run_campaign(s, 3, 7);
  ASSERT_FALSE(r.records.empty());
  EXPECT_EQ(r.summary.drop_count, 3);
  EXPECT_EQ(r.summary.ue_count, static_cast<int>(r.records.size()));
  for (std::size_t i = 1; i < r.records.size(); ++i) {
    const UeRecord& a = r.records[i - 1];
    const UeRecord& b = r.records[i];
    EXPECT_TRUE(a.drop_index < b.drop_index ||
                (a.drop_index == b.drop_index && a.ue_id < b.ue_id));
  }
  for (const UeRecord& rec : r.records) {
    EXPECT_NE(rec.selected_spntv, Technology::kFused);
    const double picked = rec.selected_spntv == Technology::kGnss ? rec.error_of(Method::kGnss)
                                                                  : rec.error_of(Method::kTdoa);
    EXPECT_EQ(rec.error_of(Method::kSpntv), picked);
    EXPECT_NEAR(rec.eta, s.policy.eta, 1e-15);
    EXPECT_FALSE(rec.in_tunnel);
  }
}

TEST(Runner, IdenticalAcrossWorkerCounts) {
  const Scenario s = build_scenario(small_config());
  CampaignOptions one;
  one.workers = 1;
  CampaignOptions three;
  three.workers = 3;
  EXPECT_EQ(csv(run_campaign(s, 2, 42, one).records), csv(run_campaign(s, 2, 42, three).records));
}

TEST(Runner, SeedChangesRealization) {
  const Scenario s = build_scenario(small_config());
  EXPECT_NE(csv(run_campaign(s, 1, 1).records), csv(run_campaign(s, 1, 2).records));
}

TEST(Runner, DropSeedsDistinct) {
  EXPECT_NE(drop_seed(1, 0), drop_seed(1, 1));
  EXPECT_NE(drop_seed(1, 0), drop_seed(2, 0));
  EXPECT_EQ(drop_seed(5, 3), drop_seed(5, 3));
}

TEST(Runner, TunnelFlagsFollowSpan) {
  ScenarioConfig cfg = small_config();
  cfg.layout.tunnel = TunnelSection{250.0, 750.0};
  const Scenario s = build_scenario(cfg);
  const CampaignResult r = run_campaign(s, 2, 3);
  int inside = 0;
  for (const UeRecord& rec : r.records) {
    const double along = rec.true_position.x - cfg.layout.road.origin_m[0];
    if (along > 250.5 && along < 749.5) {
      EXPECT_TRUE(rec.in_tunnel);
    }
    if (along < 249.5 || along > 750.5) {
      EXPECT_FALSE(rec.in_tunnel);
    }
    inside += rec.in_tunnel;
  }
  EXPECT_GT(inside, 0);
  EXPECT_EQ(r.summary.in_tunnel.count, inside);
}

TEST(Runner, UnusedTunnelProfileDoesNotChangeUrbanRun) {
  // Out-of-tunnel weights are the only ones an urban drop can use.
  ScenarioConfig a = small_config();
  ScenarioConfig b = small_config();
  b.estimator.w_cell[1] = 5e-2;
  b.estimator.w_gnss[1] = 1e-3;
  EXPECT_EQ(csv(run_campaign(build_scenario(a), 1, 9).records),
            csv(run_campaign(build_scenario(b), 1, 9).records));
}

TEST(Runner, ReselectAtConfiguredEtaReproducesRecords) {
  const Scenario s = build_scenario(small_config());
  CampaignOptions opts;
  opts.keep_outcomes = true;
  const CampaignResult r = run_campaign(s, 2, 11, opts);
  ASSERT_EQ(r.outcomes.size(), r.records.size());
  EXPECT_EQ(csv(reselect(s, r.outcomes, r.drop_indices, s.policy.eta)), csv(r.records));
}

TEST(Runner, ExtremeThresholdsPinSelection) {
  const Scenario s = build_scenario(small_config());
  CampaignOptions opts;
  opts.keep_outcomes = true;
  const CampaignResult r = run_campaign(s, 1, 13, opts);
  for (const UeRecord& rec : reselect(s, r.outcomes, r.drop_indices, 1e-12))
    if (!std::isnan(rec.zeta)) {
      EXPECT_EQ(rec.selected_spntv, Technology::kGnss);
    }
  for (const UeRecord& rec : reselect(s, r.outcomes, r.drop_indices, 1e-3))
    if (!std::isnan(rec.zeta)) {
      EXPECT_EQ(rec.selected_spntv, Technology::kTdoa);
    }
}

TEST(Runner, ClassAZetasFiltered) {
  std::vector<UeRecord> recs(3);
  recs[0].error[static_cast<std::size_t>(Method::kTdoa)] = 2.0;
  recs[0].zeta = 1e-8;
  recs[1].error[static_cast<std::size_t>(Method::kTdoa)] = 20.0;
  recs[1].zeta = 2e-8;
  recs[2].error[static_cast<std::size_t>(Method::kTdoa)] = 1.0;
  recs[2].zeta = std::nan("");
  const auto z = class_a_zetas(recs, 10.0);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_DOUBLE_EQ(z[0], 1e-8);
}

TEST(Runner, TunnelPresetWithoutTunnelIsUrban) {
  const auto dir = std::filesystem::path(V2XLOC_PRESET_DIR);
  ScenarioConfig urban = load_config((dir / "urban.cfg").string());
  ScenarioConfig tunnel = load_config((dir / "tunnel.cfg").string());
  urban.campaign.density_per_km = tunnel.campaign.density_per_km = 40.0;
  tunnel.layout.tunnel.reset();
  EXPECT_EQ(csv(run_campaign(build_scenario(tunnel), 2, 11).records),
            csv(run_campaign(build_scenario(urban), 2, 11).records));
}

}  // namespace
}  // namespace v2xloc
