// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

// Monte Carlo orchestration: drop UEs, synthesize measurements, run every
// positioning method, apply the selection policies, collect records.
//
// Per-UE work is a pure function of (scenario, drop seed, ue id), so the
// campaign is identical for any worker count. Threshold refinement is the
// only serial step and runs between drop windows.

#pragma once

#include <cstdint>
#include <vector>

#include "v2xloc/config.hpp"
#include "v2xloc/estimator.hpp"
#include "v2xloc/geometry.hpp"
#include "v2xloc/measurement.hpp"
#include "v2xloc/metrics.hpp"
#include "v2xloc/selection.hpp"

namespace v2xloc {

// The immutable world shared by all drops. Anchor ids equal their index:
// cell sectors first, then RSUs, then satellites.
struct Scenario {
  ScenarioConfig config;
  RoadLayout road;
  std::vector<Anchor> anchors;
  CellularModel cellular;
  GnssModel gnss;
  LinkModel link;
  AnchorWeightTable weights;
  AnchorWeightTable tunnel_weights;
  SolverOptions solver;
  PolicyConfig policy;
};

// Throws ConfigError on invalid configuration.
Scenario build_scenario(const ScenarioConfig& config);

struct MethodMask {
  bool gnss = true;
  bool tdoa = true;
  bool fused = true;
};

// η-independent results for one UE.
struct UeOutcome {
  UeDrop ue;
  double zeta = 0.0;  // NaN when undefined
  double error_gnss = 0.0;
  double error_tdoa = 0.0;
  double error_fused = 0.0;
  double error_tdoa_tunnel_profile = 0.0;  // in-tunnel UEs only, else equals error_tdoa
  double tdoa_gnss_gap = 0.0;  // |p_tdoa - p_gnss| horizontal, inf if either is missing
};

std::uint64_t drop_seed(std::uint64_t base_seed, int drop_index);

UeOutcome evaluate_ue(const Scenario& scenario, UeDrop ue, const MethodMask& mask = {});

// Applies the selection policies at threshold `eta`.
UeRecord make_record(const Scenario& scenario, int drop_index, const UeOutcome& outcome,
                     double eta);

// One realization at the configured threshold.
std::vector<UeRecord> run_drop(const Scenario& scenario, int drop_index, std::uint64_t seed,
                               int workers = 1);

struct CampaignResult {
  std::vector<UeRecord> records;  // sorted by (drop_index, ue_id)
  std::vector<UeOutcome> outcomes;  // aligned with records when kept
  std::vector<int> drop_indices;    // aligned with outcomes when kept
  CampaignSummary summary;
};

struct CampaignOptions {
  MethodMask mask;
  int workers = 1;  // 0 = hardware concurrency
  bool keep_outcomes = false;
};

CampaignResult run_campaign(const Scenario& scenario, int n_drops, std::uint64_t base_seed,
                            const CampaignOptions& opts = {});

// Re-applies the policies to stored outcomes, as if the campaign had run with
// the given threshold (including refinement when configured).
std::vector<UeRecord> reselect(const Scenario& scenario, std::span<const UeOutcome> outcomes,
                               std::span<const int> drop_indices, double initial_eta,
                               std::vector<double>* eta_history = nullptr);

// Class-A neighbor gaps from a campaign (oracle TDOA error <= epsilon_acc).
std::vector<double> class_a_zetas(std::span<const UeRecord> records, double epsilon_acc);

}  // namespace v2xloc
