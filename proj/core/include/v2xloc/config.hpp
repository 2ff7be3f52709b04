// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

// Scenario configuration document. Fields are kept in document units (ns,
// dB, degrees) so a parse/serialize round trip is exact; the builders at the
// bottom convert to the SI models used by the simulator.
//
// The document is JSON. Every section and key is optional and defaults to
// the urban baseline; unknown keys are rejected. See docs/formats.md.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "v2xloc/estimator.hpp"
#include "v2xloc/geometry.hpp"
#include "v2xloc/measurement.hpp"
#include "v2xloc/selection.hpp"

namespace v2xloc {

struct RoadSection {
  int lanes = 6;
  double lane_width_m = 3.5;
  double length_m = 1000.0;
  std::array<double, 2> origin_m = {-500.0, -10.5};
  double azimuth_deg = 90.0;  // clockwise from north; 90 = east
  double ue_height_m = 1.5;
  friend bool operator==(const RoadSection&, const RoadSection&) = default;
};

struct TunnelSection {
  double start_m = 250.0;
  double end_m = 750.0;
  friend bool operator==(const TunnelSection&, const TunnelSection&) = default;
};

struct RsuSection {
  double x_m = 0.0;
  double y_m = 0.0;
  double height_m = 5.0;
  friend bool operator==(const RsuSection&, const RsuSection&) = default;
};

struct LayoutSection {
  double isd_m = 200.0;
  int tiers = 2;
  double site_height_m = 10.0;
  int satellite_count = 11;
  double satellite_altitude_m = 1.5e6;
  double satellite_min_elevation_deg = 15.0;
  RoadSection road;
  std::optional<TunnelSection> tunnel;
  double penetration_loss_db = 20.0;
  std::vector<RsuSection> rsus;
  friend bool operator==(const LayoutSection&, const LayoutSection&) = default;
};

struct ErrorModelSection {
  // Calibrated urban baseline; see docs/formats.md for the keys.
  UereProfile uere = {.sigma_clock = 1.12,
                      .sigma_iono = 2.24,
                      .sigma_tropo = 0.56,
                      .sigma_noise = 1.12,
                      .sigma_multipath = 14.0};
  double p_sat_los = 0.89;
  double p_tunnel_gnss_loss = 0.9;
  double tx_power_dbm = 44.0;
  double rsu_tx_power_dbm = 44.0;
  double antenna_gain_db = 0.0;
  double noise_figure_db = 9.0;
  double bandwidth_hz = 100e6;
  double carrier_hz = 4e9;
  double pathloss_exp_los = 2.1;
  double pathloss_exp_nlos = 3.2;
  double shadow_sigma_db = 4.0;
  double detection_threshold_db = -6.0;
  double toa_k = 1.0;
  double toa_bw_eff_hz = 100e6;
  double toa_sigma_max_ns = 30.0;
  double nlos_excess_mean_ns = 18.71;
  bool rsu_inside_tunnel = true;
  friend bool operator==(const ErrorModelSection&, const ErrorModelSection&) = default;
};

struct EstimatorSection {
  // Two values per kind; the first is the default profile, the second the
  // in-tunnel profile of the location-aware fusion variant.
  std::array<double, 2> w_gnss = {2.4e-3, 3e-8};
  std::array<double, 2> w_cell = {3.5e-3, 3e-4};
  double mu_gnss_ns = 0.0;
  double mu_cell_ns = 0.0;
  double sigma_cell_ns = 7.7;
  std::optional<double> sigma_gnss_ns = 15.67;  // null: derived from the LOS UERE
  double eps_stab_m = 1.0;
  double grid_pitch_m = 50.0;
  double tolerance_m = 1e-3;
  int max_iterations = 200;
  int refine_starts = 3;
  double coarse_sigma_m = 25.0;
  bool estimate_z = false;
  bool separate_gnss_clock = false;
  friend bool operator==(const EstimatorSection&, const EstimatorSection&) = default;
};

struct PolicySection {
  Policy policy = Policy::kSpntv;
  double eta_ns = 397.751;
  int beta = 5;
  double epsilon_acc_m = 10.0;
  int eta_update_period = 0;
  bool include_serving_in_neighbors = true;
  bool refine_with_estimated_error = false;
  friend bool operator==(const PolicySection&, const PolicySection&) = default;
};

struct CampaignSection {
  int n_drops = 100;
  std::uint64_t base_seed = 1;
  double density_per_km = 600.0;
  std::vector<double> thresholds_m = {3.0};
  int workers = 0;  // 0 = hardware concurrency
  friend bool operator==(const CampaignSection&, const CampaignSection&) = default;
};

struct ScenarioConfig {
  LayoutSection layout;
  ErrorModelSection error_model;
  EstimatorSection estimator;
  PolicySection policy;
  CampaignSection campaign;

  // Throws ConfigError naming the offending field.
  void validate() const;
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Empty or whitespace-only text yields the defaults. Throws ConfigError.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& config);

Policy policy_from_string(std::string_view name);

RoadLayout road_layout(const ScenarioConfig& config);
CellularModel cellular_model(const ScenarioConfig& config);
GnssModel gnss_model(const ScenarioConfig& config);
LinkModel link_model(const ScenarioConfig& config);
// profile 0 = default weights, 1 = alternate (in-tunnel) weights.
AnchorWeightTable weight_table(const ScenarioConfig& config, int profile = 0);
SolverOptions solver_options(const ScenarioConfig& config);
PolicyConfig policy_config(const ScenarioConfig& config);

}  // namespace v2xloc
