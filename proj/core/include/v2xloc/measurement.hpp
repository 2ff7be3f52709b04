// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

// Observation synthesis: GNSS pseudoranges from the UERE budget and cellular
// ToAs gated by a link-budget detection model.

#pragma once

#include <span>
#include <vector>

#include "v2xloc/geometry.hpp"

namespace v2xloc {

struct UereProfile {
  double sigma_clock = 1.0;  // all in meters
  double sigma_iono = 2.0;
  double sigma_tropo = 0.5;
  double sigma_noise = 1.0;
  double sigma_multipath = 5.0;

  // Total pseudorange variance; the multipath term only applies off LOS.
  double variance(bool los) const {
    const double base = sigma_clock * sigma_clock + sigma_iono * sigma_iono +
                        sigma_tropo * sigma_tropo + sigma_noise * sigma_noise;
    return los ? base : base + sigma_multipath * sigma_multipath;
  }
  friend bool operator==(const UereProfile&, const UereProfile&) = default;
};

struct GnssModel {
  UereProfile uere;
  // Chance that a satellite is lost entirely for an in-tunnel UE.
  double p_tunnel_loss = 0.9;
  friend bool operator==(const GnssModel&, const GnssModel&) = default;
};

struct CellularModel {
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
  // ToA spread k / (bw_eff * sqrt(2 snr)), capped at sigma_toa_max.
  double toa_k = 1.0;
  double bw_eff_hz = 100e6;
  double sigma_toa_max_s = 30e-9;
  double nlos_excess_mean_s = 100e-9;

  double noise_power_dbm() const;
  // Log-distance pathloss referenced to free space at 1 m.
  double pathloss_db(double d, bool los) const;
  double toa_sigma(double snr_db) const;
  friend bool operator==(const CellularModel&, const CellularModel&) = default;
};

enum class MeasurementKind : std::uint8_t { kPseudorange, kToa };

struct Measurement {
  int anchor_id = 0;
  int site_id = -1;
  MeasurementKind kind = MeasurementKind::kToa;
  double value = 0.0;  // meters for pseudoranges, seconds for ToAs
  bool detected = true;
  bool true_los = true;  // oracle only, never read by estimators
  double snr_db = 0.0;
};

struct MeasurementSet {
  int ue_id = 0;
  std::vector<Measurement> gnss;
  std::vector<Measurement> cellular;  // ascending by value
  int serving_anchor_id = -1;         // -1 when no cell is detected
  int serving_site_id = -1;
};

struct NeighborSet {
  std::vector<Measurement> measurements;  // ascending ToA
  bool shortfall = false;
};

std::vector<Measurement> gnss_pseudoranges(const UeDrop& ue, std::span<const Anchor> satellites,
                                           const GnssModel& model);

// Deterministic part of the link budget; `shadow_fade_db` is subtracted.
double received_snr(const Anchor& anchor, const LinkState& state, const CellularModel& model,
                    double shadow_fade_db = 0.0);

std::vector<Measurement> cellular_toas(const UeDrop& ue, std::span<const Anchor> cells,
                                       const CellularModel& model);

// Both lists plus serving-cell selection. `anchors` is the full scenario list.
MeasurementSet synthesize_measurements(const UeDrop& ue, std::span<const Anchor> anchors,
                                       const GnssModel& gnss, const CellularModel& cell);

// The `beta` earliest detected neighbor ToAs, one per transmission site.
// Sectors co-sited with the serving cell are excluded unless `include_serving`
// is set, in which case the serving cell itself competes.
NeighborSet first_arriving_neighbors(const MeasurementSet& ms, int beta,
                                     bool include_serving = false);

void sort_by_arrival(std::vector<Measurement>& cellular);

}  // namespace v2xloc
