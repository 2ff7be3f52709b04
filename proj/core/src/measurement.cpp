// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "v2xloc/error.hpp"
#include "v2xloc/rng.hpp"
#include "v2xloc/units.hpp"

namespace v2xloc {

namespace {

const LinkState& link_for(const UeDrop& ue, int anchor_id) {
  const auto idx = static_cast<std::size_t>(anchor_id);
  if (idx < ue.link_states.size() && ue.link_states[idx].anchor_id == anchor_id)
    return ue.link_states[idx];
  for (const LinkState& s : ue.link_states)
    if (s.anchor_id == anchor_id) return s;
  throw Error("no link state for anchor " + std::to_string(anchor_id));
}

}  // namespace

double CellularModel::noise_power_dbm() const {
  return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double CellularModel::pathloss_db(double d, bool los) const {
  const double fspl_1m = 20.0 * std::log10(4.0 * std::numbers::pi * carrier_hz / kSpeedOfLight);
  const double n = los ? pathloss_exp_los : pathloss_exp_nlos;
  return fspl_1m + 10.0 * n * std::log10(std::max(d, 1.0));
}

double CellularModel::toa_sigma(double snr_db) const {
  const double snr = db_to_linear(snr_db);
  const double sigma = toa_k / (bw_eff_hz * std::sqrt(2.0 * snr));
  return std::min(sigma, sigma_toa_max_s);
}

std::vector<Measurement> gnss_pseudoranges(const UeDrop& ue, std::span<const Anchor> satellites,
                                           const GnssModel& model) {
  std::vector<Measurement> out;
  out.reserve(satellites.size());
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const Anchor& s : satellites) {
    if (s.kind != AnchorKind::kSatellite) throw Error("gnss_pseudoranges: non-satellite anchor");
    const LinkState& link = link_for(ue, s.id);
    SplitMix64 rng(derive_seed(ue.seed, Stream::kAnchorNoise, static_cast<std::uint64_t>(s.id)));
    const double e = std::sqrt(model.uere.variance(link.los)) * gauss(rng);
    const bool lost = unit(rng) < model.p_tunnel_loss;

    Measurement m;
    m.anchor_id = s.id;
    m.kind = MeasurementKind::kPseudorange;
    m.value = std::max(distance(ue.true_position, s.position) + e, 1e-3);
    m.detected = !(ue.in_tunnel && lost);
    m.true_los = link.los;
    out.push_back(m);
  }
  return out;
}

double received_snr(const Anchor& anchor, const LinkState& state, const CellularModel& model,
                    double shadow_fade_db) {
  const double tx = anchor.kind == AnchorKind::kRsu ? model.rsu_tx_power_dbm : model.tx_power_dbm;
  return tx + model.antenna_gain_db - model.pathloss_db(state.distance, state.los) -
         state.penetration_db - shadow_fade_db - model.noise_power_dbm();
}

std::vector<Measurement> cellular_toas(const UeDrop& ue, std::span<const Anchor> cells,
                                       const CellularModel& model) {
  std::vector<Measurement> out;
  out.reserve(cells.size());
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const Anchor& a : cells) {
    if (!a.is_cellular()) throw Error("cellular_toas: satellite anchor");
    const LinkState& link = link_for(ue, a.id);

    // Fading and excess path are properties of the site-to-UE channel.
    SplitMix64 site_rng(derive_seed(ue.seed, Stream::kSiteFade, static_cast<std::uint64_t>(a.site_id)));
    const double fade = model.shadow_sigma_db * gauss(site_rng);
    std::exponential_distribution<double> excess_dist(1.0 / model.nlos_excess_mean_s);
    const double excess = model.nlos_excess_mean_s > 0.0 ? excess_dist(site_rng) : 0.0;

    SplitMix64 noise_rng(derive_seed(ue.seed, Stream::kAnchorNoise, static_cast<std::uint64_t>(a.id)));
    const double snr = received_snr(a, link, model, fade);
    const double sigma = model.toa_sigma(snr);

    Measurement m;
    m.anchor_id = a.id;
    m.site_id = a.site_id;
    m.kind = MeasurementKind::kToa;
    m.value = link.distance / kSpeedOfLight + sigma * gauss(noise_rng) + (link.los ? 0.0 : excess);
    m.value = std::max(m.value, 1e-12);
    m.detected = snr >= model.detection_threshold_db;
    m.true_los = link.los;
    m.snr_db = snr;
    out.push_back(m);
  }
  return out;
}

void sort_by_arrival(std::vector<Measurement>& cellular) {
  std::sort(cellular.begin(), cellular.end(), [](const Measurement& a, const Measurement& b) {
    return a.value != b.value ? a.value < b.value : a.anchor_id < b.anchor_id;
  });
}

MeasurementSet synthesize_measurements(const UeDrop& ue, std::span<const Anchor> anchors,
                                       const GnssModel& gnss, const CellularModel& cell) {
  std::vector<Anchor> sats;
  std::vector<Anchor> cells;
  for (const Anchor& a : anchors) (a.is_cellular() ? cells : sats).push_back(a);

  MeasurementSet ms;
  ms.ue_id = ue.ue_id;
  ms.gnss = gnss_pseudoranges(ue, sats, gnss);
  ms.cellular = cellular_toas(ue, cells, cell);
  sort_by_arrival(ms.cellular);

  double best = -std::numeric_limits<double>::infinity();
  for (const Measurement& m : ms.cellular) {
    if (!m.detected) continue;
    if (m.snr_db > best || (m.snr_db == best && m.anchor_id < ms.serving_anchor_id)) {
      best = m.snr_db;
      ms.serving_anchor_id = m.anchor_id;
      ms.serving_site_id = m.site_id;
    }
  }
  return ms;
}

NeighborSet first_arriving_neighbors(const MeasurementSet& ms, int beta, bool include_serving) {
  if (beta < 2) throw Error("beta must be >= 2");
  NeighborSet out;
  std::vector<int> seen_sites;
  for (const Measurement& m : ms.cellular) {
    if (!m.detected) continue;
    if (m.site_id == ms.serving_site_id && !(include_serving && m.anchor_id == ms.serving_anchor_id))
      continue;
    if (std::find(seen_sites.begin(), seen_sites.end(), m.site_id) != seen_sites.end()) continue;
    seen_sites.push_back(m.site_id);
    out.measurements.push_back(m);
    if (static_cast<int>(out.measurements.size()) == beta) break;
  }
  out.shortfall = static_cast<int>(out.measurements.size()) < beta;
  return out;
}

}  // namespace v2xloc
