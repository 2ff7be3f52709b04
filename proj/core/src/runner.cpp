// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/runner.hpp"
#include "v2xloc/units.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "v2xloc/error.hpp"
#include "v2xloc/rng.hpp"

namespace v2xloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Runs fn(i) for i in [0, n) on `workers` threads. Each index writes only its
// own output slot, so scheduling cannot change results.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn fn) {
  const int w = std::min<int>(resolve_workers(workers), static_cast<int>(std::max<std::size_t>(n, 1)));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

struct Solved {
  double error = kInf;
  std::optional<Vec3> position;
};

Solved solve(const Scenario& s, const MeasurementSet& ms, const UeDrop& ue, SolveMode mode,
             const AnchorWeightTable& weights) {
  Solved out;
  if (!observable(ms, s.anchors, mode)) return out;
  const PositionEstimate est = map_estimate(ms, s.anchors, weights, mode, s.solver);
  out.position = est.position;
  out.error = horizontal_distance(est.position, ue.true_position);
  return out;
}

}  // namespace

Scenario build_scenario(const ScenarioConfig& config) {
  config.validate();
  Scenario s;
  s.config = config;
  s.road = road_layout(config);
  const LayoutSection& l = config.layout;
  s.anchors = build_cellular_layout(l.isd_m, l.tiers, l.site_height_m, 0);
  int site = static_cast<int>(s.anchors.size() / 3);
  for (const RsuSection& r : l.rsus) {
    const int id = static_cast<int>(s.anchors.size());
    s.anchors.push_back({id, AnchorKind::kRsu, {r.x_m, r.y_m, r.height_m}, site++, 0.0});
  }
  for (const Anchor& sat :
       build_constellation(l.satellite_count, l.satellite_altitude_m,
                           deg_to_rad(l.satellite_min_elevation_deg),
                           static_cast<int>(s.anchors.size())))
    s.anchors.push_back(sat);
  s.cellular = cellular_model(config);
  s.gnss = gnss_model(config);
  s.link = link_model(config);
  s.weights = weight_table(config, 0);
  s.tunnel_weights = weight_table(config, 1);
  s.solver = solver_options(config);
  s.policy = policy_config(config);
  return s;
}

std::uint64_t drop_seed(std::uint64_t base_seed, int drop_index) {
  return derive_seed(base_seed, Stream::kDrop, static_cast<std::uint64_t>(drop_index));
}

UeOutcome evaluate_ue(const Scenario& s, UeDrop ue, const MethodMask& mask) {
  ue.link_states = assign_link_states(ue, s.anchors, s.road, s.link);
  const MeasurementSet ms = synthesize_measurements(ue, s.anchors, s.gnss, s.cellular);

  UeOutcome out;
  const NeighborSet nb =
      first_arriving_neighbors(ms, s.policy.beta, s.policy.include_serving_in_neighbors);
  out.zeta = nb.measurements.size() >= 2 ? compute_zeta(nb.measurements)
                                         : std::numeric_limits<double>::quiet_NaN();

  Solved gnss, tdoa, fused;
  if (mask.gnss) gnss = solve(s, ms, ue, SolveMode::kGnssOnly, s.weights);
  if (mask.tdoa) tdoa = solve(s, ms, ue, SolveMode::kTdoaOnly, s.weights);
  if (mask.fused) fused = solve(s, ms, ue, SolveMode::kFused, s.weights);
  out.error_gnss = gnss.error;
  out.error_tdoa = tdoa.error;
  out.error_fused = fused.error;
  out.error_tdoa_tunnel_profile = tdoa.error;
  if (mask.tdoa && ue.in_tunnel && !(s.tunnel_weights == s.weights))
    out.error_tdoa_tunnel_profile = solve(s, ms, ue, SolveMode::kTdoaOnly, s.tunnel_weights).error;
  out.tdoa_gnss_gap = (gnss.position && tdoa.position)
                          ? horizontal_distance(*gnss.position, *tdoa.position)
                          : kInf;
  out.ue = std::move(ue);
  out.ue.link_states.clear();
  out.ue.link_states.shrink_to_fit();
  return out;
}

UeRecord make_record(const Scenario& s, int drop_index, const UeOutcome& o, double eta) {
  UeRecord r;
  r.drop_index = drop_index;
  r.ue_id = o.ue.ue_id;
  r.true_position = o.ue.true_position;
  r.in_tunnel = o.ue.in_tunnel;
  r.ue_class = classify_ue(o.error_tdoa, s.policy.epsilon_acc);
  r.zeta = o.zeta;
  r.eta = eta;

  auto error_for = [&](Technology t) {
    switch (t) {
      case Technology::kGnss: return o.error_gnss;
      case Technology::kTdoa: return o.error_tdoa;
      case Technology::kFused: return o.error_fused;
    }
    return kInf;
  };

  const bool defined = std::isfinite(o.zeta);
  const SelectionOutcome spntv =
      defined ? spntv_select(o.zeta, eta) : forced_select(Technology::kGnss, o.zeta);
  const SelectionOutcome espntv = o.ue.in_tunnel ? e_spntv_select(o.ue, o.zeta, eta) : spntv;
  const SelectionOutcome efusion = e_fusion_select(o.ue);

  r.selected_spntv = spntv.chosen;
  r.selected_espntv = espntv.chosen;
  r.selected_efusion = efusion.chosen;

  auto set = [&r](Method m, double e) { r.error[static_cast<std::size_t>(m)] = e; };
  set(Method::kGnss, o.error_gnss);
  set(Method::kTdoa, o.error_tdoa);
  set(Method::kFused, o.error_fused);
  set(Method::kSpntv, error_for(spntv.chosen));
  set(Method::kESpntv, error_for(espntv.chosen));
  set(Method::kEFusion,
      efusion.chosen == Technology::kTdoa ? o.error_tdoa_tunnel_profile : o.error_fused);
  return r;
}

std::vector<UeRecord> run_drop(const Scenario& s, int drop_index, std::uint64_t seed,
                               int workers) {
  const std::vector<UeDrop> ues = drop_ues(s.road, s.config.campaign.density_per_km, seed);
  std::vector<UeOutcome> outcomes(ues.size());
  parallel_for(ues.size(), workers, [&](std::size_t i) { outcomes[i] = evaluate_ue(s, ues[i]); });
  std::vector<UeRecord> records;
  records.reserve(outcomes.size());
  for (const UeOutcome& o : outcomes) records.push_back(make_record(s, drop_index, o, s.policy.eta));
  return records;
}

std::vector<UeRecord> reselect(const Scenario& s, std::span<const UeOutcome> outcomes,
                               std::span<const int> drop_indices, double initial_eta,
                               std::vector<double>* eta_history) {
  if (outcomes.size() != drop_indices.size()) throw Error("reselect: size mismatch");
  std::vector<UeRecord> records;
  records.reserve(outcomes.size());
  double eta = initial_eta;
  const int period = s.policy.eta_update_period;
  std::vector<RefinementSample> window;
  int drops_in_window = 0;

  if (eta_history) eta_history->assign(1, eta);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const UeOutcome& o = outcomes[i];
    records.push_back(make_record(s, drop_indices[i], o, eta));
    if (period <= 0) continue;
    const double err = s.policy.refine_with_estimated_error ? o.tdoa_gnss_gap : o.error_tdoa;
    window.push_back({o.zeta, err});
    const bool drop_ends = i + 1 == outcomes.size() || drop_indices[i + 1] != drop_indices[i];
    if (!drop_ends) continue;
    if (++drops_in_window == period) {
      eta = refine_eta(window, eta, s.policy.epsilon_acc);
      if (eta_history) eta_history->push_back(eta);
      window.clear();
      drops_in_window = 0;
    }
  }
  return records;
}

CampaignResult run_campaign(const Scenario& s, int n_drops, std::uint64_t base_seed,
                            const CampaignOptions& opts) {
  if (n_drops < 1) throw Error("run_campaign: n_drops must be >= 1");
  std::vector<UeDrop> ues;
  std::vector<int> drop_indices;
  for (int d = 0; d < n_drops; ++d) {
    for (UeDrop& ue : drop_ues(s.road, s.config.campaign.density_per_km, drop_seed(base_seed, d))) {
      ues.push_back(std::move(ue));
      drop_indices.push_back(d);
    }
  }

  std::vector<UeOutcome> outcomes(ues.size());
  parallel_for(ues.size(), opts.workers,
               [&](std::size_t i) { outcomes[i] = evaluate_ue(s, ues[i], opts.mask); });

  CampaignResult result;
  std::vector<double> history;
  result.records = reselect(s, outcomes, drop_indices, s.policy.eta, &history);
  if (result.records.empty()) throw Error("run_campaign: no UEs were dropped");
  result.summary = summarize(result.records, s.config.campaign.thresholds_m);
  result.summary.eta_history = std::move(history);
  if (opts.keep_outcomes) {
    result.outcomes = std::move(outcomes);
    result.drop_indices = std::move(drop_indices);
  }
  return result;
}

std::vector<double> class_a_zetas(std::span<const UeRecord> records, double epsilon_acc) {
  std::vector<double> out;
  for (const UeRecord& r : records)
    if (std::isfinite(r.zeta) && classify_ue(r.error_of(Method::kTdoa), epsilon_acc) == UeClass::kA)
      out.push_back(r.zeta);
  return out;
}

}  // namespace v2xloc
