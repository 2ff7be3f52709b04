// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "v2xloc/error.hpp"

namespace v2xloc {

void PolicyConfig::validate() const {
  if (!(eta > 0.0)) throw ConfigError("eta must be > 0", "policy.eta_ns");
  if (beta < 2) throw ConfigError("beta must be >= 2", "policy.beta");
  if (!(epsilon_acc > 0.0)) throw ConfigError("epsilon_acc must be > 0", "policy.epsilon_acc_m");
  if (eta_update_period < 0)
    throw ConfigError("eta_update_period must be >= 0", "policy.eta_update_period");
}

double compute_zeta(std::span<const Measurement> neighbors) {
  double first = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  int count = 0;
  for (const Measurement& m : neighbors) {
    if (!m.detected) continue;
    ++count;
    if (m.value < first) {
      second = first;
      first = m.value;
    } else if (m.value < second) {
      second = m.value;
    }
  }
  if (count < 2) throw ZetaUndefined("fewer than two detected neighbors");
  return second - first;
}

SelectionOutcome spntv_select(double zeta, double eta) {
  SelectionOutcome out;
  out.zeta = zeta;
  if (zeta >= eta) {
    out.chosen = Technology::kGnss;
    out.reason = SelectionReason::kZetaAtOrAboveEta;
  } else {
    out.chosen = Technology::kTdoa;
    out.reason = SelectionReason::kZetaBelowEta;
  }
  return out;
}

double calibrate_eta(std::span<const double> samples) {
  if (samples.empty()) throw Error("calibrate_eta: empty sample set");
  std::vector<double> v(samples.begin(), samples.end());
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  const double upper = *mid;
  if (n % 2) return upper;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

UeClass classify_ue(double tdoa_error, double epsilon_acc) {
  return tdoa_error <= epsilon_acc ? UeClass::kA : UeClass::kB;
}

SelectionOutcome e_spntv_select(const UeDrop& ue, double zeta, double eta) {
  if (ue.in_tunnel) {
    SelectionOutcome out;
    out.ue_id = ue.ue_id;
    out.zeta = zeta;
    out.chosen = Technology::kTdoa;
    out.reason = SelectionReason::kInTunnel;
    return out;
  }
  SelectionOutcome out = spntv_select(zeta, eta);
  out.ue_id = ue.ue_id;
  return out;
}

SelectionOutcome e_fusion_select(const UeDrop& ue) {
  SelectionOutcome out;
  out.ue_id = ue.ue_id;
  out.chosen = ue.in_tunnel ? Technology::kTdoa : Technology::kFused;
  out.reason = ue.in_tunnel ? SelectionReason::kInTunnel : SelectionReason::kOutOfTunnel;
  return out;
}

SelectionOutcome forced_select(Technology tech, double zeta) {
  SelectionOutcome out;
  out.zeta = zeta;
  out.chosen = tech;
  out.reason = SelectionReason::kForced;
  return out;
}

double refine_eta(std::span<const RefinementSample> window, double current_eta,
                  double epsilon_acc) {
  std::vector<double> zetas;
  for (const RefinementSample& s : window)
    if (std::isfinite(s.zeta) && classify_ue(s.tdoa_error, epsilon_acc) == UeClass::kA)
      zetas.push_back(s.zeta);
  if (zetas.empty()) return current_eta;
  return calibrate_eta(zetas);
}

const char* to_string(Technology t) {
  switch (t) {
    case Technology::kGnss: return "gnss";
    case Technology::kTdoa: return "tdoa";
    case Technology::kFused: return "fused";
  }
  return "?";
}

const char* to_string(Policy p) {
  switch (p) {
    case Policy::kGnssOnly: return "gnss";
    case Policy::kTdoaOnly: return "tdoa";
    case Policy::kFusion: return "fusion";
    case Policy::kSpntv: return "spntv";
    case Policy::kESpntv: return "e-spntv";
    case Policy::kEFusion: return "e-fusion";
  }
  return "?";
}

const char* to_string(UeClass c) { return c == UeClass::kA ? "A" : "B"; }

}  // namespace v2xloc
