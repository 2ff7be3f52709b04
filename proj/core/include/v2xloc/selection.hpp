// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

// Technology selection: the neighbor-ToA-gap selector, its threshold
// calibration and refinement, and the location-aware variants.

#pragma once

#include <span>
#include <vector>

#include "v2xloc/geometry.hpp"
#include "v2xloc/measurement.hpp"

namespace v2xloc {

enum class Policy : std::uint8_t { kGnssOnly, kTdoaOnly, kFusion, kSpntv, kESpntv, kEFusion };
enum class Technology : std::uint8_t { kGnss, kTdoa, kFused };
enum class SelectionReason : std::uint8_t {
  kZetaBelowEta,
  kZetaAtOrAboveEta,
  kInTunnel,
  kOutOfTunnel,
  kForced,
};
enum class UeClass : std::uint8_t { kA, kB };

struct PolicyConfig {
  double eta = 90e-9;  // s
  int beta = 5;
  double epsilon_acc = 10.0;  // m
  Policy policy = Policy::kSpntv;
  int eta_update_period = 0;  // drops; 0 disables refinement
  bool include_serving_in_neighbors = false;
  // Refine from |TDOA - GNSS| instead of the oracle TDOA error.
  bool refine_with_estimated_error = false;

  void validate() const;
  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

struct SelectionOutcome {
  int ue_id = 0;
  double zeta = 0.0;  // s; NaN when undefined
  Technology chosen = Technology::kGnss;
  SelectionReason reason = SelectionReason::kForced;
};

// Gap between the two earliest neighbor ToAs (magnitude).
// Throws ZetaUndefined with fewer than two detected neighbors.
double compute_zeta(std::span<const Measurement> neighbors);

SelectionOutcome spntv_select(double zeta, double eta);

// Median of the class-A gaps; the mean of the two central order statistics
// for an even count. Throws Error on an empty sample.
double calibrate_eta(std::span<const double> zeta_samples_class_a);

// `tdoa_error` is +inf for an unavailable fix.
UeClass classify_ue(double tdoa_error, double epsilon_acc);

SelectionOutcome e_spntv_select(const UeDrop& ue, double zeta, double eta);
SelectionOutcome e_fusion_select(const UeDrop& ue);

// Fixed-technology policies and the undefined-gap fallback.
SelectionOutcome forced_select(Technology tech, double zeta = 0.0);

struct RefinementSample {
  double zeta = 0.0;
  double tdoa_error = 0.0;  // m, the error the refinement rule trusts
};

// Median gap over window samples whose error is within epsilon_acc; the
// current threshold is kept when the window has no such sample.
double refine_eta(std::span<const RefinementSample> window, double current_eta,
                  double epsilon_acc);

const char* to_string(Technology t);
const char* to_string(Policy p);
const char* to_string(UeClass c);

}  // namespace v2xloc
