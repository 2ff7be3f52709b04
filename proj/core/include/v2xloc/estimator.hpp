// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

// Position solvers over any mixture of pseudoranges and ToAs: the weighted
// MAP objective (log-of-sum form) and an iterative least-squares baseline.
//
// Residuals are in time: r_c = m_c - |p - p_c| / c - tau - mu_c, where a
// pseudorange enters as value / c. Internally everything is evaluated in
// meters (r_c * c) to keep precision for GNSS-length ranges.

#pragma once

#include <span>

#include "v2xloc/geometry.hpp"
#include "v2xloc/measurement.hpp"

namespace v2xloc {

enum class SolveMode : std::uint8_t { kGnssOnly, kTdoaOnly, kFused };
enum class EstimateMethod : std::uint8_t { kGnssOnly, kTdoaOnly, kFused, kLeastSquares };

struct AnchorWeightTable {
  double w_gnss = 3e-7;
  double w_cell = 1e-3;
  double mu_gnss = 0.0;  // seconds
  double mu_cell = 0.0;
  double sigma_gnss = 2.5 / 299'792'458.0;  // seconds
  double sigma_cell = 50e-9;
  friend bool operator==(const AnchorWeightTable&, const AnchorWeightTable&) = default;
};

struct SearchBox {
  double x_min = -500.0;
  double x_max = 500.0;
  double y_min = -10.5;
  double y_max = 10.5;
};

struct SolverOptions {
  SearchBox box;
  double z = 1.5;  // fixed antenna height unless estimate_z
  bool estimate_z = false;
  bool separate_gnss_clock = false;
  double eps_stab = 1.0;      // m
  double grid_pitch = 50.0;   // m
  double tolerance = 1e-3;    // m
  int max_iterations = 200;   // per refinement stage
  int refine_starts = 3;      // best grid starts taken through local descent
  // Widest spread (m) used by the coarse-to-fine refinement; stage spreads
  // shrink by 4x until they reach the configured sigmas.
  double coarse_sigma = 25.0;
};

struct PositionEstimate {
  Vec3 position;
  double tau = 0.0;       // s, shared (or cellular) clock offset
  double tau_gnss = 0.0;  // s, equals tau unless separate clocks are solved
  double objective_value = 0.0;
  EstimateMethod method = EstimateMethod::kFused;
  bool converged = false;
  int iterations = 0;
  double horizontal_error = 0.0;
};

// True when the detected measurements selected by `mode` meet the fix
// precondition (at least four distinct anchor positions, four satellites for
// GNSS-only).
bool observable(const MeasurementSet& ms, std::span<const Anchor> anchors, SolveMode mode);

// Sum over selected detected measurements of log(w_c + N_c(p, tau)).
// Throws Error when nothing is selected.
double map_objective(Vec3 candidate, double tau, const MeasurementSet& ms,
                     std::span<const Anchor> anchors, const AnchorWeightTable& weights,
                     SolveMode mode, double eps_stab = 1.0);

// Throws UnavailableFix when not observable.
PositionEstimate map_estimate(const MeasurementSet& ms, std::span<const Anchor> anchors,
                              const AnchorWeightTable& weights, SolveMode mode,
                              const SolverOptions& opts);

// Gauss-Newton on the same residuals, each kind weighted by 1/sigma^2.
// Throws UnavailableFix when not observable.
PositionEstimate least_squares_estimate(const MeasurementSet& ms, std::span<const Anchor> anchors,
                                        SolveMode mode, const SolverOptions& opts,
                                        const AnchorWeightTable& sigmas = {});

}  // namespace v2xloc
