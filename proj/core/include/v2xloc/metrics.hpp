// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

// Per-UE campaign records and the error statistics computed over them:
// availability at a threshold, empirical CDFs, percentiles, tail ratios.
// Unavailable fixes are carried as +inf errors.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "v2xloc/geometry.hpp"
#include "v2xloc/selection.hpp"

namespace v2xloc {

enum class Method : std::uint8_t { kGnss, kTdoa, kFused, kSpntv, kESpntv, kEFusion };
inline constexpr std::size_t kMethodCount = 6;
inline constexpr std::array<Method, kMethodCount> kAllMethods = {
    Method::kGnss, Method::kTdoa, Method::kFused, Method::kSpntv, Method::kESpntv, Method::kEFusion};

const char* to_string(Method m);
// Throws Error for an unknown name.
Method method_from_string(std::string_view name);

struct UeRecord {
  int drop_index = 0;
  int ue_id = 0;
  Vec3 true_position;
  bool in_tunnel = false;
  UeClass ue_class = UeClass::kB;
  double zeta = 0.0;  // s; NaN when fewer than two neighbors were detected
  double eta = 0.0;   // s, threshold in force for this drop
  std::array<double, kMethodCount> error{};  // horizontal, m; +inf when unavailable
  Technology selected_spntv = Technology::kGnss;
  Technology selected_espntv = Technology::kGnss;
  Technology selected_efusion = Technology::kFused;

  double error_of(Method m) const { return error[static_cast<std::size_t>(m)]; }
};

struct CdfPoint {
  double error;
  double fraction;
};

// Fraction of entries with error <= threshold. Throws Error when empty.
double availability(std::span<const double> errors, double threshold);
double availability(std::span<const UeRecord> records, Method method, double threshold);

// Empirical CDF over all entries; unavailable entries form a terminal
// (inf, 1.0) point.
std::vector<CdfPoint> error_cdf(std::span<const double> errors);
std::vector<CdfPoint> error_cdf(std::span<const UeRecord> records, Method method);

// Linear-interpolation percentile (p in [0, 100]) of the finite entries.
// Returns nullopt when there are none.
std::optional<double> finite_percentile(std::span<const double> errors, double p);

// (P_a - P_b) / P_a for the given percentile of finite errors.
// Throws Error when either side has no finite entry or p is outside (0, 100).
double tail_improvement(std::span<const double> errors_a, std::span<const double> errors_b,
                        double percentile);
double tail_improvement(std::span<const UeRecord> records_a, std::span<const UeRecord> records_b,
                        Method method, double percentile);

std::vector<double> errors_of(std::span<const UeRecord> records, Method method);

inline constexpr std::array<double, 4> kSummaryPercentiles = {50.0, 67.0, 90.0, 95.0};

struct MethodSummary {
  Method method = Method::kGnss;
  std::vector<double> sorted_errors;  // ascending, inf last
  std::size_t unavailable = 0;
  std::vector<double> availability;   // one per threshold
  std::array<std::optional<double>, 4> percentiles{};
};

struct GroupSummary {
  std::size_t count = 0;
  std::array<std::vector<double>, kMethodCount> sorted_errors;
  std::array<std::vector<double>, kMethodCount> availability;  // per threshold
  double spntv_tdoa_fraction = 0.0;
  double spntv_gnss_fraction = 0.0;
};

struct TailEntry {
  Method method;
  double percentile;
  double improvement;
};

struct CampaignSummary {
  std::size_t ue_count = 0;
  std::size_t drop_count = 0;
  std::vector<double> thresholds;
  std::array<MethodSummary, kMethodCount> methods;
  GroupSummary class_a;
  GroupSummary class_b;
  GroupSummary in_tunnel;
  GroupSummary out_of_tunnel;
  std::vector<double> eta_history;  // s, one entry per refinement window
  std::vector<TailEntry> tail;

  const MethodSummary& of(Method m) const { return methods[static_cast<std::size_t>(m)]; }
};

CampaignSummary summarize(std::span<const UeRecord> records, std::span<const double> thresholds);

}  // namespace v2xloc
