// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "v2xloc/error.hpp"

namespace v2xloc {

const char* to_string(Method m) {
  switch (m) {
    case Method::kGnss: return "gnss";
    case Method::kTdoa: return "tdoa";
    case Method::kFused: return "fused";
    case Method::kSpntv: return "spntv";
    case Method::kESpntv: return "e-spntv";
    case Method::kEFusion: return "e-fusion";
  }
  return "?";
}

Method method_from_string(std::string_view name) {
  for (Method m : kAllMethods)
    if (name == to_string(m)) return m;
  throw Error("unknown method '" + std::string(name) + "'");
}

double availability(std::span<const double> errors, double threshold) {
  if (errors.empty()) throw Error("availability: no records");
  const auto ok = std::count_if(errors.begin(), errors.end(),
                                [threshold](double e) { return e <= threshold; });
  return static_cast<double>(ok) / static_cast<double>(errors.size());
}

std::vector<double> errors_of(std::span<const UeRecord> records, Method method) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const UeRecord& r : records) out.push_back(r.error_of(method));
  return out;
}

double availability(std::span<const UeRecord> records, Method method, double threshold) {
  return availability(errors_of(records, method), threshold);
}

std::vector<CdfPoint> error_cdf(std::span<const double> errors) {
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CdfPoint> cdf;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    // Ties collapse onto the last index so F(x) is right-continuous.
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    cdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return cdf;
}

std::vector<CdfPoint> error_cdf(std::span<const UeRecord> records, Method method) {
  return error_cdf(errors_of(records, method));
}

std::optional<double> finite_percentile(std::span<const double> errors, double p) {
  std::vector<double> finite;
  finite.reserve(errors.size());
  for (double e : errors)
    if (std::isfinite(e)) finite.push_back(e);
  if (finite.empty()) return std::nullopt;
  std::sort(finite.begin(), finite.end());
  const double h = static_cast<double>(finite.size() - 1) * p / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, finite.size() - 1);
  return finite[lo] + (h - static_cast<double>(lo)) * (finite[hi] - finite[lo]);
}

double tail_improvement(std::span<const double> errors_a, std::span<const double> errors_b,
                        double percentile) {
  if (!(percentile > 0.0 && percentile < 100.0))
    throw Error("tail_improvement: percentile must be in (0, 100)");
  if (errors_a.empty() || errors_b.empty()) throw Error("tail_improvement: empty campaign");
  const auto pa = finite_percentile(errors_a, percentile);
  const auto pb = finite_percentile(errors_b, percentile);
  if (!pa || !pb) throw Error("tail_improvement: no finite errors");
  if (*pa == 0.0) return *pb == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return (*pa - *pb) / *pa;
}

double tail_improvement(std::span<const UeRecord> records_a, std::span<const UeRecord> records_b,
                        Method method, double percentile) {
  return tail_improvement(errors_of(records_a, method), errors_of(records_b, method), percentile);
}

namespace {

template <typename Pred>
GroupSummary group(std::span<const UeRecord> records, std::span<const double> thresholds,
                   Pred keep) {
  GroupSummary g;
  std::size_t tdoa = 0;
  std::size_t gnss = 0;
  for (const UeRecord& r : records) {
    if (!keep(r)) continue;
    ++g.count;
    for (Method m : kAllMethods)
      g.sorted_errors[static_cast<std::size_t>(m)].push_back(r.error_of(m));
    if (r.selected_spntv == Technology::kTdoa) ++tdoa;
    if (r.selected_spntv == Technology::kGnss) ++gnss;
  }
  for (std::size_t k = 0; k < kMethodCount; ++k) {
    auto& errs = g.sorted_errors[k];
    std::sort(errs.begin(), errs.end());
    for (double t : thresholds)
      g.availability[k].push_back(errs.empty() ? 0.0 : availability(errs, t));
  }
  if (g.count) {
    g.spntv_tdoa_fraction = static_cast<double>(tdoa) / static_cast<double>(g.count);
    g.spntv_gnss_fraction = static_cast<double>(gnss) / static_cast<double>(g.count);
  }
  return g;
}

}  // namespace

CampaignSummary summarize(std::span<const UeRecord> records, std::span<const double> thresholds) {
  if (records.empty()) throw Error("summarize: no records");
  CampaignSummary s;
  s.ue_count = records.size();
  s.thresholds.assign(thresholds.begin(), thresholds.end());
  int last_drop = -1;
  for (const UeRecord& r : records) {
    if (r.drop_index != last_drop) ++s.drop_count;
    last_drop = r.drop_index;
  }
  for (Method m : kAllMethods) {
    MethodSummary& ms = s.methods[static_cast<std::size_t>(m)];
    ms.method = m;
    ms.sorted_errors = errors_of(records, m);
    std::sort(ms.sorted_errors.begin(), ms.sorted_errors.end());
    ms.unavailable = static_cast<std::size_t>(
        std::count_if(ms.sorted_errors.begin(), ms.sorted_errors.end(),
                      [](double e) { return !std::isfinite(e); }));
    for (double t : thresholds) ms.availability.push_back(availability(ms.sorted_errors, t));
    for (std::size_t k = 0; k < kSummaryPercentiles.size(); ++k)
      ms.percentiles[k] = finite_percentile(ms.sorted_errors, kSummaryPercentiles[k]);
  }
  s.class_a = group(records, thresholds, [](const UeRecord& r) { return r.ue_class == UeClass::kA; });
  s.class_b = group(records, thresholds, [](const UeRecord& r) { return r.ue_class == UeClass::kB; });
  s.in_tunnel = group(records, thresholds, [](const UeRecord& r) { return r.in_tunnel; });
  s.out_of_tunnel = group(records, thresholds, [](const UeRecord& r) { return !r.in_tunnel; });
  return s;
}

}  // namespace v2xloc
