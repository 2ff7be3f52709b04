// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/selection.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "v2xloc/error.hpp"

namespace v2xloc {
namespace {

constexpr double kNs = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Measurement> toas(std::initializer_list<double> values) {
  std::vector<Measurement> out;
  int id = 0;
  for (double v : values) out.push_back({id, id, MeasurementKind::kToa, v}), ++id;
  return out;
}

TEST(Zeta, Examples) {
  EXPECT_EQ(compute_zeta(toas({1e-6, 1e-6})), 0.0);
  EXPECT_NEAR(compute_zeta(toas({1.000e-6, 1.090e-6})), 90 * kNs, 1e-15);
  EXPECT_THROW(compute_zeta(toas({1e-6})), ZetaUndefined);
  EXPECT_THROW(compute_zeta({}), ZetaUndefined);
}

TEST(Zeta, UndetectedEntriesIgnored) {
  auto v = toas({1e-6, 1.01e-6, 1.2e-6});
  v[1].detected = false;
  EXPECT_DOUBLE_EQ(compute_zeta(v), 1.2e-6 - 1e-6);
}

// Brute force over all pairs: the gap between the smallest and second
// smallest value, order independent.
double zeta_oracle(const std::vector<Measurement>& v) {
  std::vector<double> vals;
  for (const auto& m : v) vals.push_back(m.value);
  std::sort(vals.begin(), vals.end());
  return vals[1] - vals[0];
}

TEST(Zeta, MatchesSortOracleOnRandomLists) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> len(2, 12);
  std::uniform_real_distribution<double> val(0.0, 3e-6);
  for (int trial = 0; trial < 100000; ++trial) {
    std::vector<Measurement> v;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) v.push_back({i, i, MeasurementKind::kToa, val(rng)});
    if (trial % 7 == 0) v.push_back(v.front());  // ties
    ASSERT_EQ(compute_zeta(v), zeta_oracle(v)) << "trial " << trial;
  }
}

TEST(Spntv, BranchesAndBoundary) {
  const double eta = 90 * kNs;
  EXPECT_EQ(spntv_select(200 * kNs, eta).chosen, Technology::kGnss);
  EXPECT_EQ(spntv_select(200 * kNs, eta).reason, SelectionReason::kZetaAtOrAboveEta);
  EXPECT_EQ(spntv_select(0.0, eta).chosen, Technology::kTdoa);
  EXPECT_EQ(spntv_select(0.0, eta).reason, SelectionReason::kZetaBelowEta);
  EXPECT_EQ(spntv_select(eta, eta).chosen, Technology::kGnss);
  EXPECT_EQ(spntv_select(std::nextafter(eta, 0.0), eta).chosen, Technology::kTdoa);
}

TEST(CalibrateEta, TableExampleAndEvenCount) {
  const std::vector<double> table = {16 * kNs, 55 * kNs, 90 * kNs, 155 * kNs, 220 * kNs};
  EXPECT_EQ(calibrate_eta(table), 90 * kNs);
  std::vector<double> shuffled = {220 * kNs, 16 * kNs, 155 * kNs, 90 * kNs, 55 * kNs};
  EXPECT_EQ(calibrate_eta(shuffled), 90 * kNs);
  const std::vector<double> even = {4.0, 1.0, 3.0, 2.0};
  EXPECT_EQ(calibrate_eta(even), 2.5);
  EXPECT_EQ(calibrate_eta(std::vector<double>{7.0}), 7.0);
  EXPECT_THROW(calibrate_eta(std::vector<double>{}), Error);
}

double median_oracle(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

TEST(CalibrateEta, MatchesSortMedianExactly) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> val(0.0, 500 * kNs);
  for (int n : {10000, 10001}) {
    std::vector<double> v(n);
    for (double& x : v) x = val(rng);
    EXPECT_EQ(calibrate_eta(v), median_oracle(v));
  }
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> v(std::uniform_int_distribution<int>(1, 40)(rng));
    for (double& x : v) x = std::floor(val(rng) / kNs) * kNs;  // plenty of ties
    ASSERT_EQ(calibrate_eta(v), median_oracle(v));
  }
}

TEST(Classify, Boundaries) {
  EXPECT_EQ(classify_ue(3.0, 10.0), UeClass::kA);
  EXPECT_EQ(classify_ue(10.0, 10.0), UeClass::kA);
  EXPECT_EQ(classify_ue(10.5, 10.0), UeClass::kB);
  EXPECT_EQ(classify_ue(kInf, 10.0), UeClass::kB);
}

TEST(LocationAware, TunnelOverridesGap) {
  UeDrop inside;
  inside.in_tunnel = true;
  UeDrop outside;
  const double eta = 90 * kNs;
  for (double z : {0.0, 50 * kNs, 500 * kNs}) {
    EXPECT_EQ(e_spntv_select(inside, z, eta).chosen, Technology::kTdoa);
    EXPECT_EQ(e_spntv_select(inside, z, eta).reason, SelectionReason::kInTunnel);
    EXPECT_EQ(e_spntv_select(outside, z, eta).chosen, spntv_select(z, eta).chosen);
  }
  EXPECT_EQ(e_fusion_select(inside).chosen, Technology::kTdoa);
  EXPECT_EQ(e_fusion_select(outside).chosen, Technology::kFused);
  EXPECT_EQ(e_fusion_select(outside).reason, SelectionReason::kOutOfTunnel);
  EXPECT_EQ(forced_select(Technology::kGnss).reason, SelectionReason::kForced);
}

TEST(RefineEta, TableWindowAndEmptyWindow) {
  std::vector<RefinementSample> window = {{16 * kNs, 1.0},  {55 * kNs, 2.0}, {90 * kNs, 9.0},
                                          {155 * kNs, 4.0}, {220 * kNs, 0.5}, {5 * kNs, 30.0},
                                          {7 * kNs, kInf}};
  EXPECT_EQ(refine_eta(window, 1e-6, 10.0), 90 * kNs);
  const std::vector<RefinementSample> all_b = {{10 * kNs, 20.0}, {20 * kNs, kInf}};
  EXPECT_EQ(refine_eta(all_b, 77 * kNs, 10.0), 77 * kNs);
  EXPECT_EQ(refine_eta({}, 77 * kNs, 10.0), 77 * kNs);
}

TEST(RefineEta, ConvergesToClassAMedian) {
  // Windows drawn from a fixed population: the refined threshold settles on
  // the population median of class-A gaps.
  std::mt19937_64 rng(5);
  std::exponential_distribution<double> gap(1.0 / (80 * kNs));
  std::uniform_real_distribution<double> err(0.0, 20.0);
  std::vector<double> class_a;
  double eta = 1 * kNs;
  for (int window = 0; window < 40; ++window) {
    std::vector<RefinementSample> w(2000);
    for (auto& s : w) {
      s = {gap(rng), err(rng)};
      if (s.tdoa_error <= 10.0) class_a.push_back(s.zeta);
    }
    eta = refine_eta(w, eta, 10.0);
  }
  const double population = 80 * kNs * std::log(2.0);
  EXPECT_NEAR(eta, population, 0.1 * population);
  EXPECT_NEAR(median_oracle(class_a), population, 0.03 * population);
}

TEST(PolicyConfig, Validate) {
  PolicyConfig p;
  EXPECT_NO_THROW(p.validate());
  p.beta = 1;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.eta = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.epsilon_acc = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

}  // namespace
}  // namespace v2xloc
