// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>

namespace v2xloc {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kNanosecond = 1e-9;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace v2xloc
