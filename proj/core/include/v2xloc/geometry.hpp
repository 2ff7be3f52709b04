// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

// World construction: cellular layout, satellites, road/tunnel, UE drops and
// per-link propagation state. Local East-North-Up frame, meters, origin at
// the layout center.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace v2xloc {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

  constexpr double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  double horizontal_norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double distance(Vec3 a, Vec3 b) { return (a - b).norm(); }
inline double horizontal_distance(Vec3 a, Vec3 b) { return (a - b).horizontal_norm(); }

enum class AnchorKind : std::uint8_t { kCellSector, kRsu, kSatellite };

struct Anchor {
  int id = 0;
  AnchorKind kind = AnchorKind::kCellSector;
  Vec3 position;
  int site_id = 0;
  double boresight_azimuth = 0.0;  // radians, clockwise from north; sectors only

  bool is_cellular() const { return kind != AnchorKind::kSatellite; }
};

struct TunnelSpan {
  double start = 0.0;  // m along the road axis
  double end = 0.0;
  friend bool operator==(const TunnelSpan&, const TunnelSpan&) = default;
};

struct RoadLayout {
  int lane_count = 6;
  double lane_width = 3.5;
  double road_length = 1000.0;
  // Start of the road axis line; lanes extend to the left of the axis.
  Vec3 origin{-500.0, -10.5, 0.0};
  Vec3 axis{1.0, 0.0, 0.0};  // horizontal unit vector
  std::optional<TunnelSpan> tunnel;
  double tunnel_penetration_loss_db = 20.0;
  double ue_height = 1.5;

  // Unit horizontal vector pointing across the lanes.
  Vec3 lateral() const { return {-axis.y, axis.x, 0.0}; }
  double width() const { return lane_count * lane_width; }
  double along(Vec3 p) const { return (p - origin).dot(axis); }
  double offset(Vec3 p) const { return (p - origin).dot(lateral()); }
  bool in_tunnel(double along_m) const {
    return tunnel && along_m >= tunnel->start && along_m <= tunnel->end;
  }
  Vec3 point(double along_m, double offset_m, double z) const {
    Vec3 p = origin + along_m * axis + offset_m * lateral();
    p.z = z;
    return p;
  }
  // Throws ConfigError when an invariant is broken.
  void validate() const;
  friend bool operator==(const RoadLayout&, const RoadLayout&) = default;
};

struct LinkState {
  int anchor_id = 0;
  bool los = true;
  double penetration_db = 0.0;
  double distance = 0.0;  // 3D, meters
};

struct UeDrop {
  int ue_id = 0;
  Vec3 true_position;
  int lane_index = 0;
  double along_road = 0.0;
  bool in_tunnel = false;
  std::uint64_t seed = 0;              // root of this UE's random streams
  std::vector<LinkState> link_states;  // aligned with the scenario anchor list
};

// Inputs to the parametric link-state model.
struct LinkModel {
  double p_sat_los = 0.8;
  // RSU links of an in-tunnel UE see the tunnel bore: no penetration loss and
  // line of sight.
  bool rsu_inside_tunnel = true;
  friend bool operator==(const LinkModel&, const LinkModel&) = default;
};

// Sites on a hexagonal grid with three sectors each. tiers=2 gives 19 sites
// and 57 sectors. Ids run from `first_id`, site-major.
std::vector<Anchor> build_cellular_layout(double isd, int tiers, double site_height = 10.0,
                                          int first_id = 0);

// Deterministic satellite cap above the origin: one at zenith, the rest on
// elevation rings between `min_elevation` and zenith (flat-earth slant range
// altitude/sin(el)).
std::vector<Anchor> build_constellation(int count, double altitude, double min_elevation,
                                        int first_id = 0);

std::vector<UeDrop> drop_ues(const RoadLayout& road, double density_per_km,
                             std::uint64_t rng_seed);

// UMi-style LOS probability curve, d in meters.
double p_los_umi(double d);

std::vector<LinkState> assign_link_states(const UeDrop& ue, std::span<const Anchor> anchors,
                                          const RoadLayout& road, const LinkModel& model);

double elevation_from(Vec3 observer, Vec3 target);

}  // namespace v2xloc
