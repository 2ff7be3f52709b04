// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "v2xloc/error.hpp"
#include "v2xloc/rng.hpp"
#include "v2xloc/units.hpp"

namespace v2xloc {

namespace {

constexpr double kPi = std::numbers::pi;

struct HexSite {
  int ring;
  double angle;
  Vec3 position;
};

}  // namespace

void RoadLayout::validate() const {
  if (lane_count < 1) throw ConfigError("lane_count must be >= 1", "layout.road.lanes");
  if (!(lane_width > 0.0)) throw ConfigError("lane_width must be > 0", "layout.road.lane_width_m");
  if (!(road_length > 0.0)) throw ConfigError("road length must be > 0", "layout.road.length_m");
  if (!(ue_height >= 0.0)) throw ConfigError("ue height must be >= 0", "layout.road.ue_height_m");
  if (!(tunnel_penetration_loss_db >= 0.0))
    throw ConfigError("penetration loss must be >= 0", "layout.tunnel.penetration_loss_db");
  if (!origin.finite()) throw ConfigError("road origin must be finite", "layout.road.origin_m");
  if (tunnel) {
    if (!(tunnel->start >= 0.0 && tunnel->end <= road_length && tunnel->start <= tunnel->end))
      throw ConfigError("tunnel span must lie within [0, road length]", "layout.tunnel");
  }
}

std::vector<Anchor> build_cellular_layout(double isd, int tiers, double site_height,
                                          int first_id) {
  if (!(isd > 0.0)) throw ConfigError("isd must be > 0", "layout.isd_m");
  if (tiers != 1 && tiers != 2) throw ConfigError("tiers must be 1 or 2", "layout.tiers");

  // Axial hex coordinates; ring = hex distance from the center site.
  std::vector<HexSite> sites;
  for (int q = -tiers; q <= tiers; ++q) {
    for (int r = -tiers; r <= tiers; ++r) {
      const int s = -q - r;
      const int ring = std::max({std::abs(q), std::abs(r), std::abs(s)});
      if (ring > tiers) continue;
      const Vec3 p{isd * (q + 0.5 * r), isd * (std::sqrt(3.0) / 2.0) * r, site_height};
      double angle = std::atan2(p.y, p.x);
      if (angle < 0.0) angle += 2.0 * kPi;
      sites.push_back({ring, ring == 0 ? 0.0 : angle, p});
    }
  }
  std::sort(sites.begin(), sites.end(), [](const HexSite& a, const HexSite& b) {
    return a.ring != b.ring ? a.ring < b.ring : a.angle < b.angle;
  });

  const double boresights[3] = {deg_to_rad(30.0), deg_to_rad(150.0), deg_to_rad(270.0)};
  std::vector<Anchor> anchors;
  anchors.reserve(sites.size() * 3);
  int id = first_id;
  for (std::size_t site = 0; site < sites.size(); ++site) {
    for (double boresight : boresights) {
      anchors.push_back({id++, AnchorKind::kCellSector, sites[site].position,
                         static_cast<int>(site), boresight});
    }
  }
  return anchors;
}

std::vector<Anchor> build_constellation(int count, double altitude, double min_elevation,
                                        int first_id) {
  if (count < 4) throw ConfigError("at least 4 satellites are required", "layout.satellites.count");
  if (!(altitude > 0.0)) throw ConfigError("altitude must be > 0", "layout.satellites.altitude_m");
  if (!(min_elevation > 0.0 && min_elevation < kPi / 2.0))
    throw ConfigError("min elevation must be in (0, 90) degrees",
                      "layout.satellites.min_elevation_deg");

  std::vector<Anchor> sats;
  sats.reserve(count);
  int id = first_id;
  sats.push_back({id++, AnchorKind::kSatellite, {0.0, 0.0, altitude}, -1, 0.0});

  const int rest = count - 1;
  const int rings = (rest + 4) / 5;
  for (int k = 0; k < rings; ++k) {
    const int on_ring = rest / rings + (k < rest % rings ? 1 : 0);
    const double el = min_elevation + k * (kPi / 2.0 - min_elevation) / rings;
    const double slant = altitude / std::sin(el);
    const double stagger = (k % 2) * kPi / on_ring;
    for (int j = 0; j < on_ring; ++j) {
      const double az = stagger + 2.0 * kPi * j / on_ring;
      const Vec3 p{slant * std::cos(el) * std::sin(az), slant * std::cos(el) * std::cos(az),
                   altitude};
      sats.push_back({id++, AnchorKind::kSatellite, p, -1, 0.0});
    }
  }
  return sats;
}

std::vector<UeDrop> drop_ues(const RoadLayout& road, double density_per_km,
                             std::uint64_t rng_seed) {
  if (!(density_per_km > 0.0)) throw ConfigError("density must be > 0", "campaign.density_per_km");
  SplitMix64 rng(rng_seed);
  std::poisson_distribution<int> count_dist(density_per_km * road.road_length / 1000.0);
  std::uniform_real_distribution<double> along_dist(0.0, road.road_length);
  std::uniform_int_distribution<int> lane_dist(0, road.lane_count - 1);

  const int n = count_dist(rng);
  std::vector<UeDrop> ues;
  ues.reserve(n);
  for (int i = 0; i < n; ++i) {
    UeDrop ue;
    ue.ue_id = i;
    ue.lane_index = lane_dist(rng);
    ue.along_road = along_dist(rng);
    ue.true_position =
        road.point(ue.along_road, (ue.lane_index + 0.5) * road.lane_width, road.ue_height);
    ue.in_tunnel = road.in_tunnel(ue.along_road);
    ue.seed = derive_seed(rng_seed, Stream::kUe, static_cast<std::uint64_t>(i));
    ues.push_back(std::move(ue));
  }
  return ues;
}

double p_los_umi(double d) {
  if (d <= 0.0) return 1.0;
  const double decay = std::exp(-d / 36.0);
  return std::min(18.0 / d, 1.0) * (1.0 - decay) + decay;
}

std::vector<LinkState> assign_link_states(const UeDrop& ue, std::span<const Anchor> anchors,
                                          const RoadLayout& road, const LinkModel& model) {
  if (anchors.empty()) throw Error("assign_link_states: empty anchor list");
  std::vector<LinkState> states;
  states.reserve(anchors.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double tunnel_loss = ue.in_tunnel ? road.tunnel_penetration_loss_db : 0.0;

  for (const Anchor& a : anchors) {
    LinkState st;
    st.anchor_id = a.id;
    st.distance = std::max(distance(ue.true_position, a.position), 1e-6);
    if (a.kind == AnchorKind::kSatellite) {
      SplitMix64 rng(derive_seed(ue.seed, Stream::kSatLink, static_cast<std::uint64_t>(a.id)));
      st.los = unit(rng) < model.p_sat_los && !ue.in_tunnel;
      st.penetration_db = tunnel_loss;
    } else {
      // Co-sited sectors share the physical path, so LOS is drawn per site.
      SplitMix64 rng(derive_seed(ue.seed, Stream::kSiteLink, static_cast<std::uint64_t>(a.site_id)));
      st.los = unit(rng) < p_los_umi(st.distance);
      st.penetration_db = tunnel_loss;
      if (a.kind == AnchorKind::kRsu && ue.in_tunnel && model.rsu_inside_tunnel) {
        st.los = true;
        st.penetration_db = 0.0;
      }
    }
    states.push_back(st);
  }
  return states;
}

double elevation_from(Vec3 observer, Vec3 target) {
  const Vec3 d = target - observer;
  return std::atan2(d.z, d.horizontal_norm());
}

}  // namespace v2xloc
