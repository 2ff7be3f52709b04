// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "v2xloc/error.hpp"
#include "v2xloc/units.hpp"

namespace v2xloc {

namespace {

using nlohmann::json;

int line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown.
class Section {
 public:
  Section(const json& node, std::string path, std::string_view text)
      : node_(node), path_(std::move(path)), text_(text) {
    if (!node_.is_object()) fail(path_.empty() ? "document" : path_, "expected an object");
  }

  ~Section() = default;

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  [[noreturn]] void fail(const std::string& field_path, const std::string& what) const {
    const std::string leaf = field_path.substr(field_path.rfind('.') + 1);
    const auto pos = text_.find("\"" + leaf + "\"");
    const int line = pos == std::string_view::npos ? 0 : line_of_byte(text_, pos);
    std::string msg = "config field '" + field_path + "': " + what;
    if (line > 0) msg += " (line " + std::to_string(line) + ")";
    throw ConfigError(msg, field_path, line);
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(field(key), "expected a number");
      out = v->get<double>();
    }
  }
  void integer(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) fail(field(key), "expected an integer");
      out = v->get<int>();
    }
  }
  void unsigned64(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) fail(field(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) fail(field(key), "expected true or false");
      out = v->get<bool>();
    }
  }
  template <std::size_t N>
  void numbers(const std::string& key, std::array<double, N>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array() || v->size() != N)
        fail(field(key), "expected an array of " + std::to_string(N) + " numbers");
      for (std::size_t i = 0; i < N; ++i) {
        if (!(*v)[i].is_number()) fail(field(key), "expected numbers");
        out[i] = (*v)[i].get<double>();
      }
    }
  }
  void numbers(const std::string& key, std::vector<double>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) fail(field(key), "expected an array of numbers");
      out.clear();
      for (const json& e : *v) {
        if (!e.is_number()) fail(field(key), "expected numbers");
        out.push_back(e.get<double>());
      }
    }
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it)
      if (!seen_.count(it.key())) fail(field(it.key()), "unknown key");
  }

 private:
  const json& node_;
  std::string path_;
  std::string_view text_;
  std::set<std::string> seen_;
};

void read_road(Section& s, RoadSection& r) {
  s.integer("lanes", r.lanes);
  s.number("lane_width_m", r.lane_width_m);
  s.number("length_m", r.length_m);
  s.numbers("origin_m", r.origin_m);
  s.number("azimuth_deg", r.azimuth_deg);
  s.number("ue_height_m", r.ue_height_m);
}

void read_layout(Section& s, LayoutSection& l, std::string_view text) {
  s.number("isd_m", l.isd_m);
  s.integer("tiers", l.tiers);
  s.number("site_height_m", l.site_height_m);
  s.number("penetration_loss_db", l.penetration_loss_db);
  if (const json* v = s.find("satellites")) {
    Section sat(*v, s.field("satellites"), text);
    sat.integer("count", l.satellite_count);
    sat.number("altitude_m", l.satellite_altitude_m);
    sat.number("min_elevation_deg", l.satellite_min_elevation_deg);
    sat.finish();
  }
  if (const json* v = s.find("road")) {
    Section road(*v, s.field("road"), text);
    read_road(road, l.road);
    road.finish();
  }
  if (const json* v = s.find("tunnel")) {
    if (v->is_null()) {
      l.tunnel.reset();
    } else {
      Section tun(*v, s.field("tunnel"), text);
      TunnelSection t;
      tun.number("start_m", t.start_m);
      tun.number("end_m", t.end_m);
      tun.finish();
      l.tunnel = t;
    }
  }
  if (const json* v = s.find("rsus")) {
    if (!v->is_array()) s.fail(s.field("rsus"), "expected an array");
    l.rsus.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      Section rs((*v)[i], s.field("rsus[" + std::to_string(i) + "]"), text);
      RsuSection r;
      rs.number("x_m", r.x_m);
      rs.number("y_m", r.y_m);
      rs.number("height_m", r.height_m);
      rs.finish();
      l.rsus.push_back(r);
    }
  }
}

void read_error_model(Section& s, ErrorModelSection& e, std::string_view text) {
  if (const json* v = s.find("uere")) {
    Section u(*v, s.field("uere"), text);
    u.number("clock_m", e.uere.sigma_clock);
    u.number("iono_m", e.uere.sigma_iono);
    u.number("tropo_m", e.uere.sigma_tropo);
    u.number("noise_m", e.uere.sigma_noise);
    u.number("multipath_m", e.uere.sigma_multipath);
    u.finish();
  }
  s.number("p_sat_los", e.p_sat_los);
  s.number("p_tunnel_gnss_loss", e.p_tunnel_gnss_loss);
  s.number("tx_power_dbm", e.tx_power_dbm);
  s.number("rsu_tx_power_dbm", e.rsu_tx_power_dbm);
  s.number("antenna_gain_db", e.antenna_gain_db);
  s.number("noise_figure_db", e.noise_figure_db);
  s.number("bandwidth_hz", e.bandwidth_hz);
  s.number("carrier_hz", e.carrier_hz);
  s.number("pathloss_exp_los", e.pathloss_exp_los);
  s.number("pathloss_exp_nlos", e.pathloss_exp_nlos);
  s.number("shadow_sigma_db", e.shadow_sigma_db);
  s.number("detection_threshold_db", e.detection_threshold_db);
  s.number("toa_k", e.toa_k);
  s.number("toa_bw_eff_hz", e.toa_bw_eff_hz);
  s.number("toa_sigma_max_ns", e.toa_sigma_max_ns);
  s.number("nlos_excess_mean_ns", e.nlos_excess_mean_ns);
  s.boolean("rsu_inside_tunnel", e.rsu_inside_tunnel);
}

void read_estimator(Section& s, EstimatorSection& e) {
  s.numbers("w_gnss", e.w_gnss);
  s.numbers("w_cell", e.w_cell);
  s.number("mu_gnss_ns", e.mu_gnss_ns);
  s.number("mu_cell_ns", e.mu_cell_ns);
  s.number("sigma_cell_ns", e.sigma_cell_ns);
  if (const json* v = s.find("sigma_gnss_ns")) {
    if (v->is_null()) {
      e.sigma_gnss_ns.reset();
    } else {
      if (!v->is_number()) s.fail(s.field("sigma_gnss_ns"), "expected a number or null");
      e.sigma_gnss_ns = v->get<double>();
    }
  }
  s.number("eps_stab_m", e.eps_stab_m);
  s.number("grid_pitch_m", e.grid_pitch_m);
  s.number("tolerance_m", e.tolerance_m);
  s.integer("max_iterations", e.max_iterations);
  s.integer("refine_starts", e.refine_starts);
  s.number("coarse_sigma_m", e.coarse_sigma_m);
  s.boolean("estimate_z", e.estimate_z);
  s.boolean("separate_gnss_clock", e.separate_gnss_clock);
}

void read_policy(Section& s, PolicySection& p) {
  if (const json* v = s.find("policy")) {
    if (!v->is_string()) s.fail(s.field("policy"), "expected a string");
    try {
      p.policy = policy_from_string(v->get<std::string>());
    } catch (const Error& e) {
      s.fail(s.field("policy"), e.what());
    }
  }
  s.number("eta_ns", p.eta_ns);
  s.integer("beta", p.beta);
  s.number("epsilon_acc_m", p.epsilon_acc_m);
  s.integer("eta_update_period", p.eta_update_period);
  s.boolean("include_serving_in_neighbors", p.include_serving_in_neighbors);
  s.boolean("refine_with_estimated_error", p.refine_with_estimated_error);
}

void read_campaign(Section& s, CampaignSection& c) {
  s.integer("n_drops", c.n_drops);
  s.unsigned64("base_seed", c.base_seed);
  s.number("density_per_km", c.density_per_km);
  s.numbers("thresholds_m", c.thresholds_m);
  s.integer("workers", c.workers);
}

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError("config field '" + std::string(field) + "': " + what, field);
}

}  // namespace

Policy policy_from_string(std::string_view name) {
  for (Policy p : {Policy::kGnssOnly, Policy::kTdoaOnly, Policy::kFusion, Policy::kSpntv,
                   Policy::kESpntv, Policy::kEFusion})
    if (name == to_string(p)) return p;
  throw Error("unknown policy '" + std::string(name) + "'");
}

void ScenarioConfig::validate() const {
  const LayoutSection& l = layout;
  require(l.isd_m > 0.0, "layout.isd_m", "must be > 0");
  require(l.tiers == 1 || l.tiers == 2, "layout.tiers", "must be 1 or 2");
  require(l.site_height_m >= 0.0, "layout.site_height_m", "must be >= 0");
  require(l.satellite_count >= 4, "layout.satellites.count", "must be >= 4");
  require(l.satellite_altitude_m > 0.0, "layout.satellites.altitude_m", "must be > 0");
  require(l.satellite_min_elevation_deg > 0.0 && l.satellite_min_elevation_deg < 90.0,
          "layout.satellites.min_elevation_deg", "must be in (0, 90)");
  require(l.penetration_loss_db >= 0.0, "layout.penetration_loss_db", "must be >= 0");
  for (const RsuSection& r : l.rsus)
    require(std::isfinite(r.x_m) && std::isfinite(r.y_m) && r.height_m >= 0.0, "layout.rsus",
            "positions must be finite with height >= 0");
  road_layout(*this).validate();

  const ErrorModelSection& e = error_model;
  const UereProfile& u = e.uere;
  require(u.sigma_clock >= 0 && u.sigma_iono >= 0 && u.sigma_tropo >= 0 && u.sigma_noise >= 0 &&
              u.sigma_multipath >= 0,
          "error_model.uere", "sigmas must be >= 0");
  require(e.p_sat_los >= 0.0 && e.p_sat_los <= 1.0, "error_model.p_sat_los", "must be in [0, 1]");
  require(e.p_tunnel_gnss_loss >= 0.0 && e.p_tunnel_gnss_loss <= 1.0,
          "error_model.p_tunnel_gnss_loss", "must be in [0, 1]");
  require(e.bandwidth_hz > 0.0, "error_model.bandwidth_hz", "must be > 0");
  require(e.carrier_hz > 0.0, "error_model.carrier_hz", "must be > 0");
  require(e.pathloss_exp_los > 0.0, "error_model.pathloss_exp_los", "must be > 0");
  require(e.pathloss_exp_nlos > 0.0, "error_model.pathloss_exp_nlos", "must be > 0");
  require(e.shadow_sigma_db >= 0.0, "error_model.shadow_sigma_db", "must be >= 0");
  require(e.toa_k >= 0.0, "error_model.toa_k", "must be >= 0");
  require(e.toa_bw_eff_hz > 0.0, "error_model.toa_bw_eff_hz", "must be > 0");
  require(e.toa_sigma_max_ns >= 0.0, "error_model.toa_sigma_max_ns", "must be >= 0");
  require(e.nlos_excess_mean_ns >= 0.0, "error_model.nlos_excess_mean_ns", "must be >= 0");

  const EstimatorSection& s = estimator;
  require(s.w_gnss[0] >= 0 && s.w_gnss[1] >= 0, "estimator.w_gnss", "weights must be >= 0");
  require(s.w_cell[0] >= 0 && s.w_cell[1] >= 0, "estimator.w_cell", "weights must be >= 0");
  require(s.sigma_cell_ns > 0.0, "estimator.sigma_cell_ns", "must be > 0");
  require(!s.sigma_gnss_ns || *s.sigma_gnss_ns > 0.0, "estimator.sigma_gnss_ns", "must be > 0");
  require(s.sigma_gnss_ns || u.variance(true) > 0.0, "estimator.sigma_gnss_ns",
          "must be set when the LOS UERE is zero");
  require(s.eps_stab_m >= 0.0, "estimator.eps_stab_m", "must be >= 0");
  require(s.grid_pitch_m > 0.0, "estimator.grid_pitch_m", "must be > 0");
  require(s.tolerance_m > 0.0, "estimator.tolerance_m", "must be > 0");
  require(s.max_iterations >= 1, "estimator.max_iterations", "must be >= 1");
  require(s.refine_starts >= 1, "estimator.refine_starts", "must be >= 1");
  require(s.coarse_sigma_m > 0.0, "estimator.coarse_sigma_m", "must be > 0");

  policy_config(*this).validate();

  require(campaign.n_drops >= 1, "campaign.n_drops", "must be >= 1");
  require(campaign.density_per_km > 0.0, "campaign.density_per_km", "must be > 0");
  require(!campaign.thresholds_m.empty(), "campaign.thresholds_m", "must not be empty");
  for (double t : campaign.thresholds_m)
    require(t >= 0.0, "campaign.thresholds_m", "thresholds must be >= 0");
  require(campaign.workers >= 0, "campaign.workers", "must be >= 0");
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return cfg;

  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    const int line = line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError("config parse error at line " + std::to_string(line) + ": " + e.what(), "",
                      line);
  }

  Section root(doc, "", text);
  if (const json* v = root.find("layout")) {
    Section s(*v, "layout", text);
    read_layout(s, cfg.layout, text);
    s.finish();
  }
  if (const json* v = root.find("error_model")) {
    Section s(*v, "error_model", text);
    read_error_model(s, cfg.error_model, text);
    s.finish();
  }
  if (const json* v = root.find("estimator")) {
    Section s(*v, "estimator", text);
    read_estimator(s, cfg.estimator);
    s.finish();
  }
  if (const json* v = root.find("policy")) {
    Section s(*v, "policy", text);
    read_policy(s, cfg.policy);
    s.finish();
  }
  if (const json* v = root.find("campaign")) {
    Section s(*v, "campaign", text);
    read_campaign(s, cfg.campaign);
    s.finish();
  }
  root.finish();
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what(), e.field(), e.line());
  }
}

std::string serialize_config(const ScenarioConfig& c) {
  const LayoutSection& l = c.layout;
  json layout = {
      {"isd_m", l.isd_m},
      {"tiers", l.tiers},
      {"site_height_m", l.site_height_m},
      {"penetration_loss_db", l.penetration_loss_db},
      {"satellites",
       {{"count", l.satellite_count},
        {"altitude_m", l.satellite_altitude_m},
        {"min_elevation_deg", l.satellite_min_elevation_deg}}},
      {"road",
       {{"lanes", l.road.lanes},
        {"lane_width_m", l.road.lane_width_m},
        {"length_m", l.road.length_m},
        {"origin_m", l.road.origin_m},
        {"azimuth_deg", l.road.azimuth_deg},
        {"ue_height_m", l.road.ue_height_m}}},
  };
  layout["tunnel"] = l.tunnel ? json{{"start_m", l.tunnel->start_m}, {"end_m", l.tunnel->end_m}}
                              : json(nullptr);
  layout["rsus"] = json::array();
  for (const RsuSection& r : l.rsus)
    layout["rsus"].push_back({{"x_m", r.x_m}, {"y_m", r.y_m}, {"height_m", r.height_m}});

  const ErrorModelSection& e = c.error_model;
  json error_model = {
      {"uere",
       {{"clock_m", e.uere.sigma_clock},
        {"iono_m", e.uere.sigma_iono},
        {"tropo_m", e.uere.sigma_tropo},
        {"noise_m", e.uere.sigma_noise},
        {"multipath_m", e.uere.sigma_multipath}}},
      {"p_sat_los", e.p_sat_los},
      {"p_tunnel_gnss_loss", e.p_tunnel_gnss_loss},
      {"tx_power_dbm", e.tx_power_dbm},
      {"rsu_tx_power_dbm", e.rsu_tx_power_dbm},
      {"antenna_gain_db", e.antenna_gain_db},
      {"noise_figure_db", e.noise_figure_db},
      {"bandwidth_hz", e.bandwidth_hz},
      {"carrier_hz", e.carrier_hz},
      {"pathloss_exp_los", e.pathloss_exp_los},
      {"pathloss_exp_nlos", e.pathloss_exp_nlos},
      {"shadow_sigma_db", e.shadow_sigma_db},
      {"detection_threshold_db", e.detection_threshold_db},
      {"toa_k", e.toa_k},
      {"toa_bw_eff_hz", e.toa_bw_eff_hz},
      {"toa_sigma_max_ns", e.toa_sigma_max_ns},
      {"nlos_excess_mean_ns", e.nlos_excess_mean_ns},
      {"rsu_inside_tunnel", e.rsu_inside_tunnel},
  };

  const EstimatorSection& s = c.estimator;
  json estimator = {
      {"w_gnss", s.w_gnss},
      {"w_cell", s.w_cell},
      {"mu_gnss_ns", s.mu_gnss_ns},
      {"mu_cell_ns", s.mu_cell_ns},
      {"sigma_cell_ns", s.sigma_cell_ns},
      {"sigma_gnss_ns", s.sigma_gnss_ns ? json(*s.sigma_gnss_ns) : json(nullptr)},
      {"eps_stab_m", s.eps_stab_m},
      {"grid_pitch_m", s.grid_pitch_m},
      {"tolerance_m", s.tolerance_m},
      {"max_iterations", s.max_iterations},
      {"refine_starts", s.refine_starts},
      {"coarse_sigma_m", s.coarse_sigma_m},
      {"estimate_z", s.estimate_z},
      {"separate_gnss_clock", s.separate_gnss_clock},
  };

  const PolicySection& p = c.policy;
  json policy = {
      {"policy", to_string(p.policy)},
      {"eta_ns", p.eta_ns},
      {"beta", p.beta},
      {"epsilon_acc_m", p.epsilon_acc_m},
      {"eta_update_period", p.eta_update_period},
      {"include_serving_in_neighbors", p.include_serving_in_neighbors},
      {"refine_with_estimated_error", p.refine_with_estimated_error},
  };

  json campaign = {
      {"n_drops", c.campaign.n_drops},
      {"base_seed", c.campaign.base_seed},
      {"density_per_km", c.campaign.density_per_km},
      {"thresholds_m", c.campaign.thresholds_m},
      {"workers", c.campaign.workers},
  };

  json doc = {{"layout", layout},
              {"error_model", error_model},
              {"estimator", estimator},
              {"policy", policy},
              {"campaign", campaign}};
  return doc.dump(2) + "\n";
}

RoadLayout road_layout(const ScenarioConfig& config) {
  const LayoutSection& l = config.layout;
  RoadLayout road;
  road.lane_count = l.road.lanes;
  road.lane_width = l.road.lane_width_m;
  road.road_length = l.road.length_m;
  road.origin = {l.road.origin_m[0], l.road.origin_m[1], 0.0};
  const double az = deg_to_rad(l.road.azimuth_deg);
  road.axis = {std::sin(az), std::cos(az), 0.0};
  road.ue_height = l.road.ue_height_m;
  road.tunnel_penetration_loss_db = l.penetration_loss_db;
  if (l.tunnel) road.tunnel = TunnelSpan{l.tunnel->start_m, l.tunnel->end_m};
  return road;
}

CellularModel cellular_model(const ScenarioConfig& config) {
  const ErrorModelSection& e = config.error_model;
  CellularModel m;
  m.tx_power_dbm = e.tx_power_dbm;
  m.rsu_tx_power_dbm = e.rsu_tx_power_dbm;
  m.antenna_gain_db = e.antenna_gain_db;
  m.noise_figure_db = e.noise_figure_db;
  m.bandwidth_hz = e.bandwidth_hz;
  m.carrier_hz = e.carrier_hz;
  m.pathloss_exp_los = e.pathloss_exp_los;
  m.pathloss_exp_nlos = e.pathloss_exp_nlos;
  m.shadow_sigma_db = e.shadow_sigma_db;
  m.detection_threshold_db = e.detection_threshold_db;
  m.toa_k = e.toa_k;
  m.bw_eff_hz = e.toa_bw_eff_hz;
  m.sigma_toa_max_s = e.toa_sigma_max_ns * kNanosecond;
  m.nlos_excess_mean_s = e.nlos_excess_mean_ns * kNanosecond;
  return m;
}

GnssModel gnss_model(const ScenarioConfig& config) {
  return {config.error_model.uere, config.error_model.p_tunnel_gnss_loss};
}

LinkModel link_model(const ScenarioConfig& config) {
  return {config.error_model.p_sat_los, config.error_model.rsu_inside_tunnel};
}

AnchorWeightTable weight_table(const ScenarioConfig& config, int profile) {
  const EstimatorSection& s = config.estimator;
  const auto k = static_cast<std::size_t>(profile == 0 ? 0 : 1);
  AnchorWeightTable w;
  w.w_gnss = s.w_gnss[k];
  w.w_cell = s.w_cell[k];
  w.mu_gnss = s.mu_gnss_ns * kNanosecond;
  w.mu_cell = s.mu_cell_ns * kNanosecond;
  w.sigma_cell = s.sigma_cell_ns * kNanosecond;
  w.sigma_gnss = s.sigma_gnss_ns ? *s.sigma_gnss_ns * kNanosecond
                                 : std::sqrt(config.error_model.uere.variance(true)) / kSpeedOfLight;
  return w;
}

SolverOptions solver_options(const ScenarioConfig& config) {
  const EstimatorSection& s = config.estimator;
  const RoadLayout road = road_layout(config);
  SolverOptions o;
  // Bounding box of the road surface.
  const Vec3 corners[4] = {road.point(0, 0, 0), road.point(road.road_length, 0, 0),
                           road.point(0, road.width(), 0),
                           road.point(road.road_length, road.width(), 0)};
  o.box = {corners[0].x, corners[0].x, corners[0].y, corners[0].y};
  for (const Vec3& c : corners) {
    o.box.x_min = std::min(o.box.x_min, c.x);
    o.box.x_max = std::max(o.box.x_max, c.x);
    o.box.y_min = std::min(o.box.y_min, c.y);
    o.box.y_max = std::max(o.box.y_max, c.y);
  }
  o.z = road.ue_height;
  o.estimate_z = s.estimate_z;
  o.separate_gnss_clock = s.separate_gnss_clock;
  o.eps_stab = s.eps_stab_m;
  o.grid_pitch = s.grid_pitch_m;
  o.tolerance = s.tolerance_m;
  o.max_iterations = s.max_iterations;
  o.refine_starts = s.refine_starts;
  o.coarse_sigma = s.coarse_sigma_m;
  return o;
}

PolicyConfig policy_config(const ScenarioConfig& config) {
  const PolicySection& p = config.policy;
  PolicyConfig out;
  out.eta = p.eta_ns * kNanosecond;
  out.beta = p.beta;
  out.epsilon_acc = p.epsilon_acc_m;
  out.policy = p.policy;
  out.eta_update_period = p.eta_update_period;
  out.include_serving_in_neighbors = p.include_serving_in_neighbors;
  out.refine_with_estimated_error = p.refine_with_estimated_error;
  return out;
}

}  // namespace v2xloc
