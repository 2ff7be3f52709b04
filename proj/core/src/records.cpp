// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "v2xloc/error.hpp"
#include "v2xloc/units.hpp"

namespace v2xloc {

namespace {

Technology technology_from_string(const std::string& s, int line) {
  for (Technology t : {Technology::kGnss, Technology::kTdoa, Technology::kFused})
    if (s == to_string(t)) return t;
  throw Error("records line " + std::to_string(line) + ": unknown technology '" + s + "'");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& s, int line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw Error("records line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::string table_cell(const std::optional<double>& v) {
  return v ? format_number(*v) : "-";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_records(std::ostream& out, std::vector<UeRecord> records) {
  std::sort(records.begin(), records.end(), [](const UeRecord& a, const UeRecord& b) {
    return a.drop_index != b.drop_index ? a.drop_index < b.drop_index : a.ue_id < b.ue_id;
  });
  out << kRecordsHeader << '\n';
  for (const UeRecord& r : records) {
    out << r.drop_index << ',' << r.ue_id << ',' << format_number(r.true_position.x) << ','
        << format_number(r.true_position.y) << ',' << (r.in_tunnel ? 1 : 0) << ','
        << to_string(r.ue_class) << ',' << format_number(r.zeta / kNanosecond) << ','
        << format_number(r.error_of(Method::kGnss)) << ','
        << format_number(r.error_of(Method::kTdoa)) << ','
        << format_number(r.error_of(Method::kFused)) << ','
        << format_number(r.error_of(Method::kSpntv)) << ',' << to_string(r.selected_spntv) << ','
        << format_number(r.error_of(Method::kESpntv)) << ',' << to_string(r.selected_espntv)
        << ',' << format_number(r.error_of(Method::kEFusion)) << ','
        << to_string(r.selected_efusion) << ',' << format_number(r.eta / kNanosecond) << '\n';
  }
}

void write_records(const std::string& path, std::vector<UeRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_records(out, std::move(records));
  out.flush();
  if (!out) throw Error("write failed for '" + path + "'");
}

std::vector<UeRecord> read_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordsHeader)
    throw Error("records: missing or unexpected header");
  std::vector<UeRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c = split_csv(line);
    if (c.size() != 17)
      throw Error("records line " + std::to_string(line_no) + ": expected 17 columns");
    UeRecord r;
    r.drop_index = static_cast<int>(parse_number(c[0], line_no));
    r.ue_id = static_cast<int>(parse_number(c[1], line_no));
    r.true_position = {parse_number(c[2], line_no), parse_number(c[3], line_no), 0.0};
    r.in_tunnel = c[4] == "1";
    if (c[5] != "A" && c[5] != "B")
      throw Error("records line " + std::to_string(line_no) + ": class must be A or B");
    r.ue_class = c[5] == "A" ? UeClass::kA : UeClass::kB;
    r.zeta = parse_number(c[6], line_no) * kNanosecond;
    auto set = [&r](Method m, double e) { r.error[static_cast<std::size_t>(m)] = e; };
    set(Method::kGnss, parse_number(c[7], line_no));
    set(Method::kTdoa, parse_number(c[8], line_no));
    set(Method::kFused, parse_number(c[9], line_no));
    set(Method::kSpntv, parse_number(c[10], line_no));
    r.selected_spntv = technology_from_string(c[11], line_no);
    set(Method::kESpntv, parse_number(c[12], line_no));
    r.selected_espntv = technology_from_string(c[13], line_no);
    set(Method::kEFusion, parse_number(c[14], line_no));
    r.selected_efusion = technology_from_string(c[15], line_no);
    r.eta = parse_number(c[16], line_no) * kNanosecond;
    out.push_back(r);
  }
  return out;
}

std::vector<UeRecord> read_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open records file '" + path + "'");
  try {
    return read_records(in);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string summary_text(const CampaignSummary& s) {
  std::ostringstream out;
  out << "ues " << s.ue_count << "  drops " << s.drop_count << '\n';
  out << std::left << std::setw(10) << "method";
  for (double t : s.thresholds) out << std::setw(12) << ("avail@" + format_number(t) + "m");
  for (double p : kSummaryPercentiles) out << std::setw(10) << ("p" + format_number(p) + "_m");
  out << "unavailable\n";
  for (const MethodSummary& m : s.methods) {
    out << std::setw(10) << to_string(m.method);
    for (double a : m.availability) out << std::setw(12) << format_number(a);
    for (const auto& p : m.percentiles) out << std::setw(10) << table_cell(p);
    out << m.unavailable << '\n';
  }
  auto group_line = [&](const char* name, const GroupSummary& g) {
    if (!g.count) return;
    out << name << " n=" << g.count << "  spntv->tdoa " << format_number(g.spntv_tdoa_fraction)
        << "  spntv->gnss " << format_number(g.spntv_gnss_fraction);
    if (!s.thresholds.empty()) {
      out << "  avail@" << format_number(s.thresholds.front()) << "m";
      for (Method m : kAllMethods)
        out << ' ' << to_string(m) << '=' << format_number(g.availability[static_cast<std::size_t>(m)].front());
    }
    out << '\n';
  };
  group_line("class A", s.class_a);
  group_line("class B", s.class_b);
  if (s.in_tunnel.count) {
    group_line("in tunnel", s.in_tunnel);
    group_line("outside", s.out_of_tunnel);
  }
  if (!s.eta_history.empty()) {
    out << "eta_ns";
    for (double e : s.eta_history) out << ' ' << format_number(e / kNanosecond);
    out << '\n';
  }
  for (const TailEntry& t : s.tail)
    out << "tail improvement " << to_string(t.method) << " p" << format_number(t.percentile)
        << " = " << format_number(t.improvement) << '\n';
  return out.str();
}

std::string summary_json(const CampaignSummary& s) {
  using nlohmann::json;
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(format_number(v)); };
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };

  json methods = json::object();
  for (const MethodSummary& m : s.methods) {
    json avail = json::object();
    for (std::size_t i = 0; i < s.thresholds.size(); ++i)
      avail[format_number(s.thresholds[i])] = m.availability[i];
    json pct = json::object();
    for (std::size_t i = 0; i < kSummaryPercentiles.size(); ++i)
      pct[format_number(kSummaryPercentiles[i])] = opt(m.percentiles[i]);
    // Error quantiles on a 1% grid (nearest rank over all entries).
    json cdf = json::array();
    const std::size_t n = m.sorted_errors.size();
    for (int q = 1; q <= 100 && n; ++q) {
      const std::size_t rank = std::max<std::size_t>(1, (n * static_cast<std::size_t>(q) + 99) / 100);
      cdf.push_back({{"fraction", q / 100.0}, {"error_m", num(m.sorted_errors[rank - 1])}});
    }
    methods[to_string(m.method)] = {{"availability", avail},
                                    {"percentiles_m", pct},
                                    {"unavailable", m.unavailable},
                                    {"cdf", cdf}};
  }
  auto group = [&](const GroupSummary& g) {
    json avail = json::object();
    for (Method m : kAllMethods) {
      json per = json::object();
      for (std::size_t i = 0; i < s.thresholds.size(); ++i)
        per[format_number(s.thresholds[i])] = g.availability[static_cast<std::size_t>(m)][i];
      avail[to_string(m)] = per;
    }
    return json{{"count", g.count},
                {"spntv_tdoa_fraction", g.spntv_tdoa_fraction},
                {"spntv_gnss_fraction", g.spntv_gnss_fraction},
                {"availability", avail}};
  };
  json eta = json::array();
  for (double e : s.eta_history) eta.push_back(e / kNanosecond);
  json tail = json::array();
  for (const TailEntry& t : s.tail)
    tail.push_back({{"method", to_string(t.method)},
                    {"percentile", t.percentile},
                    {"improvement", num(t.improvement)}});
  json doc = {{"ue_count", s.ue_count},       {"drop_count", s.drop_count},
              {"thresholds_m", s.thresholds}, {"methods", methods},
              {"class_a", group(s.class_a)},  {"class_b", group(s.class_b)},
              {"in_tunnel", group(s.in_tunnel)}, {"out_of_tunnel", group(s.out_of_tunnel)},
              {"eta_history_ns", eta},        {"tail", tail}};
  return doc.dump(2) + "\n";
}

}  // namespace v2xloc
