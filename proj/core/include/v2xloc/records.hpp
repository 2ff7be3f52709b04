// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

// Result serialization: the per-UE records CSV and the campaign summary in
// text and JSON form. Byte layout is documented in docs/formats.md.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "v2xloc/metrics.hpp"

namespace v2xloc {

inline constexpr const char* kRecordsHeader =
    "drop_index,ue_id,x,y,in_tunnel,class,zeta_ns,err_gnss_m,err_tdoa_m,err_fused_m,"
    "err_spntv_m,selected_tech,err_espntv_m,selected_espntv,err_efusion_m,selected_efusion,"
    "eta_ns";

// Six significant digits, "inf" for unavailable, "nan" for undefined.
std::string format_number(double v);

// Rows are sorted by (drop_index, ue_id) before writing.
void write_records(std::ostream& out, std::vector<UeRecord> records);
// Throws Error with the path on I/O failure.
void write_records(const std::string& path, std::vector<UeRecord> records);

// Throws Error with line context on malformed input.
std::vector<UeRecord> read_records(std::istream& in);
std::vector<UeRecord> read_records(const std::string& path);

std::string summary_text(const CampaignSummary& summary);
std::string summary_json(const CampaignSummary& summary);

}  // namespace v2xloc
