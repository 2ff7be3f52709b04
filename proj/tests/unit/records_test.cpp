// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/records.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "v2xloc/error.hpp"

namespace v2xloc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

UeRecord sample(int drop, int id) {
  UeRecord r;
  r.drop_index = drop;
  r.ue_id = id;
  r.true_position = {-123.456789, 4.25, 1.5};
  r.in_tunnel = id % 2 == 1;
  r.ue_class = id % 3 == 0 ? UeClass::kA : UeClass::kB;
  r.zeta = 90.5e-9;
  r.eta = 90e-9;
  r.error = {1.23456789, 2.5, kInf, 1.23456789, 2.5, kInf};
  r.selected_spntv = Technology::kGnss;
  r.selected_espntv = Technology::kTdoa;
  r.selected_efusion = Technology::kFused;
  return r;
}

TEST(FormatNumber, SixSignificantDigits) {
  EXPECT_EQ(format_number(1.23456789), "1.23457");
  EXPECT_EQ(format_number(2.5), "2.5");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(123456789.0), "1.23457e+08");
  EXPECT_EQ(format_number(kInf), "inf");
  EXPECT_EQ(format_number(kNan), "nan");
}

TEST(Records, OneRecordIsTwoLines) {
  std::ostringstream out;
  write_records(out, {sample(0, 0)});
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(text.substr(0, text.find('\n')), kRecordsHeader);
  EXPECT_EQ(text.substr(text.find('\n') + 1),
            "0,0,-123.457,4.25,0,A,90.5,1.23457,2.5,inf,1.23457,gnss,2.5,tdoa,inf,fused,90\n");
}

TEST(Records, RowsSortedAndRoundTrip) {
  std::vector<UeRecord> in = {sample(1, 0), sample(0, 2), sample(0, 1)};
  in[1].zeta = kNan;
  std::ostringstream out;
  write_records(out, in);
  std::istringstream back(out.str());
  const auto rows = read_records(back);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].drop_index, 0);
  EXPECT_EQ(rows[0].ue_id, 1);
  EXPECT_EQ(rows[1].ue_id, 2);
  EXPECT_TRUE(std::isnan(rows[1].zeta));
  EXPECT_EQ(rows[2].drop_index, 1);
  EXPECT_TRUE(std::isinf(rows[0].error_of(Method::kFused)));
  EXPECT_EQ(rows[0].selected_espntv, Technology::kTdoa);
  EXPECT_EQ(rows[0].ue_class, UeClass::kB);
  EXPECT_NEAR(rows[0].error_of(Method::kGnss), 1.23457, 1e-12);

  // Re-serializing the parsed rows is byte-identical.
  std::ostringstream again;
  write_records(again, rows);
  EXPECT_EQ(again.str(), out.str());
}

TEST(Records, MalformedInputReportsLine) {
  std::istringstream bad_header("drop,ue\n");
  EXPECT_THROW(read_records(bad_header), Error);
  std::istringstream short_row(std::string(kRecordsHeader) + "\n0,1,2\n");
  try {
    read_records(short_row);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::istringstream bad_number(std::string(kRecordsHeader) +
                                "\n0,0,x,4.25,0,A,1,1,1,1,1,gnss,1,gnss,1,fused,90\n");
  EXPECT_THROW(read_records(bad_number), Error);
}

TEST(Records, MissingPathNamed) {
  try {
    read_records(std::string("/nonexistent/records.csv"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/records.csv"), std::string::npos);
  }
}

TEST(Summary, TextAndJsonCarryAvailability) {
  std::vector<UeRecord> records = {sample(0, 0), sample(0, 1), sample(0, 2)};
  const std::vector<double> thresholds = {3.0};
  const CampaignSummary s = summarize(records, thresholds);
  const std::string text = summary_text(s);
  EXPECT_NE(text.find("spntv"), std::string::npos);
  EXPECT_NE(text.find("avail@3m"), std::string::npos);
  const auto j = nlohmann::json::parse(summary_json(s));
  EXPECT_EQ(j["ue_count"], 3);
  EXPECT_DOUBLE_EQ(j["methods"]["gnss"]["availability"]["3"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j["methods"]["fused"]["availability"]["3"].get<double>(), 0.0);
}

}  // namespace
}  // namespace v2xloc
