#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "simrs/channel.hpp"
#include "simrs/rsma.hpp"

namespace simrs::io {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& text);

std::string join(const std::vector<double>& values, char sep);
std::vector<double> split_doubles(const std::string& text, char sep);

// RateReport as one CSV row. Columns, in order:
//   r_min, r_common, r_groups, r_private, r_users, sinr_common, sinr_group, sinr_private
// Vector-valued columns are semicolon-joined. Rates in bits/s/Hz.
std::string rate_report_header();
std::string rate_report_row(const RateReport& report);

// Channel dump: a header line `simrs-channel 1 seed <seed>`, then per matrix a
// line `matrix <name> <rows> <cols>` followed by rows*cols lines of `re,im` in
// row-major order.
struct ChannelDump {
  std::uint64_t seed = 0;
  std::map<std::string, CMatrix> matrices;
};

void write_channel_dump(std::ostream& os, const ChannelSet& channels);
ChannelDump read_channel_dump(std::istream& is);

}  // namespace simrs::io
