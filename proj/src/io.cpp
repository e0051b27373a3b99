#include "simrs/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace simrs::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

std::string join(const std::vector<double>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += format_double(values[i]);
  }
  return out;
}

std::vector<double> split_doubles(const std::string& text, char sep) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(parse_double(text.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

namespace {

std::vector<double> to_vec(const RVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

std::string rate_report_header() {
  return "r_min,r_common,r_groups,r_private,r_users,sinr_common,sinr_group,sinr_private";
}

std::string rate_report_row(const RateReport& r) {
  std::ostringstream os;
  os << format_double(r.min_rate) << ',' << format_double(r.streams.common) << ','
     << join(to_vec(r.streams.group), ';') << ',' << join(to_vec(r.streams.priv), ';') << ','
     << join(to_vec(r.user_rates), ';') << ',' << join(to_vec(r.sinr_common), ';') << ','
     << join(to_vec(r.sinr_group), ';') << ',' << join(to_vec(r.sinr_private), ';');
  return os.str();
}

namespace {

void write_matrix(std::ostream& os, const std::string& name, const CMatrix& m) {
  os << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      os << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag()) << '\n';
}

}  // namespace

void write_channel_dump(std::ostream& os, const ChannelSet& channels) {
  os << "simrs-channel 1 seed " << channels.seed << '\n';
  write_matrix(os, "feed", channels.feed);
  for (std::size_t i = 0; i < channels.inter_layer.size(); ++i)
    write_matrix(os, "inter_layer_" + std::to_string(i + 2), channels.inter_layer[i]);
  write_matrix(os, "sim_ue", channels.sim_ue);
  write_matrix(os, "direct", channels.direct.gains);
}

ChannelDump read_channel_dump(std::istream& is) {
  ChannelDump out;
  std::string magic, key;
  int version = 0;
  if (!(is >> magic >> version >> key >> out.seed) || magic != "simrs-channel" || version != 1 ||
      key != "seed")
    throw std::runtime_error("channel dump: bad header");
  std::string tag;
  while (is >> tag) {
    if (tag != "matrix") throw std::runtime_error("channel dump: expected 'matrix', got '" + tag + "'");
    std::string name;
    Eigen::Index rows = 0, cols = 0;
    if (!(is >> name >> rows >> cols) || rows < 0 || cols < 0)
      throw std::runtime_error("channel dump: bad matrix header");
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) {
        std::string line;
        if (!(is >> line)) throw std::runtime_error("channel dump: truncated matrix " + name);
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("channel dump: bad entry in " + name);
        m(r, c) = {parse_double(line.substr(0, comma)), parse_double(line.substr(comma + 1))};
      }
    out.matrices[name] = std::move(m);
  }
  return out;
}

}  // namespace simrs::io
