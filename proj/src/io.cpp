#include "cknn/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cknn/error.hpp"

namespace cknn {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, const std::string& path, std::size_t line) {
  const std::string t = trim(tok);
  if (t == "inf" || t == "+inf") return INFINITY;
  if (t == "-inf") return -INFINITY;
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size())
    throw InvalidInput(path + ":" + std::to_string(line) + ": cannot parse '" + t + "'");
  return v;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PointCloud read_points_csv(const std::string& path) {
  auto rows = read_rows(path);
  if (rows.empty()) throw InvalidInput(path + ": no points");
  std::vector<std::vector<double>> pts;
  pts.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<double> p;
    for (const auto& c : rows[r]) p.push_back(parse_double(c, path, r + 1));
    pts.push_back(std::move(p));
  }
  return PointCloud::from_rows(pts);
}

void write_points_csv(const std::string& path, const PointCloud& cloud) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (c) out << ',';
      out << format_double(p[c]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<double> read_values_csv(const std::string& path) {
  auto rows = read_rows(path);
  std::vector<double> v;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != 1)
      throw InvalidInput(path + ":" + std::to_string(r + 1) + ": expected one value per row");
    v.push_back(parse_double(rows[r][0], path, r + 1));
  }
  return v;
}

void write_values_csv(const std::string& path, const std::vector<double>& v) {
  auto out = open_out(path);
  for (double x : v) out << format_double(x) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::vector<int> read_labels_csv(const std::string& path) {
  auto vals = read_values_csv(path);
  std::vector<int> out;
  out.reserve(vals.size());
  for (double x : vals) {
    if (x < 0 || x != std::floor(x)) throw InvalidInput(path + ": labels must be nonnegative integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
  auto out = open_out(path);
  for (int l : labels) out << l << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace cknn
