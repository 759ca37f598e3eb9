#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cknn/datagen.hpp"
#include "cknn/error.hpp"

namespace cknn {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

// Gaussian line profile at distance d from the line.
double ridge(double d, double sigma) { return std::exp(-d * d / (2.0 * sigma * sigma)); }

// Distance from u to the nearest point of (period/2) + period * Z.
double line_distance(double u, double period) {
  const double t = u / period - 0.5;
  return std::abs(t - std::round(t)) * period;
}

double unite(double a, double b) { return 1.0 - (1.0 - a) * (1.0 - b); }

}  // namespace

PatternKind pattern_kind_from_string(const std::string& s) {
  if (s == "stripes") return PatternKind::Stripes;
  if (s == "biperiodic") return PatternKind::Biperiodic;
  if (s == "checkerboard") return PatternKind::Checkerboard;
  if (s == "hexagonal") return PatternKind::Hexagonal;
  throw InvalidParameter("unknown pattern '" + s + "'");
}

double pattern_value(PatternKind kind, double x, double y, const PatternParams& p) {
  const double t = p.texture;
  switch (kind) {
    case PatternKind::Stripes:
      return 0.325 * (1.0 + std::cos(2.0 * kPi * x / p.stripe_period));
    case PatternKind::Biperiodic: {
      const double P = p.grid_period;
      const double lines = unite(ridge(line_distance(x, P), p.line_width),
                                 ridge(line_distance(y, P), p.line_width));
      return 0.1 + 0.5 * lines + t * std::cos(2.0 * kPi * x / P) * std::cos(2.0 * kPi * y / P);
    }
    case PatternKind::Checkerboard: {
      const double Q = p.checker_side;
      const double sx = std::tanh(3.0 * std::sin(kPi * x / Q));
      const double sy = std::tanh(3.0 * std::sin(kPi * y / Q));
      return 0.32 + 0.25 * sx * sy +
             t * std::cos(kPi * (x + y) / Q) * std::cos(kPi * (x - y) / Q);
    }
    case PatternKind::Hexagonal: {
      const double h = p.hex_spacing;
      // Phases of the three families; the first equals the sum of the
      // others, so all lines meet in common points.
      const double f2 = (x * kSqrt3 / 2.0 + y / 2.0) / h;
      const double f3 = (-x * kSqrt3 / 2.0 + y / 2.0) / h;
      const double f1 = f2 + f3;
      double lines = 0.0;
      for (double f : {f1, f2, f3}) {
        const double d = std::abs(f - std::round(f)) * h;
        lines = unite(lines, ridge(d, p.line_width));
      }
      const double tex = (std::cos(2.0 * kPi * f1) + std::cos(2.0 * kPi * f2) +
                          std::cos(2.0 * kPi * f3)) / 3.0;
      return 0.1 + 0.5 * lines + t * tex;
    }
  }
  return 0.0;
}

std::array<std::array<double, 2>, 2> pattern_periods(PatternKind kind, const PatternParams& p) {
  switch (kind) {
    case PatternKind::Stripes: return {{{p.stripe_period, 0.0}, {0.0, 1.0}}};
    case PatternKind::Biperiodic: return {{{p.grid_period, 0.0}, {0.0, p.grid_period}}};
    case PatternKind::Checkerboard:
      return {{{p.checker_side, p.checker_side}, {p.checker_side, -p.checker_side}}};
    case PatternKind::Hexagonal:
      return {{{2.0 * p.hex_spacing / kSqrt3, 0.0}, {p.hex_spacing / kSqrt3, p.hex_spacing}}};
  }
  return {};
}

PatternLayout pattern_layout(PatternKind kind, std::size_t patch, const PatternParams& p) {
  if (patch == 0) throw InvalidParameter("patch size must be positive");
  double w = 0.0, h = 0.0;
  std::size_t stride = 1;
  switch (kind) {
    case PatternKind::Stripes: w = 4.0 * p.stripe_period; break;
    case PatternKind::Biperiodic: w = h = p.grid_period; break;
    case PatternKind::Checkerboard: w = 2.0 * p.checker_side; h = p.checker_side; break;
    case PatternKind::Hexagonal:
      w = 2.0 * p.hex_spacing / kSqrt3;
      h = p.hex_spacing;
      stride = 2;
      break;
  }
  // Window corners at 0, stride, ... strictly below the domain extent.
  auto extent = [&](double len) {
    const auto corners = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / stride)));
    return (corners - 1) * stride + patch;
  };
  return {kind == PatternKind::Stripes ? patch : extent(h), extent(w), stride};
}

Image gen_pattern_image(PatternKind kind, std::size_t rows, std::size_t cols, bool gradient,
                        const PatternParams& p) {
  if (rows == 0 || cols == 0) throw InvalidParameter("image size must be positive");
  Image img(rows, cols);
  const double gx = cols > 1 ? 1.0 / static_cast<double>(cols - 1) : 0.0;
  const double gy = rows > 1 ? 1.0 / static_cast<double>(rows - 1) : 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double v = pattern_value(kind, static_cast<double>(c), static_cast<double>(r), p);
      if (gradient) v += p.gradient * (c * gx + r * gy) / 2.0;
      img.at(r, c) = std::clamp(v, 0.0, 1.0);
    }
  }
  return img;
}

Image decimate(const Image& img, std::size_t factor) {
  if (factor < 1) throw InvalidParameter("decimation factor must be at least 1");
  Image out((img.rows + factor - 1) / factor, (img.cols + factor - 1) / factor);
  for (std::size_t r = 0; r < out.rows; ++r)
    for (std::size_t c = 0; c < out.cols; ++c) out.at(r, c) = img.at(r * factor, c * factor);
  return out;
}

std::size_t patch_count(const Image& img, std::size_t s, std::size_t stride) {
  if (s == 0 || stride == 0) throw InvalidParameter("patch size and stride must be positive");
  if (s > img.rows || s > img.cols)
    throw InvalidParameter("patch size " + std::to_string(s) + " exceeds image " +
                           std::to_string(img.rows) + "x" + std::to_string(img.cols));
  return ((img.rows - s) / stride + 1) * ((img.cols - s) / stride + 1);
}

PointCloud extract_patches(const Image& img, std::size_t s, std::size_t stride) {
  const std::size_t count = patch_count(img, s, stride);
  std::vector<double> out;
  out.reserve(count * s * s);
  for (std::size_t r0 = 0; r0 + s <= img.rows; r0 += stride)
    for (std::size_t c0 = 0; c0 + s <= img.cols; c0 += stride)
      for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = 0; c < s; ++c) out.push_back(img.at(r0 + r, c0 + c));
  return PointCloud(std::move(out), s * s);
}

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  auto token = [&]() {
    std::string t;
    char ch;
    while (in.get(ch)) {
      if (ch == '#') {
        std::string skip;
        std::getline(in, skip);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        if (!t.empty()) break;
        continue;
      }
      t.push_back(ch);
    }
    return t;
  };
  const std::string magic = token();
  if (magic != "P2" && magic != "P5") throw InvalidInput(path + ": not a P2/P5 PGM file");
  std::size_t cols = 0, rows = 0;
  int maxval = 0;
  try {
    cols = std::stoul(token());
    rows = std::stoul(token());
    maxval = std::stoi(token());
  } catch (const std::exception&) {
    throw InvalidInput(path + ": malformed PGM header");
  }
  if (cols == 0 || rows == 0 || maxval <= 0 || maxval > 255)
    throw InvalidInput(path + ": unsupported PGM dimensions or maxval");
  Image img(rows, cols);
  for (std::size_t k = 0; k < rows * cols; ++k) {
    int v;
    if (magic == "P5") {
      char ch;
      if (!in.get(ch)) throw InvalidInput(path + ": truncated PGM data");
      v = static_cast<unsigned char>(ch);
    } else {
      const std::string t = token();
      if (t.empty()) throw InvalidInput(path + ": truncated PGM data");
      v = std::stoi(t);
    }
    if (v < 0 || v > maxval) throw InvalidInput(path + ": pixel out of range");
    img.px[k] = static_cast<double>(v) / maxval;
  }
  return img;
}

void write_pgm(const std::string& path, const Image& img, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << (binary ? "P5" : "P2") << '\n' << img.cols << ' ' << img.rows << "\n255\n";
  for (std::size_t k = 0; k < img.px.size(); ++k) {
    const int v = static_cast<int>(std::lround(std::clamp(img.px[k], 0.0, 1.0) * 255.0));
    if (binary)
      out.put(static_cast<char>(v));
    else
      out << v << ((k + 1) % img.cols == 0 ? '\n' : ' ');
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace cknn
