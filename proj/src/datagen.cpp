#include "cknn/datagen.hpp"

#include <cmath>
#include <numbers>

#include "cknn/error.hpp"
#include "cknn/rng.hpp"

namespace cknn {
namespace {

constexpr double kPi = std::numbers::pi;

Rng make_rng(std::uint64_t seed, Stream s) { return Rng(seed, static_cast<std::uint32_t>(s)); }

// Uniform point in the annulus r0 <= |x - c| <= r1 (area-uniform radius).
void annulus_point(Rng& rng, double cx, double cy, double r0, double r1, std::vector<double>& out) {
  const double u = rng.uniform();
  const double r = std::sqrt(u * (r1 * r1 - r0 * r0) + r0 * r0);
  const double t = 2.0 * kPi * rng.uniform();
  out.push_back(cx + r * std::cos(t));
  out.push_back(cy + r * std::sin(t));
}

double gaussian_pdf(const std::vector<double>& x, std::size_t off, int m) {
  double s = 0.0;
  for (int c = 0; c < m; ++c) s += x[off + c] * x[off + c];
  return std::exp(-s / 2.0) / std::pow(2.0 * kPi, m / 2.0);
}

}  // namespace

Dataset gen_figure_eight(std::uint64_t seed) {
  Rng rng = make_rng(seed, Stream::FigureEight);
  std::vector<double> xy;
  xy.reserve(240);
  std::vector<int> labels;
  for (int i = 0; i < 60; ++i) {
    annulus_point(rng, -1.0, 0.0, 2.0 / 3.0, 1.0, xy);
    labels.push_back(0);
  }
  for (int i = 0; i < 60; ++i) {
    annulus_point(rng, 0.2, 0.0, 0.2, 0.3, xy);
    labels.push_back(1);
  }
  return {PointCloud(std::move(xy), 2, 2), std::move(labels), {}, {}};
}

Dataset gen_cut_gaussian_fig5(std::uint64_t seed) {
  Rng rng = make_rng(seed, Stream::CutGaussianFig5);
  std::vector<double> xy;
  std::vector<int> labels;
  std::vector<double> q;
  for (int i = 0; i < 150; ++i) {
    const double x = rng.normal(), y = rng.normal();
    const double r = std::hypot(x, y);
    if (r >= 0.25 && r <= 0.75) continue;
    xy.push_back(x);
    xy.push_back(y);
    labels.push_back(r < 0.25 ? 0 : 1);
    q.push_back(std::exp(-(x * x + y * y) / 2.0) / (2.0 * kPi));
  }
  return {PointCloud(std::move(xy), 2, 2), std::move(labels), std::move(q), {}};
}

CutGaussianGap cut_gaussian_gap(int m) {
  if (m < 1) throw InvalidParameter("dimension must be at least 1");
  const double w = std::pow(0.1, 1.0 / m);
  const double center = w + 0.3 * m;
  return {center - w / 2.0, center + w / 2.0};
}

Dataset gen_cut_gaussian(int m, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidParameter("point count must be positive");
  const auto gap = cut_gaussian_gap(m);
  Rng rng = make_rng(seed, Stream::CutGaussian);
  std::vector<double> x;
  x.reserve(n * m);
  std::vector<int> labels;
  std::vector<double> q;
  std::vector<double> p(m);
  while (labels.size() < n) {
    double s = 0.0;
    for (int c = 0; c < m; ++c) {
      p[c] = rng.normal();
      s += p[c] * p[c];
    }
    const double r = std::sqrt(s);
    if (r > gap.lo && r < gap.hi) continue;
    x.insert(x.end(), p.begin(), p.end());
    int label = r <= gap.lo ? 0 : 1;
    if (m == 1 && label == 1) label = p[0] < 0 ? 1 : 2;
    labels.push_back(label);
    // The cut changes the normalizing constant only; it cancels in every
    // ratio built from q^beta.
    q.push_back(gaussian_pdf(x, x.size() - m, m));
  }
  return {PointCloud(std::move(x), static_cast<std::size_t>(m), m), std::move(labels), std::move(q), {}};
}

Dataset gen_cut_gaussian_1d_embedded(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidParameter("point count must be positive");
  Rng rng = make_rng(seed, Stream::CutGaussian1d);
  std::vector<double> xy;
  xy.reserve(2 * n);
  std::vector<int> labels;
  std::vector<double> q, ts;
  while (ts.size() < n) {
    const double t = rng.normal();
    if (t > 0.4 && t < 0.8) continue;
    xy.push_back(t * t * t - t);
    xy.push_back(1.0 / (t * t + 1.0));
    const double dx = 3.0 * t * t - 1.0;
    const double dy = -2.0 * t / ((t * t + 1.0) * (t * t + 1.0));
    const double speed = std::hypot(dx, dy);
    q.push_back(std::exp(-t * t / 2.0) / std::sqrt(2.0 * kPi) / speed);
    labels.push_back(t <= 0.4 ? 0 : 1);
    ts.push_back(t);
  }
  return {PointCloud(std::move(xy), 2, 1), std::move(labels), std::move(q), std::move(ts)};
}

Dataset gen_uniform_circle(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidParameter("point count must be positive");
  Rng rng = make_rng(seed, Stream::Circle);
  std::vector<double> xy;
  xy.reserve(2 * n);
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    theta[i] = 2.0 * kPi * rng.uniform();
    xy.push_back(std::sin(theta[i]));
    xy.push_back(std::cos(theta[i]));
  }
  return {PointCloud(std::move(xy), 2, 1), {}, std::vector<double>(n, 1.0 / (2.0 * kPi)),
          std::move(theta)};
}

Dataset gen_three_boxes(const ThreeBoxesConfig& cfg, std::uint64_t seed) {
  for (std::size_t a = 0; a < 3; ++a) {
    const auto& r = cfg.boxes[a];
    if (!(r.x1 > r.x0) || !(r.y1 > r.y0)) throw InvalidParameter("box " + std::to_string(a) + " is empty");
    for (std::size_t b = a + 1; b < 3; ++b) {
      const auto& s = cfg.boxes[b];
      const bool disjoint = r.x1 <= s.x0 || s.x1 <= r.x0 || r.y1 <= s.y0 || s.y1 <= r.y0;
      if (!disjoint)
        throw InvalidParameter("boxes " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
    }
  }
  Rng rng = make_rng(seed, Stream::ThreeBoxes);
  std::vector<double> xy;
  std::vector<int> labels;
  std::vector<double> q;
  for (int b = 0; b < 3; ++b) {
    const auto& r = cfg.boxes[b];
    const double area = (r.x1 - r.x0) * (r.y1 - r.y0);
    std::size_t total = cfg.counts[0] + cfg.counts[1] + cfg.counts[2];
    for (std::size_t i = 0; i < cfg.counts[b]; ++i) {
      xy.push_back(rng.uniform(r.x0, r.x1));
      xy.push_back(rng.uniform(r.y0, r.y1));
      labels.push_back(b);
      q.push_back(static_cast<double>(cfg.counts[b]) / static_cast<double>(total) / area);
    }
  }
  if (labels.empty()) throw InvalidParameter("three boxes: no points requested");
  return {PointCloud(std::move(xy), 2, 2), std::move(labels), std::move(q), {}};
}

Dataset gen_spirals(const SpiralConfig& cfg, std::uint64_t seed) {
  if (cfg.dim != 2 && cfg.dim != 3) throw InvalidParameter("spirals: dim must be 2 or 3");
  if (cfg.n_total < 3) throw InvalidParameter("spirals: need at least 3 points");
  if (!(cfg.rate > 0.0) || !(cfg.turns > 0.0)) throw InvalidParameter("spirals: rate and turns must be positive");
  Rng rng = make_rng(seed, Stream::Spirals);
  std::vector<double> x;
  std::vector<int> labels;
  std::vector<double> latent;
  for (std::size_t i = 0; i < cfg.n_total; ++i) {
    const int arm = static_cast<int>(i % 3);
    double s;
    do s = rng.exponential(cfg.rate);
    while (s > 1.0);
    const double phi = 2.0 * kPi * cfg.turns * s;
    const double r = cfg.radius0 + cfg.growth * cfg.turns * s;
    const double a = phi + 2.0 * kPi * arm / 3.0;
    x.push_back(r * std::cos(a));
    x.push_back(r * std::sin(a));
    if (cfg.dim == 3) x.push_back(cfg.z_slope * s);
    labels.push_back(arm);
    latent.push_back(s);
  }
  return {PointCloud(std::move(x), static_cast<std::size_t>(cfg.dim), 1), std::move(labels), {},
          std::move(latent)};
}

}  // namespace cknn
