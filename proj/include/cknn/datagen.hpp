#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cknn/geometry.hpp"

namespace cknn {

/// Generated points plus whatever ground truth the generator knows.
struct Dataset {
  PointCloud points;
  std::vector<int> labels;      // truth classes, empty if none
  std::vector<double> density;  // sampling density at each point, empty if unknown
  std::vector<double> latent;   // generator parameter per point (angle, t), may be empty
};

// Stream ids keep generators independent under the same seed.
enum class Stream : std::uint32_t {
  FigureEight = 1,
  CutGaussianFig5,
  CutGaussian,
  CutGaussian1d,
  Circle,
  ThreeBoxes,
  Spirals,
};

/// 60 points uniform on the annulus about (-1,0) with radii [2/3,1] and 60
/// on the annulus about (1/5,0) with radii [1/5,3/10]. Labels 0/1 by annulus.
Dataset gen_figure_eight(std::uint64_t seed);

/// 150 standard normal points in the plane with radius in [1/4,3/4] removed.
/// Labels: 0 inner disk, 1 outer shell.
Dataset gen_cut_gaussian_fig5(std::uint64_t seed);

/// Gap half-width w/2 about radius w + 3m/10 with w = 0.1^(1/m); samples
/// until exactly n points survive. Labels are the connected pieces of the
/// support: inner ball, outer shell (for m = 1 the shell is two rays,
/// labelled 1 for x < 0 and 2 for x > 0).
Dataset gen_cut_gaussian(int m, std::size_t n, std::uint64_t seed);

struct CutGaussianGap {
  double lo, hi;
};
CutGaussianGap cut_gaussian_gap(int m);

/// t ~ N(0,1) with 0.4 < t < 0.8 rejected, mapped to (t^3 - t, 1/(t^2+1)).
/// density is the arclength density of t's law on the curve; latent holds t.
/// Labels: 0 for t <= 0.4, 1 for t >= 0.8.
Dataset gen_cut_gaussian_1d_embedded(std::size_t n, std::uint64_t seed);

/// (sin theta, cos theta) with theta uniform; latent holds theta, density
/// is 1/(2 pi).
Dataset gen_uniform_circle(std::size_t n, std::uint64_t seed);

struct Rect {
  double x0, y0, x1, y1;
};

struct ThreeBoxesConfig {
  // The dense boxes are 0.3 apart, about the typical spacing in the sparse box.
  std::array<Rect, 3> boxes{{{0.0, 0.0, 1.0, 2.0}, {1.3, 0.0, 2.3, 2.0}, {3.2, 0.0, 5.2, 2.0}}};
  std::array<std::size_t, 3> counts{{200, 200, 25}};
};

/// Uniform points in three disjoint rectangles, labelled 0..2.
/// Overlapping rectangles raise InvalidParameter.
Dataset gen_three_boxes(const ThreeBoxesConfig& cfg, std::uint64_t seed);

struct SpiralConfig {
  int dim = 2;               // 2 or 3
  std::size_t n_total = 1000;
  double turns = 1.0;        // revolutions per arm
  double rate = 1.5;         // exponential decay of density along the arm (per unit arm parameter)
  double radius0 = 0.3;      // radius at the start of the arm
  double growth = 1.0;       // radius gained per revolution
  double z_slope = 1.0;      // third coordinate per unit arm parameter (dim 3)
};

/// Three Archimedean spirals rotated by 120 degrees; the position along each
/// arm is exponential (truncated at the arm's end). Labels are arm ids.
Dataset gen_spirals(const SpiralConfig& cfg, std::uint64_t seed);

struct Image {
  std::size_t rows = 0, cols = 0;
  std::vector<double> px;  // row-major, values in [0,1]

  Image() = default;
  Image(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), px(r * c, fill) {}
  double& at(std::size_t r, std::size_t c) { return px[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return px[r * cols + c]; }
};

enum class PatternKind { Stripes, Biperiodic, Checkerboard, Hexagonal };

/// Periods (in pixels) for each pattern. Stripes are vertical sinusoids with
/// period `stripe_period`; biperiodic uses horizontal and vertical line
/// families with period `grid_period`; the checkerboard has squares of side
/// `checker_side`; hexagonal uses three line families at 0/60/120 degrees
/// meeting in common points with spacing `hex_spacing`. Without gradient the
/// values stay in [0, 0.65].
struct PatternParams {
  double stripe_period = 30.25;
  double grid_period = 14.0;
  double checker_side = 10.0;
  double hex_spacing = 34.0;
  double line_width = 1.5;        // Gaussian profile sigma of a line
  double texture = 0.04;          // amplitude of the faint periodic background
  double gradient = 0.35;         // total brightness change across the image
};

/// Image size and window stride whose window corners cover one fundamental
/// domain of the pattern (stripes: a single row of windows over four
/// periods; hexagonal: stride 2, the others stride 1).
struct PatternLayout {
  std::size_t rows, cols, stride;
};
PatternLayout pattern_layout(PatternKind kind, std::size_t patch, const PatternParams& p = {});

Image gen_pattern_image(PatternKind kind, std::size_t rows, std::size_t cols, bool gradient,
                        const PatternParams& p = {});

/// The underlying continuous pattern at column x, row y (no gradient).
double pattern_value(PatternKind kind, double x, double y, const PatternParams& p = {});

/// Two translation vectors (dx, dy) leaving pattern_value unchanged. For
/// stripes the second vector is (0, 1) since any vertical shift works.
std::array<std::array<double, 2>, 2> pattern_periods(PatternKind kind, const PatternParams& p = {});

PatternKind pattern_kind_from_string(const std::string& s);

/// Every `factor`-th pixel along each axis, starting at (0,0).
Image decimate(const Image& img, std::size_t factor);

/// All s x s windows with top-left corners on a grid of step `stride`,
/// scanned row-major; each window flattened row-major.
PointCloud extract_patches(const Image& img, std::size_t s, std::size_t stride);

std::size_t patch_count(const Image& img, std::size_t s, std::size_t stride);

/// Plain PGM, P2 or P5, maxval up to 255. Values are scaled to [0,1].
Image read_pgm(const std::string& path);
void write_pgm(const std::string& path, const Image& img, bool binary = true);

}  // namespace cknn
