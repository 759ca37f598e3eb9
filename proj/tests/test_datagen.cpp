#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include "cknn/clustering.hpp"
#include "cknn/datagen.hpp"
#include "cknn/error.hpp"

using namespace cknn;
using std::numbers::pi;

namespace {

double norm2(std::span<const double> p, double cx = 0.0) {
  double s = (p[0] - cx) * (p[0] - cx);
  for (std::size_t a = 1; a < p.size(); ++a) s += p[a] * p[a];
  return std::sqrt(s);
}

bool identical(const Dataset& a, const Dataset& b) {
  return std::equal(a.points.data().begin(), a.points.data().end(), b.points.data().begin(),
                    b.points.data().end()) &&
         a.labels == b.labels;
}

}  // namespace

TEST_CASE("figure eight: two annuli of 60 points") {
  const auto d = gen_figure_eight(7);
  REQUIRE(d.points.size() == 120);
  std::size_t big = 0;
  for (std::size_t i = 0; i < 120; ++i) {
    if (d.labels[i] == 0) {
      ++big;
      const double r = norm2(d.points.point(i), -1.0);
      CHECK(r >= 2.0 / 3.0);
      CHECK(r <= 1.0);
    } else {
      const double r = norm2(d.points.point(i), 0.2);
      CHECK(r >= 0.2);
      CHECK(r <= 0.3);
    }
  }
  CHECK(big == 60);
}

TEST_CASE("generators are deterministic per seed") {
  CHECK(identical(gen_figure_eight(3), gen_figure_eight(3)));
  CHECK_FALSE(identical(gen_figure_eight(3), gen_figure_eight(4)));
  CHECK(identical(gen_uniform_circle(50, 9), gen_uniform_circle(50, 9)));
  CHECK(identical(gen_cut_gaussian(2, 100, 1), gen_cut_gaussian(2, 100, 1)));
}

TEST_CASE("cut Gaussian in the plane: 150 draws minus the gap") {
  const auto d = gen_cut_gaussian_fig5(1);
  // About 20% of standard normal draws land in the annulus.
  CHECK(d.points.size() < 150);
  CHECK(d.points.size() > 100);
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    const double r = norm2(d.points.point(i));
    CHECK((r <= 0.25 || r >= 0.75));
    CHECK(d.labels[i] == (r <= 0.25 ? 0 : 1));
  }
}

TEST_CASE("cut Gaussian gap and labels") {
  for (int m : {1, 2, 3}) {
    const auto gap = cut_gaussian_gap(m);
    const double w = std::pow(0.1, 1.0 / m);
    CHECK(gap.lo == doctest::Approx(w + 0.3 * m - w / 2));
    CHECK(gap.hi == doctest::Approx(w + 0.3 * m + w / 2));
    const auto d = gen_cut_gaussian(m, 300, 2);
    REQUIRE(d.points.size() == 300);
    CHECK(d.points.dim() == static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < 300; ++i) {
      const auto p = d.points.point(i);
      const double r = norm2(p);
      CHECK((r <= gap.lo || r >= gap.hi));
      const int want = r <= gap.lo ? 0 : (m == 1 ? (p[0] < 0 ? 1 : 2) : 1);
      CHECK(d.labels[i] == want);
      CHECK(d.density[i] == doctest::Approx(std::pow(2.0 * pi, -m / 2.0) * std::exp(-r * r / 2.0)));
    }
  }
}

TEST_CASE("cut Gaussian curve") {
  const auto d = gen_cut_gaussian_1d_embedded(200, 4);
  REQUIRE(d.points.size() == 200);
  for (std::size_t i = 0; i < 200; ++i) {
    const double t = d.latent[i];
    CHECK_FALSE((t > 0.4 && t < 0.8));
    CHECK(d.points.point(i)[0] == doctest::Approx(t * t * t - t));
    CHECK(d.points.point(i)[1] == doctest::Approx(1.0 / (t * t + 1.0)));
    CHECK(d.labels[i] == (t <= 0.4 ? 0 : 1));
    CHECK(d.density[i] > 0.0);
  }
}

TEST_CASE("uniform circle") {
  const auto d = gen_uniform_circle(500, 5);
  REQUIRE(d.points.size() == 500);
  for (std::size_t i = 0; i < 500; ++i) {
    const auto p = d.points.point(i);
    CHECK(p[0] == doctest::Approx(std::sin(d.latent[i])));
    CHECK(p[1] == doctest::Approx(std::cos(d.latent[i])));
    CHECK(d.density[i] == doctest::Approx(1.0 / (2.0 * pi)));
  }
}

TEST_CASE("three boxes") {
  const ThreeBoxesConfig cfg;
  const auto d = gen_three_boxes(cfg, 1);
  REQUIRE(d.points.size() == cfg.counts[0] + cfg.counts[1] + cfg.counts[2]);
  std::size_t per[3] = {0, 0, 0};
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    const auto& b = cfg.boxes[static_cast<std::size_t>(d.labels[i])];
    const auto p = d.points.point(i);
    CHECK(p[0] >= b.x0);
    CHECK(p[0] <= b.x1);
    CHECK(p[1] >= b.y0);
    CHECK(p[1] <= b.y1);
    ++per[d.labels[i]];
  }
  for (int b = 0; b < 3; ++b) CHECK(per[b] == cfg.counts[static_cast<std::size_t>(b)]);
  ThreeBoxesConfig bad;
  bad.boxes[1] = {0.5, 0.0, 1.5, 1.0};
  CHECK_THROWS_AS(gen_three_boxes(bad, 1), InvalidParameter);
}

TEST_CASE("spirals") {
  for (int dim : {2, 3}) {
    SpiralConfig cfg;
    cfg.dim = dim;
    cfg.n_total = 300;
    const auto d = gen_spirals(cfg, 3);
    CHECK(d.points.size() == 300);
    CHECK(d.points.dim() == static_cast<std::size_t>(dim));
    CHECK(std::set<int>(d.labels.begin(), d.labels.end()) == std::set<int>{0, 1, 2});
  }
  SpiralConfig bad;
  bad.dim = 4;
  CHECK_THROWS_AS(gen_spirals(bad, 1), InvalidParameter);
}

TEST_CASE("patch counts") {
  const Image a(30, 30);
  CHECK(patch_count(a, 9, 3) == 64);
  CHECK(extract_patches(a, 9, 3).size() == 64);
  const Image b(99, 99);
  CHECK(patch_count(b, 9, 9) == 121);
  CHECK(extract_patches(b, 9, 9).dim() == 81);
  CHECK_THROWS(extract_patches(Image(5, 5), 9, 1));
}

TEST_CASE("patches copy image windows") {
  Image img(12, 15);
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t c = 0; c < 15; ++c) img.at(r, c) = static_cast<double>(r * 100 + c) / 2000.0;
  const auto p = extract_patches(img, 4, 3);
  const std::size_t per_row = (15 - 4) / 3 + 1;
  REQUIRE(p.size() == ((12 - 4) / 3 + 1) * per_row);
  for (std::size_t w = 0; w < p.size(); ++w) {
    const std::size_t r0 = (w / per_row) * 3, c0 = (w % per_row) * 3;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) CHECK(p.point(w)[a * 4 + b] == img.at(r0 + a, c0 + b));
  }
}

TEST_CASE("decimation") {
  Image img(5, 7);
  for (std::size_t i = 0; i < img.px.size(); ++i) img.px[i] = static_cast<double>(i) / 100.0;
  const auto d = decimate(img, 2);
  CHECK(d.rows == 3);
  CHECK(d.cols == 4);
  CHECK(d.at(1, 2) == img.at(2, 4));
}

TEST_CASE("patterns repeat along their periods") {
  for (auto kind : {PatternKind::Stripes, PatternKind::Biperiodic, PatternKind::Checkerboard,
                    PatternKind::Hexagonal}) {
    const auto periods = pattern_periods(kind);
    for (double x = 0.3; x < 40.0; x += 3.7)
      for (double y = 0.1; y < 40.0; y += 4.3)
        for (const auto& v : periods)
          CHECK(pattern_value(kind, x + v[0], y + v[1]) == doctest::Approx(pattern_value(kind, x, y)).epsilon(1e-9));
  }
}

TEST_CASE("pattern images and layouts") {
  CHECK(pattern_kind_from_string("hexagonal") == PatternKind::Hexagonal);
  CHECK_THROWS(pattern_kind_from_string("zigzag"));
  for (auto kind : {PatternKind::Stripes, PatternKind::Biperiodic, PatternKind::Checkerboard,
                    PatternKind::Hexagonal}) {
    const auto lay = pattern_layout(kind, 9);
    const auto flat = gen_pattern_image(kind, lay.rows, lay.cols, false);
    const auto ramp = gen_pattern_image(kind, lay.rows, lay.cols, true);
    CHECK(flat.rows == lay.rows);
    double lo = 1.0, hi = 0.0;
    for (double v : flat.px) lo = std::min(lo, v), hi = std::max(hi, v);
    CHECK(lo >= 0.0);
    CHECK(hi <= 0.65 + 1e-12);
    for (double v : ramp.px) CHECK((v >= 0.0 && v <= 1.0));
    CHECK(ramp.px != flat.px);
  }
  CHECK(pattern_layout(PatternKind::Stripes, 9).rows == 9);
}

TEST_CASE("PGM round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "cknn_pgm_tests";
  std::filesystem::create_directories(dir);
  Image img(4, 6);
  for (std::size_t i = 0; i < img.px.size(); ++i) img.px[i] = static_cast<double>(i * 11 % 256) / 255.0;
  for (bool binary : {true, false}) {
    const auto p = (dir / (binary ? "b.pgm" : "a.pgm")).string();
    write_pgm(p, img, binary);
    const auto back = read_pgm(p);
    REQUIRE(back.rows == 4);
    REQUIRE(back.cols == 6);
    for (std::size_t i = 0; i < img.px.size(); ++i) CHECK(back.px[i] == doctest::Approx(img.px[i]).epsilon(1e-12));
  }
  std::ofstream(dir / "bad.pgm") << "P3\n1 1\n255\n0 0 0\n";
  CHECK_THROWS(read_pgm((dir / "bad.pgm").string()));
}

TEST_CASE("three boxes: CkNN separates them, fixed eps never does") {
  int cknn_ok = 0, eps_never = 0;
  for (int s = 1; s <= 10; ++s) {
    const auto ds = gen_three_boxes({}, s);
    const auto d = pairwise_distances(ds.points);
    std::size_t a = 0, b = 0;
    cknn_ok += clustering_window(cknn_filtration(d, knn_bandwidth(d, 10)), ds.labels, a, b);
    eps_never += !clustering_window(fixed_eps_filtration(d), ds.labels, a, b);
  }
  CHECK(cknn_ok >= 9);
  CHECK(eps_never >= 9);
}

TEST_CASE("spirals: CkNN recovers the three arms over a nonempty window") {
  for (int dim : {2, 3}) {
    SpiralConfig cfg;
    cfg.dim = dim;
    int ok = 0;
    for (int s = 1; s <= 10; ++s) {
      const auto ds = gen_spirals(cfg, s);
      const auto d = pairwise_distances(ds.points);
      std::size_t a = 0, b = 0;
      ok += clustering_window(cknn_filtration(d, knn_bandwidth(d, 10)), ds.labels, a, b);
    }
    CHECK(ok >= 8);
  }
}
