#include "doctest.h"

#include <cmath>

#include "cknn/datagen.hpp"
#include "cknn/experiment.hpp"

using namespace cknn;

TEST_CASE("log grid") {
  const auto g = log_grid(0.1, 10.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(0.1));
  CHECK(g[2] == doctest::Approx(1.0));
  CHECK(g.back() == doctest::Approx(10.0));
}

TEST_CASE("log-log slope of an exact power law") {
  const std::vector<double> x{250, 500, 1000, 2000, 4000};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.0 / 3.0));
  CHECK(loglog_slope(x, y) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("refined argmin recovers a log-parabola minimum") {
  const auto x = log_grid(0.01, 1.0, 15);
  std::vector<double> y;
  for (double v : x) y.push_back(std::exp(std::pow(std::log(v / 0.137), 2)));
  CHECK(refined_argmin(x, y) == doctest::Approx(0.137).epsilon(1e-9));
}

TEST_CASE("circle errors shrink near a sensible bandwidth") {
  const auto d = gen_uniform_circle(300, 1);
  const auto dist = pairwise_distances(d.points);
  const double good = circle_spectral_rmse(dist, 0.9, KernelShape::Indicator);
  const double tiny = circle_spectral_rmse(dist, 0.05, KernelShape::Indicator);
  CHECK(good < tiny);
  const double pw = circle_pointwise_rmse(dist, d.latent, 1.3, KernelShape::Indicator);
  CHECK(pw < circle_pointwise_rmse(dist, d.latent, 0.1, KernelShape::Indicator));
}

TEST_CASE("sweep rows cover every combination") {
  PowerLawConfig cfg;
  cfg.n_list = {60, 90};
  cfg.spectral_grid = {0.6, 0.9, 1.2};
  cfg.pointwise_grid = {1.0, 1.5};
  cfg.seeds = {1, 2};
  const auto r = run_power_law_experiment(cfg);
  CHECK(r.rows.size() == 2 * (3 + 2) * 2);
  CHECK(r.spectral.size() == 2);
  CHECK(r.pointwise.size() == 2);
}
