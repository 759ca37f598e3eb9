#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cknn/spectral.hpp"

namespace cknn {

enum class EstimateMode { Pointwise, Spectral };

const char* mode_name(EstimateMode m);

/// Uniform unit-circle bandwidth sweep: rho = 1, mu = 1, known density
/// 1/(2 pi). Pointwise error compares c^{-1} L_un sin(theta) with
/// sin(theta); spectral error compares the five smallest eigenvalues with
/// (0, 1, 1, 4, 4).
struct PowerLawConfig {
  std::vector<std::size_t> n_list;
  std::vector<double> spectral_grid;
  std::vector<double> pointwise_grid;
  std::vector<std::uint64_t> seeds;
  KernelShape shape = KernelShape::Indicator;
  int jobs = 1;
};

struct PowerLawRow {
  std::size_t n;
  double delta;
  std::uint64_t seed;
  EstimateMode mode;
  double rmse;
};

struct PowerLawBest {
  std::size_t n;
  double best_delta;  // minimizer of the seed-averaged RMSE
  double rmse;        // seed-averaged RMSE at the best grid point
};

struct PowerLawResult {
  std::vector<PowerLawRow> rows;
  std::vector<PowerLawBest> spectral, pointwise;
  double spectral_slope = 0.0;
  double pointwise_slope = 0.0;
};

PowerLawResult run_power_law_experiment(const PowerLawConfig& cfg);

/// RMSE of the two estimates for one circle sample at one delta.
double circle_pointwise_rmse(const DistanceMatrix& d, const std::vector<double>& theta,
                             double delta, KernelShape shape);
double circle_spectral_rmse(const DistanceMatrix& d, double delta, KernelShape shape);

/// count values from lo to hi, evenly spaced in log scale.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Minimizer of y over a log-spaced grid x, refined by a parabola through
/// the minimum and its two neighbours in (log x, log y).
double refined_argmin(const std::vector<double>& x, const std::vector<double>& y);

void write_power_law_csv(const std::string& path, const PowerLawResult& r);

}  // namespace cknn
