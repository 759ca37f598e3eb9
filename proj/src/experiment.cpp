#include "cknn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "cknn/datagen.hpp"
#include "cknn/error.hpp"
#include "cknn/io.hpp"

namespace cknn {

const char* mode_name(EstimateMode m) {
  return m == EstimateMode::Pointwise ? "pointwise" : "spectral";
}

static constexpr double kCircleDensity = 1.0 / (2.0 * std::numbers::pi);

double circle_pointwise_rmse(const DistanceMatrix& d, const std::vector<double>& theta,
                             double delta, KernelShape shape) {
  const std::size_t n = d.size();
  auto sys = laplacian_system(d, BandwidthProfile::constant(n), delta, shape, 1, {}, kCircleDensity);
  Eigen::VectorXd f(static_cast<long>(n));
  for (std::size_t i = 0; i < n; ++i) f[static_cast<long>(i)] = std::sin(theta[i]);
  // L_un is positive semidefinite, so it targets +sin for this f.
  const Eigen::VectorXd err = pointwise_estimate(sys, f) - f;
  return std::sqrt(err.squaredNorm() / static_cast<double>(n));
}

double circle_spectral_rmse(const DistanceMatrix& d, double delta, KernelShape shape) {
  const std::size_t n = d.size();
  auto sys = laplacian_system(d, BandwidthProfile::constant(n), delta, shape, 1, {}, kCircleDensity);
  const auto spec = spectrum(sys, 5);
  const double target[5] = {0.0, 1.0, 1.0, 4.0, 4.0};
  double s = 0.0;
  for (int k = 0; k < 5; ++k) s += (spec.values[k] - target[k]) * (spec.values[k] - target[k]);
  return std::sqrt(s / 5.0);
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw InvalidParameter("invalid log grid");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                                       static_cast<double>(count - 1));
  return g;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidParameter("slope needs two or more points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]) - mx;
    sxy += a * (std::log(y[i]) - my);
    sxx += a * a;
  }
  return sxy / sxx;
}

double refined_argmin(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t k = static_cast<std::size_t>(std::min_element(y.begin(), y.end()) - y.begin());
  if (k == 0 || k + 1 == x.size()) return x[k];
  const double x0 = std::log(x[k - 1]), x1 = std::log(x[k]), x2 = std::log(x[k + 1]);
  const double y0 = std::log(y[k - 1]), y1 = std::log(y[k]), y2 = std::log(y[k + 1]);
  const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  if (!(a > 0.0)) return x[k];
  const double xm = std::clamp(-b / (2.0 * a), x0, x2);
  return std::exp(xm);
}

PowerLawResult run_power_law_experiment(const PowerLawConfig& cfg) {
  if (cfg.n_list.empty() || cfg.seeds.empty())
    throw InvalidParameter("experiment needs at least one N and one seed");
  if (cfg.spectral_grid.empty() && cfg.pointwise_grid.empty())
    throw InvalidParameter("experiment needs a delta grid");
  for (auto n : cfg.n_list)
    if (n < 6) throw InvalidParameter("experiment needs N >= 6");

  struct Task {
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (auto n : cfg.n_list)
    for (auto s : cfg.seeds) tasks.push_back({n, s});

  std::vector<std::vector<PowerLawRow>> per_task(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr failure;
  auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      try {
        const auto data = gen_uniform_circle(tasks[t].n, tasks[t].seed);
        const auto d = pairwise_distances(data.points);
        auto& rows = per_task[t];
        for (double delta : cfg.pointwise_grid)
          rows.push_back({tasks[t].n, delta, tasks[t].seed, EstimateMode::Pointwise,
                          circle_pointwise_rmse(d, data.latent, delta, cfg.shape)});
        for (double delta : cfg.spectral_grid)
          rows.push_back({tasks[t].n, delta, tasks[t].seed, EstimateMode::Spectral,
                          circle_spectral_rmse(d, delta, cfg.shape)});
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  PowerLawResult res;
  for (auto& rows : per_task) res.rows.insert(res.rows.end(), rows.begin(), rows.end());

  auto summarize = [&](EstimateMode mode, const std::vector<double>& grid,
                       std::vector<PowerLawBest>& out) {
    if (grid.empty()) return;
    for (auto n : cfg.n_list) {
      std::vector<double> mean(grid.size(), 0.0);
      for (const auto& r : res.rows) {
        if (r.n != n || r.mode != mode) continue;
        const auto g = static_cast<std::size_t>(std::find(grid.begin(), grid.end(), r.delta) - grid.begin());
        mean[g] += r.rmse / static_cast<double>(cfg.seeds.size());
      }
      const auto k = static_cast<std::size_t>(std::min_element(mean.begin(), mean.end()) - mean.begin());
      out.push_back({n, refined_argmin(grid, mean), mean[k]});
    }
  };
  summarize(EstimateMode::Spectral, cfg.spectral_grid, res.spectral);
  summarize(EstimateMode::Pointwise, cfg.pointwise_grid, res.pointwise);

  auto slope = [&](const std::vector<PowerLawBest>& best) {
    if (best.size() < 2) return 0.0;
    std::vector<double> x, y;
    for (const auto& b : best) {
      x.push_back(static_cast<double>(b.n));
      y.push_back(b.best_delta);
    }
    return loglog_slope(x, y);
  };
  res.spectral_slope = slope(res.spectral);
  res.pointwise_slope = slope(res.pointwise);
  return res;
}

void write_power_law_csv(const std::string& path, const PowerLawResult& r) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "N,delta,seed,mode,rmse\n";
  for (const auto& row : r.rows)
    out << row.n << ',' << format_double(row.delta) << ',' << row.seed << ',' << mode_name(row.mode)
        << ',' << format_double(row.rmse) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace cknn
