#include "cknn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cknn/error.hpp"

namespace cknn {

PointCloud::PointCloud(std::vector<double> coords, std::size_t dim,
                       std::optional<int> intrinsic_dim)
    : coords_(std::move(coords)), dim_(dim), intrinsic_dim_(intrinsic_dim) {
  if (dim_ == 0) throw InvalidInput("point cloud: ambient dimension must be positive");
  if (coords_.empty()) throw InvalidInput("point cloud: no points");
  if (coords_.size() % dim_ != 0)
    throw InvalidInput("point cloud: coordinate count is not a multiple of the dimension");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i]))
      throw InvalidInput("point cloud: non-finite coordinate at point " +
                         std::to_string(i / dim_));
  }
  if (intrinsic_dim_ && *intrinsic_dim_ < 1)
    throw InvalidInput("point cloud: intrinsic dimension hint must be positive");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows,
                                 std::optional<int> intrinsic_dim) {
  if (rows.empty()) throw InvalidInput("point cloud: no points");
  const std::size_t dim = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim)
      throw InvalidInput("point cloud: row " + std::to_string(i) + " has " +
                         std::to_string(rows[i].size()) + " coordinates, expected " +
                         std::to_string(dim));
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return PointCloud(std::move(flat), dim, intrinsic_dim);
}

PointCloud PointCloud::scaled(double s) const {
  std::vector<double> out(coords_);
  for (double& x : out) x *= s;
  return PointCloud(std::move(out), dim_, intrinsic_dim_);
}

PointCloud PointCloud::permuted(std::span<const std::size_t> order) const {
  if (order.size() != size()) throw InvalidParameter("permutation length mismatch");
  std::vector<double> out;
  out.reserve(coords_.size());
  for (std::size_t src : order) {
    if (src >= size()) throw InvalidParameter("permutation index out of range");
    auto p = point(src);
    out.insert(out.end(), p.begin(), p.end());
  }
  return PointCloud(std::move(out), dim_, intrinsic_dim_);
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> values)
    : n_(n), d_(std::move(values)) {
  if (d_.size() != n_ * n_) throw InvalidInput("distance matrix: expected n*n entries");
  for (std::size_t i = 0; i < n_; ++i) {
    if (d_[i * n_ + i] != 0.0) throw InvalidInput("distance matrix: nonzero diagonal");
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double a = d_[i * n_ + j];
      if (!std::isfinite(a) || a < 0.0)
        throw InvalidInput("distance matrix: entries must be finite and nonnegative");
      if (a != d_[j * n_ + i]) throw InvalidInput("distance matrix: not symmetric");
    }
  }
}

BandwidthProfile BandwidthProfile::constant(std::size_t n, double value) {
  if (!(value > 0.0)) throw InvalidParameter("constant bandwidth must be positive");
  BandwidthProfile b;
  b.rho.assign(n, value);
  b.source = Source::Constant;
  return b;
}

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  const std::size_t dim = cloud.dim();
  std::vector<double> d(n * n, 0.0);
  const double* x = cloud.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x + i * dim;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* xj = x + j * dim;
      double s = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double t = xi[c] - xj[c];
        s += t * t;
      }
      const double v = std::sqrt(s);
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  }
  return DistanceMatrix(DistanceMatrix::Unchecked{}, n, std::move(d));
}

std::vector<double> kth_neighbor_distances(const DistanceMatrix& d, int k) {
  const std::size_t n = d.size();
  if (k < 1 || static_cast<std::size_t>(k) >= n)
    throw InvalidParameter("k must satisfy 1 <= k <= N-1 (k=" + std::to_string(k) +
                           ", N=" + std::to_string(n) + ")");
  std::vector<double> out(n);
  std::vector<double> buf;
  buf.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    buf.clear();
    auto row = d.row(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) buf.push_back(row[j]);
    // The k-th smallest value does not depend on how equal distances are
    // ordered, so the index tie-break is implicit.
    std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end());
    out[i] = buf[k - 1];
  }
  return out;
}

BandwidthProfile knn_bandwidth(const DistanceMatrix& d, int k) {
  BandwidthProfile b;
  b.rho = kth_neighbor_distances(d, k);
  b.source = BandwidthProfile::Source::Knn;
  b.k = k;
  for (std::size_t i = 0; i < b.rho.size(); ++i) {
    if (!(b.rho[i] > 0.0))
      throw DegenerateBandwidth(
          i, "knn bandwidth is zero at point " + std::to_string(i) + " (k=" +
                 std::to_string(k) + "): at least k duplicates of this point exist");
  }
  return b;
}

BandwidthProfile analytic_bandwidth(const DensityValues& q, double beta) {
  if (!std::isfinite(beta)) throw InvalidParameter("beta must be finite");
  BandwidthProfile b;
  b.rho.resize(q.size());
  b.source = BandwidthProfile::Source::AnalyticPower;
  b.beta = beta;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q.q[i] > 0.0) || !std::isfinite(q.q[i]))
      throw InvalidInput("density must be positive and finite (index " + std::to_string(i) +
                         ")");
    b.rho[i] = std::pow(q.q[i], beta);
    if (!(b.rho[i] > 0.0) || !std::isfinite(b.rho[i]))
      throw DegenerateBandwidth(i, "analytic bandwidth under/overflowed at index " +
                                       std::to_string(i));
  }
  return b;
}

}  // namespace cknn
