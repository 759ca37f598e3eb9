#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cknn {

/// N points in R^n, stored row-major. Immutable once built.
class PointCloud {
 public:
  /// `coords` holds size*dim values, point i at [i*dim, (i+1)*dim).
  /// Throws InvalidInput on empty input, ragged size or non-finite values.
  PointCloud(std::vector<double> coords, std::size_t dim,
             std::optional<int> intrinsic_dim = std::nullopt);

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows,
                              std::optional<int> intrinsic_dim = std::nullopt);

  std::size_t size() const noexcept { return coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  std::optional<int> intrinsic_dim_hint() const noexcept { return intrinsic_dim_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> data() const noexcept { return coords_; }

  PointCloud scaled(double s) const;
  /// Point `order[i]` of this cloud becomes point i of the result.
  PointCloud permuted(std::span<const std::size_t> order) const;

 private:
  std::vector<double> coords_;
  std::size_t dim_;
  std::optional<int> intrinsic_dim_;
};

/// Dense symmetric N x N matrix of Euclidean distances with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// Takes ownership of a row-major n*n buffer; validated for symmetry,
  /// zero diagonal and nonnegativity.
  DistanceMatrix(std::size_t n, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return d_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }

 private:
  friend DistanceMatrix pairwise_distances(const PointCloud&);
  struct Unchecked {};
  DistanceMatrix(Unchecked, std::size_t n, std::vector<double> values)
      : n_(n), d_(std::move(values)) {}

  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Per-point local scale rho(i) > 0.
struct BandwidthProfile {
  std::vector<double> rho;
  enum class Source { Knn, AnalyticPower, Constant } source = Source::Constant;
  int k = 0;          // for Source::Knn
  double beta = 0.0;  // for Source::AnalyticPower

  std::size_t size() const noexcept { return rho.size(); }
  static BandwidthProfile constant(std::size_t n, double value = 1.0);
};

/// Sampling density evaluated at each point.
struct DensityValues {
  std::vector<double> q;
  std::size_t size() const noexcept { return q.size(); }
};

DistanceMatrix pairwise_distances(const PointCloud& cloud);

/// Distance to the k-th nearest neighbour, excluding the point itself.
/// Throws InvalidParameter if k is not in [1, N-1] and DegenerateBandwidth if
/// any rho(i) is zero.
BandwidthProfile knn_bandwidth(const DistanceMatrix& d, int k);

/// Same selection as knn_bandwidth, but zero distances are allowed.
std::vector<double> kth_neighbor_distances(const DistanceMatrix& d, int k);

/// rho(i) = q(i)^beta.
BandwidthProfile analytic_bandwidth(const DensityValues& q, double beta);

}  // namespace cknn
