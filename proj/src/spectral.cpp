#include "cknn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cknn/error.hpp"

namespace cknn {

double kernel_value(KernelShape shape, double x) {
  return shape == KernelShape::Gaussian ? std::exp(-x / 2.0) : (x < 1.0 ? 1.0 : 0.0);
}

MomentConstants moment_constants(int m, KernelShape shape) {
  if (m < 1) throw InvalidParameter("intrinsic dimension must be at least 1");
  const double pi = std::numbers::pi;
  const double half = m / 2.0;
  MomentConstants mc{m, 0, 0, 0, 0};
  if (shape == KernelShape::Gaussian) {
    mc.m0 = std::pow(2.0 * pi, half);
    mc.m2 = mc.m0;
    mc.m22 = std::pow(pi, half) / 2.0;
  } else {
    const double vol = std::pow(pi, half) / std::tgamma(half + 1.0);
    mc.m0 = vol;
    mc.m2 = vol / (m + 2);
    mc.m22 = mc.m2;
  }
  mc.a = 4.0 * mc.m22 / (mc.m2 * mc.m2);
  return mc;
}

double geometry_beta(Geometry g, int m) {
  if (m < 1) throw InvalidParameter("intrinsic dimension must be at least 1");
  switch (g) {
    case Geometry::SamplingMeasure: return -1.0 / m;
    case Geometry::Embedding: return -2.0 / (m + 2);
    case Geometry::InverseSampling: return -0.5;
  }
  throw InvalidParameter("unknown geometry");
}

GeometryWeights geometry_weights(const DensityValues& q, int m, Geometry g) {
  GeometryWeights out;
  out.rho = analytic_bandwidth(q, geometry_beta(g, m));
  out.mu.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    switch (g) {
      case Geometry::SamplingMeasure: out.mu[i] = 1.0; break;
      case Geometry::Embedding: out.mu[i] = 1.0 / q.q[i]; break;
      case Geometry::InverseSampling: out.mu[i] = std::pow(q.q[i], m / 2.0 + 1.0); break;
    }
  }
  return out;
}

SparseMatrix kernel_matrix(const DistanceMatrix& d, const BandwidthProfile& rho, double delta,
                           KernelShape shape) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidParameter("delta must be positive");
  const std::size_t n = d.size();
  if (rho.size() != n) throw ContractError("bandwidth profile length differs from point count");
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rho.rho[i] > 0.0))
      throw DegenerateBandwidth(i, "bandwidth is not positive at point " + std::to_string(i));
    s[i] = std::sqrt(rho.rho[i]);
  }
  // Column-wise assembly; the ratio is formed exactly as in cknn_filtration
  // so the indicator kernel reproduces that graph bit for bit.
  std::vector<Eigen::Triplet<double, long>> trip;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      const std::size_t a = std::min(i, j), b = std::max(i, j);
      const double r = d(a, b) / (s[a] * s[b]);
      double w;
      if (shape == KernelShape::Indicator) {
        w = r < delta ? 1.0 : 0.0;
      } else {
        const double x = r / delta;
        w = std::exp(-x * x / 2.0);
      }
      if (w != 0.0) trip.emplace_back(static_cast<long>(i), static_cast<long>(j), w);
    }
  }
  SparseMatrix w(static_cast<long>(n), static_cast<long>(n));
  w.setFromTriplets(trip.begin(), trip.end());
  return w;
}

static void check_symmetric(const SparseMatrix& w) {
  if (w.rows() != w.cols()) throw ContractError("kernel matrix is not square");
  SparseMatrix t = w.transpose();
  SparseMatrix diff = w - t;
  diff.prune(0.0);
  if (diff.nonZeros() != 0) throw ContractError("kernel matrix is not symmetric");
}

SparseMatrix unnormalized_laplacian(const SparseMatrix& w) {
  check_symmetric(w);
  const long n = w.rows();
  std::vector<Eigen::Triplet<double, long>> trip;
  trip.reserve(static_cast<std::size_t>(w.nonZeros() + n));
  for (long j = 0; j < n; ++j) {
    double deg = 0.0;
    for (SparseMatrix::InnerIterator it(w, j); it; ++it) {
      if (it.row() == j) continue;
      deg += it.value();
      trip.emplace_back(it.row(), j, -it.value());
    }
    trip.emplace_back(j, j, deg);
  }
  SparseMatrix l(n, n);
  l.setFromTriplets(trip.begin(), trip.end());
  return l;
}

double normalization_constant(const MomentConstants& mc, std::size_t n, double delta,
                              double density_scale) {
  if (!(delta > 0.0)) throw InvalidParameter("delta must be positive");
  if (!(density_scale > 0.0)) throw InvalidParameter("density scale must be positive");
  if (n < 2) throw InvalidParameter("normalization needs at least two points");
  return mc.m2 / 2.0 * static_cast<double>(n - 1) * std::pow(delta, mc.m + 2) * density_scale;
}

static Eigen::VectorXd mu_vector(std::vector<double> mu, std::size_t n) {
  Eigen::VectorXd out = Eigen::VectorXd::Ones(static_cast<long>(n));
  if (mu.empty()) return out;
  if (mu.size() != n) throw ContractError("weight vector length differs from point count");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(mu[i] > 0.0) || !std::isfinite(mu[i]))
      throw InvalidInput("spectral weights must be positive (index " + std::to_string(i) + ")");
    out[static_cast<long>(i)] = mu[i];
  }
  return out;
}

LaplacianSystem laplacian_from_kernel(SparseMatrix w, double c, std::vector<double> mu) {
  check_symmetric(w);
  if (!(c > 0.0)) throw InvalidParameter("normalization constant must be positive");
  LaplacianSystem sys;
  const long n = w.rows();
  // Diagonal entries carry no information for D - W; drop them.
  w.prune([](long r, long c2, double) { return r != c2; });
  sys.W = std::move(w);
  sys.degree = Eigen::VectorXd::Zero(n);
  for (long j = 0; j < n; ++j)
    for (SparseMatrix::InnerIterator it(sys.W, j); it; ++it) sys.degree[j] += it.value();
  sys.mu = mu_vector(std::move(mu), static_cast<std::size_t>(n));
  sys.c = c;
  return sys;
}

LaplacianSystem laplacian_system(const DistanceMatrix& d, const BandwidthProfile& rho,
                                 double delta, KernelShape shape, int m, std::vector<double> mu,
                                 double density_scale) {
  const auto mc = moment_constants(m, shape);
  const double c = normalization_constant(mc, d.size(), delta, density_scale);
  auto sys = laplacian_from_kernel(kernel_matrix(d, rho, delta, shape), c, std::move(mu));
  sys.delta = delta;
  sys.m = m;
  sys.shape = shape;
  return sys;
}

Eigen::VectorXd LaplacianSystem::apply(const Eigen::VectorXd& f) const {
  if (f.size() != degree.size()) throw ContractError("vector length differs from system size");
  Eigen::VectorXd out = degree.cwiseProduct(f);
  out.noalias() -= W * f;
  return out;
}

SparseMatrix LaplacianSystem::scaled_laplacian() const {
  SparseMatrix l = unnormalized_laplacian(W);
  l /= c;
  return l;
}

Eigen::VectorXd pointwise_estimate(const LaplacianSystem& sys, const Eigen::VectorXd& f) {
  return sys.apply(f) / sys.c;
}

Spectrum spectrum(const LaplacianSystem& sys, std::size_t n_eigs, const SpectrumOptions& opt) {
  const std::size_t n = sys.size();
  if (n_eigs == 0 || n_eigs > n)
    throw InvalidParameter("number of eigenvalues must be in [1, N] (got " +
                           std::to_string(n_eigs) + ", N=" + std::to_string(n) + ")");
  const Eigen::VectorXd s = sys.mu.cwiseSqrt().cwiseInverse();
  // B = M^{-1/2} c^{-1} L M^{-1/2}
  SparseMatrix b = sys.scaled_laplacian();
  b = s.asDiagonal() * b * s.asDiagonal();
  Spectrum out;
  if (n <= opt.dense_limit || n_eigs * 4 >= n) {
    Eigen::MatrixXd dense(b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        dense, opt.vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::Contract, "dense eigensolver failed");
    out.values = es.eigenvalues().head(static_cast<long>(n_eigs));
    if (opt.vectors) out.vectors = es.eigenvectors().leftCols(static_cast<long>(n_eigs));
  } else {
    out = smallest_eigenpairs_sparse(b, n_eigs, opt);
  }
  if (opt.vectors) out.vectors = s.asDiagonal() * out.vectors;
  return out;
}

std::size_t zero_eigenvalue_count(const Eigen::VectorXd& values, double rel_threshold) {
  if (values.size() == 0) return 0;
  const double scale = values.cwiseAbs().maxCoeff();
  const double thr = scale > 0.0 ? rel_threshold * scale : rel_threshold;
  std::size_t k = 0;
  for (long i = 0; i < values.size(); ++i)
    if (std::abs(values[i]) <= thr) ++k;
  return k;
}

}  // namespace cknn
