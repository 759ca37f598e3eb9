#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cknn/geometry.hpp"

namespace cknn {

enum class KernelShape { Gaussian, Indicator };  // exp(-x/2) and 1{x<1}

double kernel_value(KernelShape shape, double x);

struct MomentConstants {
  int m;
  double m0, m2, m22, a;
};

MomentConstants moment_constants(int m, KernelShape shape);

enum class Geometry { SamplingMeasure, Embedding, InverseSampling };

/// Exponent beta with rho = q^beta for the given geometry.
double geometry_beta(Geometry g, int m);

struct GeometryWeights {
  BandwidthProfile rho;
  std::vector<double> mu;
};

GeometryWeights geometry_weights(const DensityValues& q, int m, Geometry g);

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, long>;

/// W_ij = h(d_ij^2 / (delta^2 rho_i rho_j)) for i != j, W_ii = 0. Zero
/// entries are not stored.
SparseMatrix kernel_matrix(const DistanceMatrix& d, const BandwidthProfile& rho, double delta,
                           KernelShape shape);

/// D - W. Throws ContractError if W is not symmetric.
SparseMatrix unnormalized_laplacian(const SparseMatrix& w);

struct LaplacianSystem {
  SparseMatrix W;
  Eigen::VectorXd degree;
  Eigen::VectorXd mu;  // diagonal of M
  double c = 1.0;
  double delta = 1.0;
  int m = 1;
  KernelShape shape = KernelShape::Indicator;

  std::size_t size() const { return static_cast<std::size_t>(degree.size()); }
  /// L_un f.
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const;
  /// c^{-1} L_un as a sparse matrix.
  SparseMatrix scaled_laplacian() const;
};

/// c = (m2/2) (N-1) delta^(m+2) * density_scale. density_scale is the
/// constant density value when sampling is known to be uniform (e.g.
/// 1/(2 pi) on the unit circle), so that c^{-1} L_un targets the
/// Laplace-Beltrami operator itself; leave it at 1 otherwise.
double normalization_constant(const MomentConstants& mc, std::size_t n, double delta,
                              double density_scale = 1.0);

/// Builds kernel, degrees and c. mu defaults to all ones.
LaplacianSystem laplacian_system(const DistanceMatrix& d, const BandwidthProfile& rho,
                                 double delta, KernelShape shape, int m,
                                 std::vector<double> mu = {}, double density_scale = 1.0);

/// Wraps an existing kernel matrix (e.g. 0/1 adjacency) with explicit c.
LaplacianSystem laplacian_from_kernel(SparseMatrix w, double c, std::vector<double> mu = {});

/// c^{-1} L_un f.
Eigen::VectorXd pointwise_estimate(const LaplacianSystem& sys, const Eigen::VectorXd& f);

struct SpectrumOptions {
  bool vectors = false;
  std::size_t dense_limit = 1500;  // above this, sparse shift-invert iteration
  double tolerance = 1e-10;
  int max_iterations = 500;
};

struct Spectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns M-orthonormal, empty unless requested
};

/// Smallest n_eigs solutions of c^{-1} L_un v = lambda M v.
Spectrum spectrum(const LaplacianSystem& sys, std::size_t n_eigs, const SpectrumOptions& opt = {});

/// Eigenvalues at most rel_threshold * max(|lambda|) (absolute when all are 0).
std::size_t zero_eigenvalue_count(const Eigen::VectorXd& values, double rel_threshold = 1e-8);

// Smallest eigenpairs of a symmetric positive semidefinite sparse matrix.
Spectrum smallest_eigenpairs_sparse(const SparseMatrix& a, std::size_t n_eigs,
                                    const SpectrumOptions& opt);

}  // namespace cknn
