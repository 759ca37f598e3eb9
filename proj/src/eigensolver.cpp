// Block shift-invert subspace iteration with Rayleigh-Ritz projection for the
// low end of a sparse symmetric PSD spectrum.

#include <algorithm>
#include <cmath>

#include <Eigen/CholmodSupport>

#include "cknn/error.hpp"
#include "cknn/rng.hpp"
#include "cknn/spectral.hpp"

namespace cknn {

static Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

Spectrum smallest_eigenpairs_sparse(const SparseMatrix& a, std::size_t n_eigs,
                                    const SpectrumOptions& opt) {
  const long n = a.rows();
  const long want = static_cast<long>(n_eigs);
  const long p = std::min<long>(n, std::max<long>(2 * want + 5, want + 10));

  double norm_est = 0.0, diag_mean = 0.0;
  for (long j = 0; j < n; ++j) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(a, j); it; ++it) {
      col += std::abs(it.value());
      if (it.row() == j) diag_mean += it.value();
    }
    norm_est = std::max(norm_est, col);
  }
  diag_mean /= static_cast<double>(n);
  const double shift = diag_mean > 0.0 ? 1e-4 * diag_mean : 1e-4;

  SparseMatrix shifted = a;
  for (long j = 0; j < n; ++j) shifted.coeffRef(j, j) += shift;
  // AMD's default treats rows longer than 10 sqrt(n) as dense and orders them
  // last, which fills the factor completely once the bandwidth is large.
  Eigen::CholmodDecomposition<SparseMatrix> solver;
  solver.setMode(Eigen::CholmodLDLt);
  solver.cholmod().nmethods = 1;
  solver.cholmod().method[0].ordering = CHOLMOD_AMD;
  solver.cholmod().method[0].prune_dense = -1;
  solver.compute(shifted);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::Contract, "sparse factorization failed (matrix not positive semidefinite?)");

  Rng rng(0x5eed, 7);
  Eigen::MatrixXd x(n, p);
  for (long j = 0; j < p; ++j)
    for (long i = 0; i < n; ++i) x(i, j) = rng.normal();
  x = orthonormalize(x);

  const double tol = opt.tolerance * std::max(norm_est, 1.0);
  Eigen::VectorXd theta;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    Eigen::MatrixXd y = solver.solve(x);
    Eigen::MatrixXd q = orthonormalize(y);
    Eigen::MatrixXd aq = a * q;
    Eigen::MatrixXd h = q.transpose() * aq;
    h = (h + h.transpose()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    theta = es.eigenvalues();
    x = q * es.eigenvectors();
    Eigen::MatrixXd ax = aq * es.eigenvectors();
    double worst = 0.0;
    for (long k = 0; k < want; ++k)
      worst = std::max(worst, (ax.col(k) - theta[k] * x.col(k)).norm());
    if (worst <= tol) break;
  }
  Spectrum out;
  out.values = theta.head(want);
  if (opt.vectors) out.vectors = x.leftCols(want);
  return out;
}

}  // namespace cknn
