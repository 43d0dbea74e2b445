#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace ghostlab::linalg {

using Complex = std::complex<double>;

struct HermitianEig {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns match values
};

/// Full eigendecomposition of a Hermitian matrix. Routes real-symmetric
/// input through the real LAPACK driver (dsyevd), everything else through
/// zheevd. The input is checked for Hermiticity up to `herm_tol` first.
HermitianEig hermitian_eig(const Eigen::MatrixXcd& a, double herm_tol = 1e-10);

/// Eigenvalues only (ascending). Same routing as hermitian_eig.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a,
                                      double herm_tol = 1e-10);

/// Real-symmetric convenience entry points.
HermitianEig symmetric_eig(const Eigen::MatrixXd& a);
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);

/// Largest algebraic eigenvalue of a symmetric operator given only as a
/// mat-vec, after deflating the normalized all-ones vector. Lanczos with
/// full reorthogonalization and a fixed seed, so repeated runs agree to
/// the bit. Used for Cayley spectra too large for dense solvers.
double top_eigenvalue_ones_deflated(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
    Eigen::Index n, int max_steps = 400, double tol = 1e-12);

/// Spectral norm of a (not necessarily Hermitian) complex matrix. Dense
/// singular-value path for small inputs, power iteration on A*A beyond.
double operator_norm(const Eigen::MatrixXcd& a);

/// max |a_ij|.
double entrywise_norm(const Eigen::MatrixXcd& a);

/// True when every entry has zero imaginary part (exact comparison; the
/// pipeline produces exactly real matrices whenever the inputs are real).
bool is_exactly_real(const Eigen::MatrixXcd& a);

}  // namespace ghostlab::linalg
