#include "ghostlab/linalg.hpp"

#include <cmath>
#include <random>

#include "ghostlab/errors.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace ghostlab::linalg {

namespace {

void check_square(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) {
    fail(ErrorCode::InvalidArgument, "matrix is not square");
  }
}

double hermiticity_defect(const Eigen::MatrixXcd& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEig real_path(Eigen::MatrixXd a, bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N',
                                   'L', n, a.data(), n, w.data());
  if (info != 0) {
    fail(ErrorCode::InvalidArgument,
         "dsyevd failed with info=" + std::to_string(info));
  }
  HermitianEig out;
  out.values = std::move(w);
  if (want_vectors) out.vectors = a.cast<Complex>();
  return out;
}

HermitianEig complex_path(Eigen::MatrixXcd a, bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N',
                                   'L', n, a.data(), n, w.data());
  if (info != 0) {
    fail(ErrorCode::InvalidArgument,
         "zheevd failed with info=" + std::to_string(info));
  }
  HermitianEig out;
  out.values = std::move(w);
  if (want_vectors) out.vectors = std::move(a);
  return out;
}

HermitianEig dispatch(const Eigen::MatrixXcd& a, bool want_vectors,
                      double herm_tol) {
  check_square(a);
  if (a.rows() == 0) {
    return {Eigen::VectorXd(0), want_vectors ? Eigen::MatrixXcd(0, 0)
                                             : Eigen::MatrixXcd()};
  }
  const double defect = hermiticity_defect(a);
  if (defect > herm_tol) {
    fail(ErrorCode::InvalidArgument,
         "matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  if (is_exactly_real(a)) {
    // Symmetrize so rounding in the strict triangle cannot leak through.
    Eigen::MatrixXd re = a.real();
    re = 0.5 * (re + re.transpose()).eval();
    return real_path(std::move(re), want_vectors);
  }
  Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
  return complex_path(std::move(h), want_vectors);
}

}  // namespace

bool is_exactly_real(const Eigen::MatrixXcd& a) {
  const Complex* p = a.data();
  const Eigen::Index n = a.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p[i].imag() != 0.0) return false;
  }
  return true;
}

HermitianEig hermitian_eig(const Eigen::MatrixXcd& a, double herm_tol) {
  return dispatch(a, true, herm_tol);
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a,
                                      double herm_tol) {
  return dispatch(a, false, herm_tol).values;
}

HermitianEig symmetric_eig(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    fail(ErrorCode::InvalidArgument, "matrix is not square");
  }
  Eigen::MatrixXd s = 0.5 * (a + a.transpose());
  return real_path(std::move(s), true);
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    fail(ErrorCode::InvalidArgument, "matrix is not square");
  }
  Eigen::MatrixXd s = 0.5 * (a + a.transpose());
  return real_path(std::move(s), false).values;
}

double top_eigenvalue_ones_deflated(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
    Eigen::Index n, int max_steps, double tol) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "need dimension >= 2");
  const int m = static_cast<int>(std::min<Eigen::Index>(max_steps, n - 1));

  const Eigen::VectorXd ones =
      Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = gauss(rng);
  v -= ones.dot(v) * ones;
  v.normalize();

  Eigen::MatrixXd basis(n, m);
  Eigen::VectorXd alpha(m), beta(m);
  Eigen::VectorXd w(n);

  basis.col(0) = v;
  double theta = 0.0;
  int steps = 0;
  for (int j = 0; j < m; ++j) {
    apply(basis.col(j), w);
    w -= ones.dot(w) * ones;
    alpha[j] = basis.col(j).dot(w);
    w -= alpha[j] * basis.col(j);
    if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
    // Full reorthogonalization, twice; keeps the Krylov basis clean enough
    // that spurious copies of converged Ritz values cannot appear.
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd coeff = basis.leftCols(j + 1).transpose() * w;
      w -= basis.leftCols(j + 1) * coeff;
      w -= ones.dot(w) * ones;
    }
    beta[j] = w.norm();
    steps = j + 1;

    const bool breakdown = beta[j] < 1e-13;
    const bool check = breakdown || j == m - 1 || (j >= 8 && j % 5 == 0);
    if (check) {
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
      for (int i = 0; i < steps; ++i) {
        tri(i, i) = alpha[i];
        if (i + 1 < steps) {
          tri(i, i + 1) = beta[i];
          tri(i + 1, i) = beta[i];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
      const int top = steps - 1;
      theta = es.eigenvalues()[top];
      const double resid = std::abs(beta[j] * es.eigenvectors()(steps - 1, top));
      if (breakdown || resid <= tol * std::max(1.0, std::abs(theta))) {
        return theta;
      }
    }
    if (breakdown) return theta;
    if (j + 1 < m) basis.col(j + 1) = w / beta[j];
  }
  return theta;
}

double operator_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  const Eigen::Index n = std::max(a.rows(), a.cols());
  if (a.rows() == a.cols() && hermiticity_defect(a) <= 1e-12 && n <= 1200) {
    Eigen::VectorXd ev = hermitian_eigenvalues(a, 1e-11);
    return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  }
  // Power iteration on A*A with a fixed start; the Frobenius norm caps the
  // result, so early exit when the whole matrix is already tiny.
  const double frob = a.norm();
  if (frob == 0.0) return 0.0;
  std::mt19937_64 rng(0x2545f4914f6cdd1dULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd x(a.cols());
  for (Eigen::Index i = 0; i < a.cols(); ++i) x[i] = Complex(gauss(rng), 0.0);
  x.normalize();
  double prev = 0.0;
  for (int it = 0; it < 600; ++it) {
    Eigen::VectorXcd y = a * x;
    Eigen::VectorXcd z = a.adjoint() * y;
    const double zn = z.norm();
    if (zn == 0.0) return 0.0;
    const double est = std::sqrt(zn);
    x = z / zn;
    if (it > 4 && std::abs(est - prev) <= 1e-11 * std::max(1.0, est)) {
      return est;
    }
    prev = est;
  }
  return prev;
}

double entrywise_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

}  // namespace ghostlab::linalg
