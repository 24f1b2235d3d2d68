#include "ccert/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace ccert {

void require_square(const Eigen::MatrixXd& A, const char* what) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument(std::string(what) + ": expected a square matrix, got " +
                                std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  }
}

SpectralSummary spectral_summary(const Eigen::MatrixXd& A) {
  require_square(A, "spectral_summary");
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("spectral_summary: eigenvalue iteration did not converge");
  }
  SpectralSummary s{0.0, -std::numeric_limits<double>::infinity()};
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const std::complex<double> lam = es.eigenvalues()(i);
    s.rho = std::max(s.rho, std::abs(lam));
    s.alpha = std::max(s.alpha, lam.real());
  }
  return s;
}

double lambda_max_sym(const Eigen::MatrixXd& S) {
  require_square(S, "lambda_max_sym");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("lambda_max_sym: eigenvalue iteration did not converge");
  }
  return es.eigenvalues().maxCoeff();
}

double lambda_min_sym(const Eigen::MatrixXd& S) { return -lambda_max_sym(-S); }

bool is_psd(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()),
                                                    Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  return lmin >= -1e-9 * (1.0 + std::abs(lmax));
}

bool is_nsd(const Eigen::MatrixXd& S) { return is_psd(-S); }

bool is_spd(const Eigen::MatrixXd& S) {
  if (!is_square(S)) return false;
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > 0.0;
}

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spd_eigs(const Eigen::MatrixXd& P,
                                                        const char* what) {
  require_square(P, what);
  const double scale = std::max(1.0, P.cwiseAbs().maxCoeff());
  if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument(std::string(what) + ": weight matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (P + P.transpose()));
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument(std::string(what) + ": weight matrix is not positive definite");
  }
  return es;
}

}  // namespace

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& P) {
  auto es = spd_eigs(P, "symmetric_sqrt");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

Eigen::MatrixXd symmetric_sqrt_inv(const Eigen::MatrixXd& P) {
  auto es = spd_eigs(P, "symmetric_sqrt_inv");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

// A^T X + X A + Q = 0.  With A = U T U^* (complex Schur) and Y = U^* X U,
// F = U^* Q U this becomes T^H Y + Y T + F = 0, solved column by column:
// (T^H + T_kk I) Y_k = -F_k - sum_{j<k} Y_j T_jk, a lower-triangular solve.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
  require_square(A, "solve_lyapunov");
  if (A.rows() != Q.rows() || A.cols() != Q.cols()) {
    throw std::invalid_argument("solve_lyapunov: A and Q must have equal size");
  }
  const Eigen::Index n = A.rows();

  Eigen::ComplexSchur<Eigen::MatrixXd> schur(A, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("solve_lyapunov: Schur decomposition failed");
  }
  const Eigen::MatrixXcd& T = schur.matrixT();
  const Eigen::MatrixXcd& U = schur.matrixU();

  const Eigen::MatrixXcd TH = T.adjoint();  // lower triangular
  const Eigen::MatrixXcd F = U.adjoint() * Q * U;
  Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(n, n);

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXcd rhs = -F.col(k);
    for (Eigen::Index j = 0; j < k; ++j) rhs -= Y.col(j) * T(j, k);
    Eigen::MatrixXcd L = TH;
    L.diagonal().array() += T(k, k);
    const double dmin = L.diagonal().cwiseAbs().minCoeff();
    if (dmin < 1e-14 * (1.0 + T.cwiseAbs().maxCoeff())) {
      throw std::runtime_error(
          "solve_lyapunov: singular equation (eigenvalue pair summing to zero)");
    }
    Y.col(k) = L.triangularView<Eigen::Lower>().solve(rhs);
  }

  Eigen::MatrixXd X = (U * Y * U.adjoint()).real();
  return 0.5 * (X + X.transpose());
}

}  // namespace ccert
