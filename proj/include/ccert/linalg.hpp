#pragma once

#include <Eigen/Dense>

namespace ccert {

/// Spectral radius and spectral abscissa of a square matrix.
struct SpectralSummary {
  double rho;    ///< max |eigenvalue|
  double alpha;  ///< max Re(eigenvalue)
};

/// Dense eigenvalue sweep; throws std::runtime_error on solver failure.
SpectralSummary spectral_summary(const Eigen::MatrixXd& A);

/// Largest eigenvalue of a symmetric matrix (input is symmetrized first).
double lambda_max_sym(const Eigen::MatrixXd& S);

/// Smallest eigenvalue of a symmetric matrix.
double lambda_min_sym(const Eigen::MatrixXd& S);

/// Scale-relative positive-semidefiniteness test:
/// lambda_min(S) >= -1e-9 * (1 + |lambda_max(S)|).
bool is_psd(const Eigen::MatrixXd& S);

/// Negative-semidefiniteness under the same relative slack.
bool is_nsd(const Eigen::MatrixXd& S);

/// True if S is symmetric within tolerance and strictly positive definite.
bool is_spd(const Eigen::MatrixXd& S);

/// Symmetric square root of an SPD matrix via eigendecomposition.
/// Throws std::invalid_argument if P is not symmetric positive definite.
Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& P);

/// Inverse of the symmetric square root, from the same eigendecomposition.
Eigen::MatrixXd symmetric_sqrt_inv(const Eigen::MatrixXd& P);

/// Solves the continuous-time Lyapunov equation  A^T X + X A + Q = 0
/// by Bartels-Stewart on the complex Schur form of A.
/// Requires that no two eigenvalues of A sum to zero; throws
/// std::runtime_error otherwise (singular equation).
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

inline bool is_square(const Eigen::MatrixXd& A) { return A.rows() == A.cols(); }

void require_square(const Eigen::MatrixXd& A, const char* what);

}  // namespace ccert
