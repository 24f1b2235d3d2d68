#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>

#include "ccert/linalg.hpp"

namespace ccert {

enum class NormKind { L1, L2, Linf, Lp, WeightedL2, WeightedLinf };

/// Which norm governs a computation.  Weighted variants carry their weight:
///   weighted-l2:   ||x||_{2,P}   = (x^T P x)^{1/2},  P symmetric positive definite
///   weighted-linf: ||x||_{inf,eta} = max_i |x_i| / eta_i,  eta entrywise positive
///
/// The weighted-l2 factor Theta = P^{1/2} (symmetric eigendecomposition square
/// root) is precomputed at construction, so copies of a NormSpec are cheap and
/// all operations on it are pure and safe to call concurrently.
class NormSpec {
 public:
  static NormSpec l1() { return NormSpec(NormKind::L1); }
  static NormSpec l2() { return NormSpec(NormKind::L2); }
  static NormSpec linf() { return NormSpec(NormKind::Linf); }

  /// lp with exponent 1 < p < inf (l1/linf are their own kinds).
  static NormSpec lp(double p);

  /// Validates symmetry and positive-definiteness of P.
  static NormSpec weighted_l2(const Eigen::MatrixXd& P);

  /// Validates entrywise positivity of eta.
  static NormSpec weighted_linf(const Eigen::VectorXd& eta);

  NormKind kind() const { return kind_; }
  double p() const { return p_; }
  bool is_weighted() const {
    return kind_ == NormKind::WeightedL2 || kind_ == NormKind::WeightedLinf;
  }
  /// Dimension the weight pins down, or -1 for unweighted specs.
  int weight_dim() const;

  const Eigen::MatrixXd& P() const;
  const Eigen::VectorXd& eta() const;
  const Eigen::MatrixXd& theta() const;      // P^{1/2}
  const Eigen::MatrixXd& theta_inv() const;  // P^{-1/2}

  /// Short identifier: "l1", "l2", "linf", "lp", "wl2", "winf".
  std::string name() const;

 private:
  explicit NormSpec(NormKind kind) : kind_(kind) {}

  struct Weights {
    Eigen::MatrixXd P, theta, theta_inv;
    Eigen::VectorXd eta;
  };

  NormKind kind_;
  double p_ = 2.0;
  std::shared_ptr<const Weights> w_;
};

/// ||v|| under the given spec.  Zero iff v = 0.
double vector_norm(const Eigen::VectorXd& v, const NormSpec& spec);

/// Induced matrix norm, closed form.  Supported: L1, L2, Linf, WeightedL2,
/// WeightedLinf (no closed form exists for general lp).
double matrix_norm(const Eigen::MatrixXd& A, const NormSpec& spec);

/// Matrix log norm mu(A) = lim_{h->0+} (||I + hA|| - 1)/h, closed form.
/// Same supported specs as matrix_norm.  Can be negative; upper-bounds the
/// spectral abscissa.
double log_norm(const Eigen::MatrixXd& A, const NormSpec& spec);

/// Independent oracle for the log norm: evaluates the limit quotient
/// (||I + hA|| - 1)/h on the given h sequence and extrapolates linearly in h
/// (least-squares line, intercept at h = 0).  h_sequence must be nonempty and
/// strictly decreasing.  Default h = {1e-4, 1e-6, 1e-8}.
double log_norm_limit_oracle(const Eigen::MatrixXd& A, const NormSpec& spec,
                             std::span<const double> h_sequence);
double log_norm_limit_oracle(const Eigen::MatrixXd& A, const NormSpec& spec);

/// Index set I_inf(v) = { i : |v_i| = ||v||_inf }, membership within relative
/// tolerance rel_tol * ||v||_inf so exact ties on symmetric problems are kept.
std::vector<int> max_abs_indices(const Eigen::VectorXd& v, double rel_tol = 1e-12);

}  // namespace ccert
