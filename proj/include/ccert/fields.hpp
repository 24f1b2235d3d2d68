#pragma once

#include <Eigen/Dense>
#include <optional>

#include "ccert/certificates.hpp"
#include "ccert/system_model.hpp"

namespace ccert {

/// x' = A x + a (+ B theta when B is given), analytic Jacobian A.
VectorFieldSpec make_linear_field(const Eigen::MatrixXd& A, const Eigen::VectorXd& a,
                                  const Box& domain,
                                  const std::optional<Eigen::MatrixXd>& B = std::nullopt);

/// Gradient flow x' = -(Q x - b) of the quadratic (1/2) x^T Q x - b^T x.
VectorFieldSpec make_quadratic_gradient_flow(const Eigen::MatrixXd& Q, const Eigen::VectorXd& b,
                                             const Box& domain);

/// Gradient flow of the regularized logistic loss
///   f(w) = sum_i log(1 + exp(-y_i x_i^T w)) + (reg/2) ||w||^2,
/// rows of X are samples, y in {-1, +1}.
VectorFieldSpec make_logistic_gradient_flow(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                            double reg, const Box& domain);

/// Firing-rate field x' = -C x + Phi(A x + u); the input channel (x, theta)
/// replaces the bias u by theta.
VectorFieldSpec make_firing_rate_field(const FiringRateSpec& s, const Box& domain);

/// Lur'e field x' = A x + B phi(C x) with phi = componentwise relu
/// (1-cocoercive).
VectorFieldSpec make_lure_relu_field(const LureSpec& s, const Box& domain);

/// Continuous-time implicit NN x' = -x + Phi(A x + B u + b).
VectorFieldSpec make_implicit_nn_field(const ImplicitNNSpec& s, const Eigen::VectorXd& u,
                                       const Box& domain);

/// Discrete iteration x -> (1 - alpha) x + alpha Phi(A x + B u + b).
DiscreteMapSpec make_implicit_nn_map(const ImplicitNNSpec& s, const Eigen::VectorXd& u,
                                     double alpha, const Box& domain);

/// Positive competitive network for sparse reconstruction (columns of Phi
/// unit-norm, entries >= 0):
///   x_i' = -x_i + relu( Phi_i^T u - lambda - sum_{j != i} Phi_i^T Phi_j x_j ).
VectorFieldSpec make_competitive_field(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& u,
                                       double lambda, const Box& domain);

}  // namespace ccert
