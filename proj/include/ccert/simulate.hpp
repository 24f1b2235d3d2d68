#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ccert/norms.hpp"
#include "ccert/system_model.hpp"

namespace ccert {

/// Thrown when the integrator produces a non-finite state; carries the time
/// at which the blow-up was detected.
struct IntegrationError : std::runtime_error {
  explicit IntegrationError(const std::string& msg, double t) : std::runtime_error(msg), t_fail(t) {}
  double t_fail;
};

struct Trajectory {
  Eigen::VectorXd times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> inputs;  // empty when no input signal was used

  int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
};

/// Vector-valued input signal with a known derivative bound.
class Signal {
 public:
  enum class Kind { Constant, Sinusoid, PiecewiseLinear, Custom };

  static Signal constant(Eigen::VectorXd v);
  /// offset + amplitude * sin(omega t + phase), componentwise in amplitude/offset.
  static Signal sinusoid(Eigen::VectorXd amplitude, double omega, double phase,
                         Eigen::VectorXd offset);
  /// Linear interpolation through (t_k, v_k); constant extrapolation outside.
  static Signal piecewise_linear(std::vector<double> times, std::vector<Eigen::VectorXd> values);
  /// Arbitrary signal; deriv_sup must bound ||theta_dot(t)|| in the norm the
  /// caller later verifies with.
  static Signal custom(std::function<Eigen::VectorXd(double)> fn, int dim, double deriv_sup);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  Eigen::VectorXd at(double t) const;
  /// sup over t of ||theta_dot(t)|| in the given norm.
  double deriv_sup(const NormSpec& spec) const;

 private:
  Kind kind_ = Kind::Constant;
  int dim_ = 0;
  Eigen::VectorXd amplitude_, offset_;
  double omega_ = 0.0, phase_ = 0.0;
  std::vector<double> knot_t_;
  std::vector<Eigen::VectorXd> knot_v_;
  std::function<Eigen::VectorXd(double)> fn_;
  double custom_deriv_sup_ = 0.0;
};

/// Fixed-step RK4 over [t0, t1] with step ~dt (span divided evenly).
/// Requires dt <= (t1 - t0)/10.  Throws IntegrationError on blow-up.
Trajectory integrate(const VectorFieldSpec& f, const Eigen::VectorXd& x0, double t0, double t1,
                     double dt, const std::optional<Signal>& input = std::nullopt);

struct RateEstimate {
  double rate;                  // min over pairs of the -LS slope of log distance
  double max_bound_violation;   // max over pairs/time of ||x-y|| - (1+tol) e^{-ct} ||x0-y0||
  bool bound_ok;
};

/// Empirical incremental rate over trajectory pairs, with the no-overshoot
/// bound check at the supplied certified rate c (skipped when c is nullopt).
RateEstimate empirical_contraction_rate(
    const VectorFieldSpec& f, const NormSpec& spec,
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs, double t0, double t1,
    double dt, std::optional<double> certified_c = std::nullopt, double overshoot_tol = 1e-2,
    const std::optional<Signal>& input = std::nullopt);

struct IissCheck {
  double max_violation;
  Trajectory traj_x, traj_y;
};

/// Max over the time grid of
///   ||x-y|| - [ e^{-ct} ||x0-y0|| + (ell/c)(1-e^{-ct}) sup_{tau<=t} ||theta_x-theta_y|| ].
/// Input distances are measured in input_norm on the same grid.
IissCheck verify_iiss_bound(const VectorFieldSpec& f, const NormSpec& spec, double c, double ell,
                            const Eigen::VectorXd& x0, const Eigen::VectorXd& y0,
                            const Signal& theta_x, const Signal& theta_y, double t0, double t1,
                            double dt, const NormSpec& input_norm);

struct TrackingCheck {
  double max_violation;  // against the full transient + (ell/c^2) bound
  double tail_error;     // max ||x - x*(theta)|| over the last 20% of the span
  double tail_bound;     // (ell/c^2) sup||theta_dot|| + decayed transient
  Trajectory traj;
  std::vector<Eigen::VectorXd> equilibria;  // x*(theta(t_k)) on the output grid
};

/// Equilibrium tracking check; x*(theta(t)) is solved by Banach iteration on
/// the frozen-theta Euler map every 10 integration steps and interpolated
/// linearly in between.
TrackingCheck verify_equilibrium_tracking(const VectorFieldSpec& f, const NormSpec& spec,
                                          double c, double ell, const Signal& theta,
                                          const Eigen::VectorXd& x0, double t0, double t1,
                                          double dt, const NormSpec& input_norm);

struct GradientControllerReport {
  double limsup_error;  // tail max of ||u - u*(w)||_2
  double bound;         // (ell_w / nu^2) sup ||w_dot||_2
  double ell_w;
  bool passes;
};

/// Gradient controller  u' = -grad_phi(u) - Yu^T grad_psi(Yu u + Yw w(t)),
/// with phi nu-strongly convex and grad_psi Lipschitz (lip_psi_grad).
/// Tracks the parametric optimum u*(w(t)) computed by Banach iteration.
GradientControllerReport gradient_controller_demo(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& phi_grad,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& psi_grad, double nu,
    double lip_psi_grad, const Eigen::MatrixXd& Yu, const Eigen::MatrixXd& Yw, const Signal& w,
    const Eigen::VectorXd& u0, double t0, double t1, double dt);

struct SparseReconstructionReport {
  Eigen::VectorXd equilibrium;
  double objective;         // (1/2)||u - Phi x||_2^2 + lambda ||x||_1 at the equilibrium
  double oracle_objective;  // same objective at the prox-gradient minimizer
  double objective_gap;     // |objective - oracle_objective|
  bool nonneg_ok;           // min over trajectory >= -1e-10
  double min_entry;
};

/// Integrates the positive competitive network
///   x_i' = -x_i + relu( Phi_i^T u - lambda - sum_{j != i} Phi_i^T Phi_j x_j ),
/// checks positivity invariance, and compares the equilibrium objective with
/// an independent projected-gradient oracle for the nonnegative lasso.
SparseReconstructionReport sparse_reconstruction_demo(const Eigen::MatrixXd& Phi,
                                                      const Eigen::VectorXd& u, double lambda,
                                                      const Eigen::VectorXd& x0, double t_final);

/// Independent minimizer of  (1/2)||u - Phi x||^2 + lambda 1^T x  over x >= 0
/// by projected gradient with step 1/lambda_max(Phi^T Phi).
Eigen::VectorXd nonneg_lasso_prox_oracle(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& u,
                                         double lambda, double tol = 1e-13,
                                         std::size_t max_iter = 500000);

/// Columns: t, x_1..x_n[, theta_1..theta_m].
void trajectory_to_csv(const Trajectory& traj, std::ostream& out);

}  // namespace ccert
