#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccert/norms.hpp"
#include "ccert/system_model.hpp"

namespace ccert {

/// Thrown when a system is verifiably not contracting at the requested rate
/// (a legitimate negative, distinct from validation errors).
struct NotContractingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CertMethod { ClosedForm, Lyapunov, Perron, LMIVerify, LMISearch, Sampled };

std::string cert_method_name(CertMethod m);

/// A norm, a rate (continuous) or factor (discrete), the witness that proves
/// it, and the slack of the defining inequality.  Sampled results are
/// explicitly non-certified lower bounds.
struct ContractionCertificate {
  NormSpec norm = NormSpec::l2();
  std::optional<double> rate;    // continuous: osL <= -rate
  std::optional<double> factor;  // discrete: Lip <= factor < 1
  std::optional<Eigen::MatrixXd> witness_P;
  std::optional<Eigen::VectorXd> witness_eta;
  std::optional<double> witness_lambda;
  CertMethod method = CertMethod::ClosedForm;
  double margin = 0.0;

  bool certified() const { return method != CertMethod::Sampled; }
};

/// Scalar activation with slope restricted to [d1, d2].
struct Activation {
  enum class Kind { Tanh, Relu, Custom };
  Kind kind = Kind::Tanh;
  double d1 = 0.0, d2 = 1.0;
  std::function<double(double)> fn;      // required for Custom
  std::function<double(double)> slope_fn;  // optional for Custom

  static Activation tanh_act();
  static Activation relu_act();
  static Activation custom(double d1, double d2, std::function<double(double)> fn = {},
                           std::function<double(double)> slope_fn = {});
  static Activation linear();  // custom(1, 1), identity

  double operator()(double y) const;
  /// Slope at y; relu uses the a.e. derivative with slope(0) = 0.
  double slope(double y) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& y) const;
  Eigen::VectorXd slopes(const Eigen::VectorXd& y) const;
};

/// Firing-rate network  x' = -C x + Phi(A x + u).
struct FiringRateSpec {
  Eigen::VectorXd c_diag;  // diagonal of C, entries >= 0
  Eigen::MatrixXd A;
  Activation activation;
  Eigen::VectorXd u;

  void validate() const;
  int dim() const { return static_cast<int>(A.rows()); }
};

/// Lur'e system  x' = A x + B phi(C x)  with rho-cocoercive phi and target
/// contraction rate eta_rate in a weighted-l2 norm.
struct LureSpec {
  Eigen::MatrixXd A;      // n x n
  Eigen::MatrixXd B;      // n x m
  Eigen::MatrixXd C_out;  // m x n
  double rho = 1.0;
  double eta_rate = 0.0;

  void validate() const;
  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
};

/// Implicit network fixed point  x = Phi(A x + B u + b), slopes in [0, 1].
struct ImplicitNNSpec {
  Eigen::MatrixXd A;  // n x n
  Eigen::MatrixXd B;  // n x m
  Eigen::VectorXd b;
  Activation activation = Activation::relu_act();

  void validate() const;
};

// --- linear / affine certificates ---------------------------------------

/// Solves (A + rate I)^T P + P (A + rate I) = -I and verifies
/// A^T P + P A + 2 rate P <= 0.  Throws NotContractingError when
/// alpha(A) >= -rate (message reports alpha).
ContractionCertificate lti_l2_certificate(const Eigen::MatrixXd& A, double target_rate);

/// Perron weight certificate for a Hurwitz Metzler matrix: positive eta with
/// mu_{inf,eta}(A) = alpha(A) within 1e-8; rate |alpha(A)|.
ContractionCertificate metzler_linf_certificate(const Eigen::MatrixXd& A);

enum class AffineCondition { OneSided, Lipschitz };

struct EquivalenceCheck {
  bool holds;               // verdict of the direct matrix/row condition
  double margin;            // slack of the defining inequality
  bool cross_check_agrees;  // direct verdict vs weighted norm computation
};

/// Evaluates the affine-map equivalence for weighted specs directly
/// (one-sided: A^T P + P A <= 2 ell P, rows a_ii + sum |a_ij| eta_j/eta_i <= ell;
/// Lipschitz: A^T P A <= ell^2 P, |A| eta <= ell eta) and cross-checks the
/// verdict against log_norm / matrix_norm of the same weighted spec.
EquivalenceCheck affine_equivalence_check(const Eigen::MatrixXd& A, const NormSpec& spec,
                                          double ell, AffineCondition mode);

// --- Lur'e LMI ------------------------------------------------------------

struct LmiCheck {
  bool holds;
  double margin;  // -lambda_max of the assembled block matrix
};

/// Assembles the block matrix
///   [ A^T P + P A + 2 eta P    P B + lambda C^T ]
///   [ B^T P + lambda C        -2 lambda rho I   ]
/// and tests negative semidefiniteness within the PSD tolerance.
LmiCheck lure_lmi_verify(const LureSpec& s, const Eigen::MatrixXd& P, double lambda);

/// Heuristic search: lambda on {0} + 25 log-spaced points in [1e-3, 1e3],
/// candidate P from the Lyapunov solve at rate eta_rate.  Returns the first
/// verified certificate, or nullopt ("no certificate found"; the search is
/// incomplete, so this never means infeasible).
std::optional<ContractionCertificate> lure_lmi_search(const LureSpec& s);

// --- neural networks -------------------------------------------------------

/// Closed-form osL_inf of the firing-rate field:
/// max{ mu_inf(-C + d1 A), mu_inf(-C + d2 A) }.  Certificate rate is its
/// negation (positive when contracting).
ContractionCertificate firing_rate_osl(const FiringRateSpec& s);

struct ImplicitNNReport {
  bool well_posed = false;
  double mu_inf_A = 0.0;
  std::optional<double> ct_rate;               // 1 - relu(mu_inf(A))
  std::optional<double> alpha_star;            // 1 / (1 - min_i (a_ii)_-)
  std::optional<double> dt_factor;             // 1 - ct_rate * alpha_star
  std::optional<double> lip_u_to_x;            // ||B||_inf / ct_rate
  std::optional<double> rel_robustness_coeff;  // 1 / ct_rate
};

/// Well-posedness and the contraction/robustness constants of the implicit
/// network when mu_inf(A) < 1; well_posed = false otherwise.
ImplicitNNReport implicit_nn_analyze(const ImplicitNNSpec& s);

// --- pointwise and regional checks ------------------------------------------

using MetricFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Residual lambda_max( M DF + DF^T M + Mdot + 2c M ) at x; <= 0 means the
/// Riemannian condition holds there.  Mdot is the caller-supplied Lie
/// derivative of M along F.
double riemannian_pointwise_check(const VectorFieldSpec& f, const MetricFn& M,
                                  const MetricFn& Mdot, const Eigen::VectorXd& x, double c);

struct BallCertificate {
  Eigen::VectorXd center;
  double radius;
  double rate;           // -max sampled mu over the ball
  double residual_norm;  // ||F(center)||
};

struct ScanResult {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> mu;  // mu(DF(x)) per point
  std::optional<BallCertificate> ball;
};

/// Pointwise log-norm field over the sampled grid plus a search for a ball
/// B(center, r) with uniformly negative sampled mu and small residual
/// ||F(center)|| <= rate * r * (1 - safety); sampled evidence only.
/// Grids are practical for dim <= 4.
ScanResult local_contraction_scan(const VectorFieldSpec& f, const NormSpec& spec,
                                  const Sampler& grid, double safety = 0.1,
                                  std::uint64_t seed = 0);

enum class WeakContractionClass { StrictlyNegative, WeaklyNonpositive, Indefinite };

struct TrajectoryProbe {
  Eigen::VectorXd x0;
  bool bounded;
  double max_norm;
};

struct WeakContractionReport {
  WeakContractionClass classification;
  double sup_mu;  // sampled sup of mu(DF)
  double c;       // -sup_mu when strictly negative, else 0
  std::vector<TrajectoryProbe> probes;  // empirical dichotomy evidence only
};

/// Classifies the sampled sup of mu(DF): below -1e-6 strictly negative,
/// within +/-1e-6 weakly nonpositive, above indefinite.  The trajectory
/// probes are explicitly non-certifying.
WeakContractionReport weak_contraction_check(const VectorFieldSpec& f, const NormSpec& spec,
                                             const Sampler& sampler);

}  // namespace ccert
