#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ccert/norms.hpp"

namespace ccert {

/// Axis-aligned box [lo, hi], lo < hi componentwise.
struct Box {
  Eigen::VectorXd lo, hi;

  Box() = default;
  Box(Eigen::VectorXd lo_, Eigen::VectorXd hi_);
  static Box cube(int dim, double half_width);  // [-w, w]^dim

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  Eigen::VectorXd center() const { return 0.5 * (lo + hi); }
  double diameter_inf() const { return (hi - lo).maxCoeff(); }
  /// Affine map from the unit cube [0,1]^dim into the box.
  Eigen::VectorXd from_unit(const Eigen::VectorXd& u) const;
};

/// Deterministic point-set generators over a box.  Seeded strategies are
/// reproducible; points are generated up front so downstream sweeps can run
/// in parallel without touching the RNG.
struct Sampler {
  enum class Strategy { UniformGrid, LatinHypercube, RandomUniform };

  Strategy strategy = Strategy::UniformGrid;
  int points_per_axis = 11;
  std::size_t count = 2000;
  std::uint64_t seed = 0;

  static Sampler uniform_grid(int per_axis);
  static Sampler latin_hypercube(std::size_t count, std::uint64_t seed = 0);
  static Sampler random_uniform(std::size_t count, std::uint64_t seed);
  /// Grid with 11 points per axis for dim <= 3, LatinHypercube(2000) above.
  static Sampler default_for(int dim);

  std::vector<Eigen::VectorXd> points(const Box& box) const;
};

/// A continuous-time system x' = F(x), or x' = F(x, theta) when the input
/// channel f_param is set.  The Jacobian is analytic when `jacobian` is
/// provided, otherwise central finite differences with step
/// fd_step * (1 + |x|_inf).
struct VectorFieldSpec {
  using Eval = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
  using EvalParam =
      std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
  using Jac = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

  Eval f;
  EvalParam f_param;  // optional
  Jac jacobian;       // optional
  Box domain;
  std::optional<Box> parameter_domain;
  double fd_step = 1e-5;

  bool has_input() const { return static_cast<bool>(f_param); }
  Eigen::VectorXd eval(const Eigen::VectorXd& x) const { return f(x); }
  Eigen::VectorXd eval(const Eigen::VectorXd& x, const Eigen::VectorXd& theta) const;
};

/// A discrete map x_{k+1} = F(x_k) with the same Jacobian conventions.
struct DiscreteMapSpec {
  VectorFieldSpec::Eval f;
  VectorFieldSpec::Jac jacobian;  // optional
  Box domain;
  double fd_step = 1e-5;
};

/// DF(x): analytic if provided, else central differences.
Eigen::MatrixXd jacobian_at(const VectorFieldSpec& f, const Eigen::VectorXd& x);
Eigen::MatrixXd jacobian_at(const DiscreteMapSpec& f, const Eigen::VectorXd& x);

/// Sampled lower bound of Lip(F) = sup_x ||DF(x)||: max over sample points of
/// the induced matrix norm of the Jacobian.  Runs the sweep in parallel.
double estimate_lip(const VectorFieldSpec& f, const NormSpec& spec, const Sampler& sampler);
double estimate_lip(const DiscreteMapSpec& f, const NormSpec& spec, const Sampler& sampler);

/// Sampled lower bound of the one-sided Lipschitz constant
/// osL(F) = sup_x mu(DF(x)).
double estimate_osl(const VectorFieldSpec& f, const NormSpec& spec, const Sampler& sampler);

/// The integral-condition quotient attained at the pair (x, y), x != y:
///   weighted-l2 (P):  (x-y)^T P (F(x)-F(y)) / ||x-y||_{2,P}^2
///   l1:               sign(x-y)^T (F(x)-F(y)) / ||x-y||_1
///   linf:             max_{i in I_inf(x-y)} (x_i-y_i)(F_i(x)-F_i(y)) / ||x-y||_inf^2
/// Supported specs: L1, L2, WeightedL2, Linf.
double one_sided_pair_quotient(const VectorFieldSpec& f, const NormSpec& spec,
                               const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// The differential-condition residual at (x, v), v != 0:
///   l1:    sign(v)^T DF(x) v / ||v||_1
///   linf:  max_{i in I_inf(v)} v_i (DF(x) v)_i / ||v||_inf^2
///   l2/weighted-l2: v^T P DF(x) v / ||v||_{2,P}^2   (Rayleigh form of the
///   Demidovich condition; P = I for plain l2)
double differential_condition_residual(const VectorFieldSpec& f, const NormSpec& spec,
                                       const Eigen::VectorXd& x, const Eigen::VectorXd& v);

/// Sampled sup of the differential condition over x in the domain and a sweep
/// of directions v (random sphere points plus the extreme directions of the
/// norm ball, which attain the log norm).  Lower bound of osL.
double differential_condition_sup(const VectorFieldSpec& f, const NormSpec& spec,
                                  const Sampler& x_sampler, int dirs_per_point = 32,
                                  std::uint64_t seed = 0);

/// Sampled sup of the integral condition: n_pairs independent (x, y) pairs
/// plus n_short short-distance pairs at roughly 1e-3 of the box diameter,
/// which probe the differential limit.  Lower bound of osL.
double pair_quotient_sup(const VectorFieldSpec& f, const NormSpec& spec,
                         std::size_t n_pairs = 500, std::size_t n_short = 500,
                         std::uint64_t seed = 0);

}  // namespace ccert
