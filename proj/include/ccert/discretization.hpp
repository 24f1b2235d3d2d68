#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ccert/norms.hpp"
#include "ccert/system_model.hpp"

namespace ccert {

/// Outcome of a Banach fixed-point iteration, with the measured contraction
/// factor and the a-priori / a-posteriori error bounds it implies.
struct FixedPointResult {
  Eigen::VectorXd x_star;
  std::size_t iterations = 0;
  double factor_measured = 0.0;  // rho_hat from the warm-up window
  double apriori_bound = 0.0;    // rho^k ||x1 - x0|| / (1 - rho)
  double aposteriori_bound = 0.0;
  bool converged = false;
  bool diverged = false;                // some measured step ratio >= 1
  std::vector<double> step_norms;       // ||x_{k+1} - x_k|| per iteration
};

/// Forward-Euler map x -> x + alpha F(x), Jacobian I + alpha DF(x).
DiscreteMapSpec euler_map(const VectorFieldSpec& f, double alpha);

struct StepChoice {
  double alpha;
  double factor;  // sampled Euler Lipschitz factor at alpha
};

/// Searches alpha in (0, alpha_max] for the sampled-optimal contracting Euler
/// step: 64-point log grid, then golden-section refinement around the best
/// grid point.  Returns nullopt when no sampled factor < 1 exists (e.g. the
/// field is not contracting in this norm).
std::optional<StepChoice> find_contracting_step(const VectorFieldSpec& f, const NormSpec& spec,
                                                double alpha_max, const Sampler& sampler);

/// Iterates the map from x0 until the a-posteriori guarantee
/// ||x_k - x*|| <= tol holds (stopping rule ||dx|| <= tol (1 - rho)/rho with
/// rho measured over a warm-up window of 10 step ratios and clamped to
/// [1e-6, 1 - 1e-9]).  Reports divergence instead of looping when the
/// measured ratio reaches 1.
FixedPointResult banach_iterate(const DiscreteMapSpec& map, const Eigen::VectorXd& x0,
                                double tol, std::size_t max_iter,
                                const NormSpec& norm = NormSpec::linf());

}  // namespace ccert
