#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ccert/certificates.hpp"
#include "ccert/norms.hpp"
#include "ccert/system_model.hpp"

namespace ccert {

enum class GainMode { Continuous, Discrete };

/// Network gain matrix: continuous mode is Metzler with diagonal -c_i and
/// off-diagonal cross-gains l_ij >= 0; discrete mode is entrywise nonnegative.
struct GainMatrix {
  Eigen::MatrixXd gamma;
  std::vector<int> block_dims;  // optional subsystem state dimensions
  GainMode mode = GainMode::Continuous;

  void validate() const;
};

/// Assembles Gamma from subsystem rates c_i > 0 and cross-gains l_ij >= 0
/// (the diagonal of `gains` is ignored).  Discrete mode uses the factors
/// directly on the diagonal.
GainMatrix build_gain_matrix(const Eigen::VectorXd& rates, const Eigen::MatrixXd& gains,
                             GainMode mode);

/// Continuous: |alpha(Gamma)| when Gamma is Hurwitz, else nullopt.
/// Discrete: rho(Gamma) when Schur stable, else nullopt.
std::optional<double> network_rate(const GainMatrix& G);

/// Composite certificate for a continuous gain matrix: the rate |alpha(Gamma)|
/// together with the eta-weighted norm from the Perron certificate of Gamma
/// (one valid choice of composite norm).
std::optional<ContractionCertificate> network_certificate(const GainMatrix& G);

/// Operator norm of M as a map (domain_spec) -> (codomain_spec).  Closed form
/// when both sides live in the same family (linf/weighted-linf, l2/weighted-l2,
/// or l1); otherwise sampled over the domain unit sphere (lower bound).
double operator_norm_between(const Eigen::MatrixXd& M, const NormSpec& domain_spec,
                             const NormSpec& codomain_spec, std::uint64_t seed = 0,
                             int samples = 4096);

struct SubsystemGains {
  Eigen::VectorXd rates;   // c_i = -sup mu(dF_i/dx_i)
  Eigen::MatrixXd gains;   // l_ij = sup ||dF_i/dx_j|| (mixed norms)
  bool all_rates_positive;  // the Property-3 hypotheses hold on the samples
};

/// Sampled subsystem rates and cross-gains for fields F_i(x_full) sharing a
/// state partition; specs[i] is subsystem i's norm on both sides of its own
/// block.  Results are sampled estimates, not certificates.
SubsystemGains subsystem_gains_from_fields(const std::vector<VectorFieldSpec>& fields,
                                           const std::vector<int>& block_dims,
                                           const std::vector<NormSpec>& specs,
                                           const Sampler& sampler);

}  // namespace ccert
