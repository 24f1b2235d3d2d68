#include "ccert/norms.hpp"

#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <stdexcept>

namespace ccert {

NormSpec NormSpec::lp(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("NormSpec::lp: exponent must satisfy 1 < p < inf");
  }
  NormSpec s(NormKind::Lp);
  s.p_ = p;
  return s;
}

NormSpec NormSpec::weighted_l2(const Eigen::MatrixXd& P) {
  auto w = std::make_shared<Weights>();
  w->P = 0.5 * (P + P.transpose());
  w->theta = symmetric_sqrt(P);  // validates symmetry + positive definiteness
  w->theta_inv = symmetric_sqrt_inv(P);
  NormSpec s(NormKind::WeightedL2);
  s.w_ = std::move(w);
  return s;
}

NormSpec NormSpec::weighted_linf(const Eigen::VectorXd& eta) {
  if (eta.size() == 0 || (eta.array() <= 0.0).any()) {
    throw std::invalid_argument("NormSpec::weighted_linf: weight must be entrywise positive");
  }
  auto w = std::make_shared<Weights>();
  w->eta = eta;
  NormSpec s(NormKind::WeightedLinf);
  s.w_ = std::move(w);
  return s;
}

int NormSpec::weight_dim() const {
  if (kind_ == NormKind::WeightedL2) return static_cast<int>(w_->P.rows());
  if (kind_ == NormKind::WeightedLinf) return static_cast<int>(w_->eta.size());
  return -1;
}

const Eigen::MatrixXd& NormSpec::P() const {
  if (kind_ != NormKind::WeightedL2) throw std::logic_error("NormSpec: no P weight");
  return w_->P;
}
const Eigen::VectorXd& NormSpec::eta() const {
  if (kind_ != NormKind::WeightedLinf) throw std::logic_error("NormSpec: no eta weight");
  return w_->eta;
}
const Eigen::MatrixXd& NormSpec::theta() const {
  if (kind_ != NormKind::WeightedL2) throw std::logic_error("NormSpec: no theta factor");
  return w_->theta;
}
const Eigen::MatrixXd& NormSpec::theta_inv() const {
  if (kind_ != NormKind::WeightedL2) throw std::logic_error("NormSpec: no theta factor");
  return w_->theta_inv;
}

std::string NormSpec::name() const {
  switch (kind_) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::Linf: return "linf";
    case NormKind::Lp: return "lp";
    case NormKind::WeightedL2: return "wl2";
    case NormKind::WeightedLinf: return "winf";
  }
  return "?";
}

namespace {

void require_weight_dim(const NormSpec& spec, Eigen::Index n, const char* what) {
  const int wd = spec.weight_dim();
  if (wd >= 0 && wd != n) {
    throw std::invalid_argument(std::string(what) + ": weight dimension " + std::to_string(wd) +
                                " does not match operand dimension " + std::to_string(n));
  }
}

double sigma_max(const Eigen::MatrixXd& A) {
  if (A.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  return svd.singularValues()(0);
}

// mu_inf(A) = max_i ( a_ii + sum_{j != i} |a_ij| )
double mu_inf(const Eigen::MatrixXd& A) {
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double row = A(i, i);
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j != i) row += std::abs(A(i, j));
    }
    best = std::max(best, row);
  }
  return best;
}

Eigen::MatrixXd scale_rows_cols_by_eta(const Eigen::MatrixXd& A, const Eigen::VectorXd& eta) {
  // D^{-1} A D with D = diag(eta); entry (i,j) -> a_ij * eta_j / eta_i.
  return eta.cwiseInverse().asDiagonal() * A * eta.asDiagonal();
}

}  // namespace

double vector_norm(const Eigen::VectorXd& v, const NormSpec& spec) {
  require_weight_dim(spec, v.size(), "vector_norm");
  switch (spec.kind()) {
    case NormKind::L1: return v.lpNorm<1>();
    case NormKind::L2: return v.norm();
    case NormKind::Linf: return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
    case NormKind::Lp: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), spec.p());
      return std::pow(s, 1.0 / spec.p());
    }
    case NormKind::WeightedL2: return std::sqrt(v.dot(spec.P() * v));
    case NormKind::WeightedLinf:
      return v.size() == 0 ? 0.0 : (v.cwiseQuotient(spec.eta())).cwiseAbs().maxCoeff();
  }
  throw std::logic_error("vector_norm: unreachable");
}

double matrix_norm(const Eigen::MatrixXd& A, const NormSpec& spec) {
  require_square(A, "matrix_norm");
  require_weight_dim(spec, A.rows(), "matrix_norm");
  switch (spec.kind()) {
    case NormKind::L1: return A.cwiseAbs().colwise().sum().maxCoeff();
    case NormKind::L2: return sigma_max(A);
    case NormKind::Linf: return A.cwiseAbs().rowwise().sum().maxCoeff();
    case NormKind::WeightedL2: return sigma_max(spec.theta() * A * spec.theta_inv());
    case NormKind::WeightedLinf:
      return scale_rows_cols_by_eta(A, spec.eta()).cwiseAbs().rowwise().sum().maxCoeff();
    case NormKind::Lp:
      throw std::invalid_argument("matrix_norm: no closed form for general lp");
  }
  throw std::logic_error("matrix_norm: unreachable");
}

double log_norm(const Eigen::MatrixXd& A, const NormSpec& spec) {
  require_square(A, "log_norm");
  require_weight_dim(spec, A.rows(), "log_norm");
  switch (spec.kind()) {
    case NormKind::L1: return mu_inf(A.transpose());  // column version of the row rule
    case NormKind::L2: return lambda_max_sym(0.5 * (A + A.transpose()));
    case NormKind::Linf: return mu_inf(A);
    case NormKind::WeightedL2: {
      const Eigen::MatrixXd B = spec.theta() * A * spec.theta_inv();
      return lambda_max_sym(0.5 * (B + B.transpose()));
    }
    case NormKind::WeightedLinf: return mu_inf(scale_rows_cols_by_eta(A, spec.eta()));
    case NormKind::Lp:
      throw std::invalid_argument("log_norm: no closed form for general lp");
  }
  throw std::logic_error("log_norm: unreachable");
}

double log_norm_limit_oracle(const Eigen::MatrixXd& A, const NormSpec& spec,
                             std::span<const double> h_sequence) {
  require_square(A, "log_norm_limit_oracle");
  require_weight_dim(spec, A.rows(), "log_norm_limit_oracle");
  if (h_sequence.empty()) {
    throw std::invalid_argument("log_norm_limit_oracle: h_sequence must be nonempty");
  }
  for (std::size_t i = 0; i + 1 < h_sequence.size(); ++i) {
    if (!(h_sequence[i] > h_sequence[i + 1]) || !(h_sequence[i + 1] > 0.0)) {
      throw std::invalid_argument(
          "log_norm_limit_oracle: h_sequence must be strictly decreasing and positive");
    }
  }

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(A.rows(), A.cols());
  const std::size_t m = h_sequence.size();
  std::vector<double> g(m);
  for (std::size_t i = 0; i < m; ++i) {
    g[i] = (matrix_norm(I + h_sequence[i] * A, spec) - 1.0) / h_sequence[i];
  }
  if (m == 1) return g[0];

  // Least-squares line g ~= mu + c*h; the intercept cancels the O(h) error.
  double hbar = 0.0, gbar = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    hbar += h_sequence[i];
    gbar += g[i];
  }
  hbar /= static_cast<double>(m);
  gbar /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (h_sequence[i] - hbar) * (h_sequence[i] - hbar);
    sxy += (h_sequence[i] - hbar) * (g[i] - gbar);
  }
  const double slope = sxy / sxx;
  return gbar - slope * hbar;
}

double log_norm_limit_oracle(const Eigen::MatrixXd& A, const NormSpec& spec) {
  static constexpr std::array<double, 3> kDefaultH{1e-4, 1e-6, 1e-8};
  return log_norm_limit_oracle(A, spec, kDefaultH);
}

std::vector<int> max_abs_indices(const Eigen::VectorXd& v, double rel_tol) {
  std::vector<int> idx;
  if (v.size() == 0) return idx;
  const double m = v.cwiseAbs().maxCoeff();
  const double cut = m - rel_tol * m;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= cut) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

}  // namespace ccert
