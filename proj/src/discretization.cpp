#include "ccert/discretization.hpp"

#include <cmath>
#include <stdexcept>

#include "ccert/parallel.hpp"

namespace ccert {

DiscreteMapSpec euler_map(const VectorFieldSpec& f, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("euler_map: alpha must be > 0");
  DiscreteMapSpec m;
  m.domain = f.domain;
  m.fd_step = f.fd_step;
  auto eval = f.f;
  m.f = [eval, alpha](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return x + alpha * eval(x);
  };
  if (f.jacobian) {
    auto jac = f.jacobian;
    m.jacobian = [jac, alpha](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
      const Eigen::MatrixXd J = jac(x);
      return Eigen::MatrixXd::Identity(J.rows(), J.cols()) + alpha * J;
    };
  }
  return m;
}

std::optional<StepChoice> find_contracting_step(const VectorFieldSpec& f, const NormSpec& spec,
                                                double alpha_max, const Sampler& sampler) {
  if (!(alpha_max > 0.0)) throw std::invalid_argument("find_contracting_step: alpha_max > 0");

  const auto pts = sampler.points(f.domain);
  if (pts.empty()) throw std::invalid_argument("find_contracting_step: empty sample set");
  std::vector<Eigen::MatrixXd> jacs(pts.size());
  jacs[0] = jacobian_at(f, pts[0]);  // sizing / dimension errors surface serially
  par::for_each_index(pts.size(), [&](std::size_t i) { jacs[i] = jacobian_at(f, pts[i]); });

  // Not contracting in this norm on the sampled points: no step can help.
  const double osl =
      par::max_reduce(jacs.size(), [&](std::size_t i) { return log_norm(jacs[i], spec); });
  if (osl >= 0.0) return std::nullopt;

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(jacs[0].rows(), jacs[0].cols());
  auto factor_at = [&](double a) {
    return par::max_reduce(jacs.size(),
                           [&](std::size_t i) { return matrix_norm(I + a * jacs[i], spec); });
  };

  constexpr int kGrid = 64;
  double best_alpha = 0.0;
  double best_factor = std::numeric_limits<double>::infinity();
  int best_idx = -1;
  std::vector<double> alphas(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    // log-spaced over [alpha_max/1000, alpha_max]
    alphas[i] = alpha_max * std::pow(10.0, -3.0 * (1.0 - static_cast<double>(i) / (kGrid - 1)));
  }
  for (int i = 0; i < kGrid; ++i) {
    const double fa = factor_at(alphas[i]);
    if (fa < best_factor) {
      best_factor = fa;
      best_alpha = alphas[i];
      best_idx = i;
    }
  }

  // Golden-section refinement in the bracket around the best grid point.
  double lo = best_idx > 0 ? alphas[best_idx - 1] : alphas[0] * 0.5;
  double hi = best_idx < kGrid - 1 ? alphas[best_idx + 1] : alpha_max;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = factor_at(a), fb = factor_at(b);
  for (int it = 0; it < 48; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = factor_at(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = factor_at(b);
    }
  }
  const double alpha_ref = fa < fb ? a : b;
  const double factor_ref = std::min(fa, fb);
  if (factor_ref < best_factor) {
    best_factor = factor_ref;
    best_alpha = alpha_ref;
  }

  if (!(best_factor < 1.0)) return std::nullopt;
  return StepChoice{best_alpha, best_factor};
}

FixedPointResult banach_iterate(const DiscreteMapSpec& map, const Eigen::VectorXd& x0, double tol,
                                std::size_t max_iter, const NormSpec& norm) {
  if (!(tol > 0.0)) throw std::invalid_argument("banach_iterate: tol must be > 0");

  FixedPointResult r;
  Eigen::VectorXd x_prev = x0;
  Eigen::VectorXd x_cur = map.f(x0);
  r.iterations = 1;
  double d_prev = vector_norm(x_cur - x_prev, norm);
  r.step_norms.push_back(d_prev);
  const double d_first = d_prev;

  double window_max = 0.0;
  int ratios_seen = 0;
  constexpr int kWindow = 10;
  auto rho_hat = [&]() {
    const double raw = ratios_seen == 0 ? 0.5 : window_max;
    return std::clamp(raw, 1e-6, 1.0 - 1e-9);
  };

  if (d_prev == 0.0) {
    r.x_star = x_cur;
    r.converged = true;
    r.factor_measured = 0.0;
    return r;
  }

  while (r.iterations < max_iter) {
    const Eigen::VectorXd x_next = map.f(x_cur);
    ++r.iterations;
    const double d = vector_norm(x_next - x_cur, norm);
    r.step_norms.push_back(d);

    const double ratio = d_prev > 0.0 ? d / d_prev : 0.0;
    if (ratios_seen < kWindow) {
      window_max = std::max(window_max, ratio);
      ++ratios_seen;
      if (window_max >= 1.0) r.diverged = true;  // divergence warning
    }

    const double rho = rho_hat();
    r.factor_measured = rho;
    r.aposteriori_bound = rho / (1.0 - rho) * d;
    r.apriori_bound =
        std::pow(rho, static_cast<double>(r.iterations - 1)) * d_first / (1.0 - rho);

    x_prev = x_cur;
    x_cur = x_next;
    d_prev = d;

    if (d <= tol * (1.0 - rho) / rho) {
      r.converged = !r.diverged;
      break;
    }
    if (!std::isfinite(d) || d > 1e12 * (1.0 + d_first)) {
      r.diverged = true;
      break;
    }
  }

  r.x_star = x_cur;
  return r;
}

}  // namespace ccert
