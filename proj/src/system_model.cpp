#include "ccert/system_model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ccert/parallel.hpp"

namespace ccert {

namespace {

// Deterministic uniform/normal draws on top of mt19937_64 (distribution
// classes are implementation-defined; these are not).
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal() {
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  Eigen::VectorXd unit_direction(int dim) {
    Eigen::VectorXd v(dim);
    double n2 = 0.0;
    do {
      for (int i = 0; i < dim; ++i) v(i) = normal();
      n2 = v.norm();
    } while (n2 < 1e-12);
    return v / n2;
  }
  Eigen::VectorXd point_in(const Box& box) {
    Eigen::VectorXd x(box.dim());
    for (int i = 0; i < box.dim(); ++i) x(i) = uniform(box.lo(i), box.hi(i));
    return x;
  }
};

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

Box::Box(Eigen::VectorXd lo_, Eigen::VectorXd hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size()) throw std::invalid_argument("Box: lo/hi dimension mismatch");
  if (((hi - lo).array() <= 0.0).any()) {
    throw std::invalid_argument("Box: requires lo < hi componentwise");
  }
}

Box Box::cube(int dim, double half_width) {
  return Box(Eigen::VectorXd::Constant(dim, -half_width),
             Eigen::VectorXd::Constant(dim, half_width));
}

bool Box::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != lo.size()) return false;
  return (x.array() >= lo.array() - tol).all() && (x.array() <= hi.array() + tol).all();
}

Eigen::VectorXd Box::from_unit(const Eigen::VectorXd& u) const {
  return lo + (hi - lo).cwiseProduct(u);
}

Sampler Sampler::uniform_grid(int per_axis) {
  if (per_axis < 1) throw std::invalid_argument("Sampler: points_per_axis must be >= 1");
  Sampler s;
  s.strategy = Strategy::UniformGrid;
  s.points_per_axis = per_axis;
  return s;
}

Sampler Sampler::latin_hypercube(std::size_t count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("Sampler: count must be >= 1");
  Sampler s;
  s.strategy = Strategy::LatinHypercube;
  s.count = count;
  s.seed = seed;
  return s;
}

Sampler Sampler::random_uniform(std::size_t count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("Sampler: count must be >= 1");
  Sampler s;
  s.strategy = Strategy::RandomUniform;
  s.count = count;
  s.seed = seed;
  return s;
}

Sampler Sampler::default_for(int dim) {
  return dim <= 3 ? uniform_grid(11) : latin_hypercube(2000);
}

std::vector<Eigen::VectorXd> Sampler::points(const Box& box) const {
  const int dim = box.dim();
  std::vector<Eigen::VectorXd> pts;
  switch (strategy) {
    case Strategy::UniformGrid: {
      const int m = points_per_axis;
      std::size_t total = 1;
      for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(m);
      pts.reserve(total);
      std::vector<int> idx(dim, 0);
      for (std::size_t k = 0; k < total; ++k) {
        Eigen::VectorXd x(dim);
        for (int a = 0; a < dim; ++a) {
          const double t = m == 1 ? 0.5 : static_cast<double>(idx[a]) / (m - 1);
          x(a) = box.lo(a) + t * (box.hi(a) - box.lo(a));
        }
        pts.push_back(std::move(x));
        for (int a = 0; a < dim; ++a) {
          if (++idx[a] < m) break;
          idx[a] = 0;
        }
      }
      break;
    }
    case Strategy::LatinHypercube: {
      Rng rng(seed);
      std::vector<std::vector<std::size_t>> perms(dim);
      for (int a = 0; a < dim; ++a) {
        perms[a].resize(count);
        for (std::size_t i = 0; i < count; ++i) perms[a][i] = i;
        for (std::size_t i = count; i > 1; --i) {
          const std::size_t j = rng.eng() % i;
          std::swap(perms[a][i - 1], perms[a][j]);
        }
      }
      pts.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        Eigen::VectorXd u(dim);
        for (int a = 0; a < dim; ++a) {
          u(a) = (static_cast<double>(perms[a][i]) + rng.uniform()) / static_cast<double>(count);
        }
        pts.push_back(box.from_unit(u));
      }
      break;
    }
    case Strategy::RandomUniform: {
      Rng rng(seed);
      pts.reserve(count);
      for (std::size_t i = 0; i < count; ++i) pts.push_back(rng.point_in(box));
      break;
    }
  }
  return pts;
}

Eigen::VectorXd VectorFieldSpec::eval(const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& theta) const {
  if (!f_param) throw std::logic_error("VectorFieldSpec: no input channel");
  return f_param(x, theta);
}

namespace {

template <class Spec>
Eigen::MatrixXd fd_jacobian(const Spec& spec, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const double h = spec.fd_step * (1.0 + x.cwiseAbs().maxCoeff());
  Eigen::VectorXd xp = x, xm = x;
  Eigen::MatrixXd J;
  for (int j = 0; j < n; ++j) {
    xp(j) = x(j) + h;
    xm(j) = x(j) - h;
    const Eigen::VectorXd col = (spec.f(xp) - spec.f(xm)) / (2.0 * h);
    if (j == 0) J.resize(col.size(), n);  // rows follow the field's output size
    J.col(j) = col;
    xp(j) = x(j);
    xm(j) = x(j);
  }
  return J;
}

}  // namespace

Eigen::MatrixXd jacobian_at(const VectorFieldSpec& f, const Eigen::VectorXd& x) {
  return f.jacobian ? f.jacobian(x) : fd_jacobian(f, x);
}

Eigen::MatrixXd jacobian_at(const DiscreteMapSpec& f, const Eigen::VectorXd& x) {
  return f.jacobian ? f.jacobian(x) : fd_jacobian(f, x);
}

namespace {

template <class Spec, class NormFn>
double sampled_sup(const Spec& f, const NormSpec& norm, const Sampler& sampler, NormFn&& fn) {
  const auto pts = sampler.points(f.domain);
  if (pts.empty()) throw std::invalid_argument("estimate: empty sample set");
  // Evaluate the first point serially so dimension errors surface on the
  // calling thread before the parallel sweep starts.
  const double first = fn(jacobian_at(f, pts[0]), norm);
  const double rest = par::max_reduce(
      pts.size(), [&](std::size_t i) { return fn(jacobian_at(f, pts[i]), norm); });
  return std::max(first, rest);
}

}  // namespace

double estimate_lip(const VectorFieldSpec& f, const NormSpec& spec, const Sampler& sampler) {
  return sampled_sup(f, spec, sampler,
                     [](const Eigen::MatrixXd& J, const NormSpec& s) { return matrix_norm(J, s); });
}

double estimate_lip(const DiscreteMapSpec& f, const NormSpec& spec, const Sampler& sampler) {
  return sampled_sup(f, spec, sampler,
                     [](const Eigen::MatrixXd& J, const NormSpec& s) { return matrix_norm(J, s); });
}

double estimate_osl(const VectorFieldSpec& f, const NormSpec& spec, const Sampler& sampler) {
  return sampled_sup(f, spec, sampler,
                     [](const Eigen::MatrixXd& J, const NormSpec& s) { return log_norm(J, s); });
}

double one_sided_pair_quotient(const VectorFieldSpec& f, const NormSpec& spec,
                               const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw std::invalid_argument("one_sided_pair_quotient: dim mismatch");
  const Eigen::VectorXd d = x - y;
  if (d.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("one_sided_pair_quotient: requires x != y");
  }
  const Eigen::VectorXd df = f.eval(x) - f.eval(y);
  switch (spec.kind()) {
    case NormKind::L1: {
      double num = 0.0;
      for (Eigen::Index i = 0; i < d.size(); ++i) num += sgn(d(i)) * df(i);
      return num / d.lpNorm<1>();
    }
    case NormKind::L2:
      return d.dot(df) / d.squaredNorm();
    case NormKind::WeightedL2: {
      const Eigen::VectorXd Pd = spec.P() * d;
      return Pd.dot(df) / d.dot(Pd);
    }
    case NormKind::Linf: {
      const double m = d.cwiseAbs().maxCoeff();
      double best = -std::numeric_limits<double>::infinity();
      for (int i : max_abs_indices(d)) best = std::max(best, d(i) * df(i));
      return best / (m * m);
    }
    default:
      throw std::invalid_argument(
          "one_sided_pair_quotient: supported specs are l1, l2, weighted-l2, linf");
  }
}

double differential_condition_residual(const VectorFieldSpec& f, const NormSpec& spec,
                                       const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  if (v.size() == 0 || v.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("differential_condition_residual: requires v != 0");
  }
  const Eigen::MatrixXd J = jacobian_at(f, x);
  const Eigen::VectorXd Jv = J * v;
  switch (spec.kind()) {
    case NormKind::L1: {
      double num = 0.0;
      for (Eigen::Index i = 0; i < v.size(); ++i) num += sgn(v(i)) * Jv(i);
      return num / v.lpNorm<1>();
    }
    case NormKind::L2:
      return v.dot(Jv) / v.squaredNorm();
    case NormKind::WeightedL2: {
      const Eigen::VectorXd Pv = spec.P() * v;
      return Pv.dot(Jv) / v.dot(Pv);
    }
    case NormKind::Linf: {
      const double m = v.cwiseAbs().maxCoeff();
      double best = -std::numeric_limits<double>::infinity();
      for (int i : max_abs_indices(v)) best = std::max(best, v(i) * Jv(i));
      return best / (m * m);
    }
    default:
      throw std::invalid_argument(
          "differential_condition_residual: supported specs are l1, l2, weighted-l2, linf");
  }
}

namespace {

// Directions along which the pointwise conditions attain the log norm of J:
// basis/sign-pattern vectors for l1 and linf, the top eigenvector of the
// symmetrized (weighted) matrix for l2.
std::vector<Eigen::VectorXd> structured_directions(const Eigen::MatrixXd& J,
                                                   const NormSpec& spec) {
  const int n = static_cast<int>(J.rows());
  std::vector<Eigen::VectorXd> dirs;
  switch (spec.kind()) {
    case NormKind::L1: {
      for (int j = 0; j < n; ++j) {
        for (double eps : {1e-3, 1e-6, 0.0}) {
          Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
          v(j) = 1.0;
          for (int i = 0; i < n; ++i) {
            if (i != j) v(i) = eps * sgn(J(i, j));
          }
          dirs.push_back(std::move(v));
        }
      }
      break;
    }
    case NormKind::Linf: {
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd v(n);
        for (int j = 0; j < n; ++j) v(j) = (1.0 - 1e-9) * sgn(J(i, j));
        v(i) = 1.0;
        dirs.push_back(std::move(v));
      }
      break;
    }
    case NormKind::L2: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (J + J.transpose()));
      dirs.push_back(es.eigenvectors().col(n - 1));
      break;
    }
    case NormKind::WeightedL2: {
      const Eigen::MatrixXd B = spec.theta() * J * spec.theta_inv();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (B + B.transpose()));
      dirs.push_back(spec.theta_inv() * es.eigenvectors().col(n - 1));
      break;
    }
    default:
      break;
  }
  return dirs;
}

}  // namespace

double differential_condition_sup(const VectorFieldSpec& f, const NormSpec& spec,
                                  const Sampler& x_sampler, int dirs_per_point,
                                  std::uint64_t seed) {
  if (spec.kind() != NormKind::L1 && spec.kind() != NormKind::L2 &&
      spec.kind() != NormKind::WeightedL2 && spec.kind() != NormKind::Linf) {
    throw std::invalid_argument("differential_condition_sup: unsupported spec");
  }
  const auto pts = x_sampler.points(f.domain);
  if (pts.empty()) throw std::invalid_argument("differential_condition_sup: empty sample set");
  const int n = f.domain.dim();

  // Random directions are shared across points; structured ones depend on J(x).
  Rng rng(seed);
  std::vector<Eigen::VectorXd> random_dirs;
  random_dirs.reserve(static_cast<std::size_t>(dirs_per_point));
  for (int k = 0; k < dirs_per_point; ++k) random_dirs.push_back(rng.unit_direction(n));

  return par::max_reduce(pts.size(), [&](std::size_t i) {
    const Eigen::MatrixXd J = jacobian_at(f, pts[i]);
    double best = -std::numeric_limits<double>::infinity();
    auto eval_dir = [&](const Eigen::VectorXd& v) {
      const Eigen::VectorXd Jv = J * v;
      switch (spec.kind()) {
        case NormKind::L1: {
          double num = 0.0;
          for (Eigen::Index r = 0; r < v.size(); ++r) num += sgn(v(r)) * Jv(r);
          return num / v.lpNorm<1>();
        }
        case NormKind::L2:
          return v.dot(Jv) / v.squaredNorm();
        case NormKind::WeightedL2: {
          const Eigen::VectorXd Pv = spec.P() * v;
          return Pv.dot(Jv) / v.dot(Pv);
        }
        case NormKind::Linf: {
          const double m = v.cwiseAbs().maxCoeff();
          double b = -std::numeric_limits<double>::infinity();
          for (int r : max_abs_indices(v)) b = std::max(b, v(r) * Jv(r));
          return b / (m * m);
        }
        default:
          return -std::numeric_limits<double>::infinity();  // excluded upfront
      }
    };
    for (const auto& v : random_dirs) best = std::max(best, eval_dir(v));
    for (const auto& v : structured_directions(J, spec)) best = std::max(best, eval_dir(v));
    return best;
  });
}

double pair_quotient_sup(const VectorFieldSpec& f, const NormSpec& spec, std::size_t n_pairs,
                         std::size_t n_short, std::uint64_t seed) {
  if (n_pairs + n_short == 0) throw std::invalid_argument("pair_quotient_sup: no pairs");
  if (spec.kind() != NormKind::L1 && spec.kind() != NormKind::L2 &&
      spec.kind() != NormKind::WeightedL2 && spec.kind() != NormKind::Linf) {
    throw std::invalid_argument("pair_quotient_sup: unsupported spec");
  }
  const int n = f.domain.dim();
  const double delta = 1e-3 * f.domain.diameter_inf();

  Rng rng(seed);
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  pairs.reserve(n_pairs + 2 * n_short);
  for (std::size_t k = 0; k < n_pairs; ++k) {
    Eigen::VectorXd x = rng.point_in(f.domain);
    Eigen::VectorXd y = rng.point_in(f.domain);
    if ((x - y).cwiseAbs().maxCoeff() < 1e-14) continue;
    pairs.emplace_back(std::move(x), std::move(y));
  }
  // Short pairs probe the differential limit; half use random directions,
  // half the structured directions of the Jacobian at x.
  for (std::size_t k = 0; k < n_short; ++k) {
    Eigen::VectorXd x = rng.point_in(f.domain);
    if (k % 2 == 0) {
      pairs.emplace_back(x, x + delta * rng.unit_direction(n));
    } else {
      const auto dirs = structured_directions(jacobian_at(f, x), spec);
      for (const auto& v : dirs) {
        const double nv = v.norm();
        if (nv < 1e-14) continue;
        pairs.emplace_back(x, x + (delta / nv) * v);
      }
    }
  }

  return par::max_reduce(pairs.size(), [&](std::size_t i) {
    return one_sided_pair_quotient(f, spec, pairs[i].first, pairs[i].second);
  });
}

}  // namespace ccert
