#include "pscli/firstorder.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pscli/errors.hpp"

namespace pscli {

GradientOracle quadratic_oracle(const Quadratic& q) {
  GradientOracle f;
  f.dim = q.dim();
  f.eval = [q](const Vector& x) { return q.value(x); };
  f.grad = [q](const Vector& x) { return q.gradient(x); };
  f.mu = q.mu();
  f.L = q.L();
  f.known_minimizer = minimizer(q);
  return f;
}

namespace {

// log cosh without overflow.
double log_cosh(double t) {
  const double a = std::abs(t);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

constexpr double kMaxShift = 20.0;

}  // namespace

GradientOracle logcosh_oracle(Eigen::Index d, double mu, double L) {
  if (d < 2) throw InvalidArgument("logcosh_oracle: need d >= 2");
  if (!(mu > 0.0) || !(L > mu)) throw InvalidArgument("logcosh_oracle: need 0 < mu < L");

  // sech²(t_i) = 1 − i/(d−1); the last coordinate is capped.
  Vector t(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double s2 = 1.0 - static_cast<double>(i) / static_cast<double>(d - 1);
    t(i) = s2 > 0.0 ? std::min(std::acosh(1.0 / std::sqrt(s2)), kMaxShift) : kMaxShift;
  }
  const double w = L - mu;

  GradientOracle f;
  f.dim = d;
  f.mu = mu;
  f.L = L;
  f.known_minimizer = Vector::Zero(d);
  f.eval = [t, mu, w](const Vector& x) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      sum += log_cosh(x(i) + t(i)) - log_cosh(t(i)) - std::tanh(t(i)) * x(i);
    return 0.5 * mu * x.squaredNorm() + w * sum;
  };
  // tanh(x + t) − tanh(t) = sinh(x) / (cosh(x + t)·cosh(t)).
  f.grad = [t, mu, w](const Vector& x) {
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double lhs = std::abs(x(i) + t(i));
      double diff;
      if (lhs < 350.0)
        diff = std::sinh(x(i)) / (std::cosh(x(i) + t(i)) * std::cosh(t(i)));
      else
        diff = std::tanh(x(i) + t(i)) - std::tanh(t(i));
      g(i) = mu * x(i) + w * diff;
    }
    return g;
  };
  return f;
}

namespace {

Vector gaussian(Eigen::Index d, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = n(rng);
  return v;
}

}  // namespace

double lipschitz_ratio(const GradientOracle& f, int pairs, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const Vector x = gaussian(f.dim, rng, scale);
    const Vector y = gaussian(f.dim, rng, scale);
    const double dist = (x - y).norm();
    if (dist == 0.0) continue;
    worst = std::max(worst, (f.grad(x) - f.grad(y)).norm() / (f.L * dist));
  }
  return worst;
}

double gradient_check(const GradientOracle& f, int probes, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < probes; ++i) {
    const Vector x = gaussian(f.dim, rng, scale);
    const Vector g = f.grad(x);
    Vector fd(f.dim);
    for (Eigen::Index j = 0; j < f.dim; ++j) {
      const double h = 1e-5 * std::max(1.0, std::abs(x(j)));
      Vector xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      fd(j) = (f.eval(xp) - f.eval(xm)) / (2.0 * h);
    }
    worst = std::max(worst, (fd - g).norm() / std::max(g.norm(), 1e-8));
  }
  return worst;
}

FirstOrderMethod::FirstOrderMethod(LinearCoefficients c) : c_(std::move(c)) { c_.validate(); }

Vector FirstOrderMethod::step(std::span<const Vector> window, std::span<const Vector> grads) const {
  if (window.size() != static_cast<std::size_t>(c_.p) || grads.size() != window.size())
    throw InvalidArgument("first-order step: need p iterates and p gradients");
  Vector next = Vector::Zero(window[0].size());
  for (int j = 0; j < c_.p; ++j) {
    next.noalias() += c_.b[j] * window[j];
    next.noalias() += c_.a[j] * grads[j];
  }
  return next;
}

FirstOrderMethod extend(const LinearCoefficients& c) { return FirstOrderMethod(c); }

Trajectory run_extension(const GradientOracle& f, const LinearCoefficients& c, std::span<const Vector> init,
                         int K) {
  if (K < 1) throw InvalidArgument("run_extension: need at least one iteration");
  const auto method = extend(c);
  if (init.size() != static_cast<std::size_t>(c.p))
    throw InvalidArgument("run_extension: need p initial points");
  for (const auto& x : init)
    if (x.size() != f.dim) throw InvalidArgument("run_extension: initial point has the wrong dimension");

  std::vector<Vector> window(init.begin(), init.end());
  std::vector<Vector> grads;
  for (const auto& x : window) grads.push_back(f.grad(x));

  Trajectory t;
  const double f_star = f.known_minimizer ? f.eval(*f.known_minimizer) : 0.0;
  auto record = [&](const Vector& x, const Vector& g, int k) {
    const double magnitude = f.known_minimizer ? (x - *f.known_minimizer).norm() : g.norm();
    if (!std::isfinite(magnitude) || magnitude > kDivergenceThreshold)
      throw DivergenceError("diverged at iteration " + std::to_string(k));
    t.iterates.push_back(x);
    if (f.known_minimizer) {
      t.error_norms.push_back(magnitude);
      t.objective_gaps.push_back(f.eval(x) - f_star);
    }
  };

  record(window.back(), grads.back(), 0);
  for (int k = 1; k <= K; ++k) {
    Vector next = method.step(window, grads);
    Vector g = f.grad(next);
    std::rotate(window.begin(), window.begin() + 1, window.end());
    std::rotate(grads.begin(), grads.begin() + 1, grads.end());
    window.back() = next;
    grads.back() = g;
    record(next, g, k);
  }
  return t;
}

LocalRateResult local_rate_check(const GradientOracle& f, const LinearCoefficients& c,
                                 std::span<const double> deltas, int k_from, int k_to) {
  if (!f.known_minimizer) throw InvalidArgument("local_rate_check: oracle needs a known minimizer");
  if (deltas.empty()) throw InvalidArgument("local_rate_check: no initialization distances");
  const double rho = worst_case_radius(c.family(), std::vector<Interval>{{f.mu, f.L}}).radius;
  if (!(rho > 0.0) || !(rho < 1.0)) throw NumericalError("local_rate_check: factor family is not contractive");

  LocalRateResult res;
  res.target = std::log(rho);
  const Vector dir = Vector::Ones(f.dim).normalized();
  for (double delta : deltas) {
    std::vector<Vector> init(static_cast<std::size_t>(c.p), *f.known_minimizer + delta * dir);
    const auto traj = run_extension(f, c, init, k_to);
    res.delta = delta;
    res.slope = fit_log_slope(traj.error_norms, k_from, k_to);
    res.relative_gap = std::abs(res.slope / res.target - 1.0);
    if (res.slope <= res.target + 0.05 && res.relative_gap <= 0.05) {
      res.passed = true;
      return res;
    }
  }
  return res;
}

}  // namespace pscli
