#include "accumulate.hpp"

#include "pscli/detail/sampling.hpp"
#include "pscli/errors.hpp"

namespace pscli::kernels_detail {

Moments::Moments(int K, Eigen::Index d)
    : sum(static_cast<std::size_t>(K) + 1, Vector::Zero(d)),
      outer(static_cast<std::size_t>(K) + 1, Matrix::Zero(d, d)) {}

void Moments::add_path(const std::vector<Vector>& path) {
  for (std::size_t k = 0; k < path.size(); ++k) {
    sum[k] += path[k];
    outer[k].noalias() += path[k] * path[k].transpose();
  }
  ++count;
}

void Moments::merge(const Moments& other) {
  for (std::size_t k = 0; k < sum.size(); ++k) {
    sum[k] += other.sum[k];
    outer[k] += other.outer[k];
  }
  count += other.count;
}

void accumulate_trials(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                       std::uint64_t seed, int first, int last, Moments& m) {
  std::vector<Vector> path;
  for (int t = first; t < last; ++t) {
    auto rng = trial_generator(seed, static_cast<std::uint64_t>(t));
    pscli::detail::sampled_path(s, q, init, K, rng, path);
    m.add_path(path);
  }
}

MonteCarloSummary summarize(const Moments& m) {
  MonteCarloSummary out;
  out.trials = m.count;
  const double n = m.count;
  out.mean.reserve(m.sum.size());
  out.covariance.reserve(m.sum.size());
  for (std::size_t k = 0; k < m.sum.size(); ++k) {
    Vector mean = m.sum[k] / n;
    Matrix cov = Matrix::Zero(mean.size(), mean.size());
    if (m.count > 1) cov = (m.outer[k] - n * mean * mean.transpose()) / (n - 1.0);
    out.mean.push_back(std::move(mean));
    out.covariance.push_back(std::move(cov));
  }
  return out;
}

void check_monte_carlo_args(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                            int trials) {
  if (!s.has_sampler()) throw InvalidArgument("monte_carlo: scheme " + s.name() + " has no sampler");
  if (trials < 1) throw InvalidArgument("monte_carlo: need at least one trial");
  if (K < 1) throw InvalidArgument("monte_carlo: need at least one iteration");
  pscli::detail::check_init(s, q, init);
}

}  // namespace pscli::kernels_detail
