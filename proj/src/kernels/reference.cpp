#include "accumulate.hpp"
#include "pscli/kernels.hpp"

namespace pscli::reference {

std::vector<double> radius_curve(const LinearFactorFamily& fam, std::span<const double> etas) {
  std::vector<double> out;
  out.reserve(etas.size());
  for (double eta : etas) out.push_back(root_radius(eval_factor(fam, eta)));
  return out;
}

MonteCarloSummary monte_carlo(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                              int trials, std::uint64_t seed) {
  kernels_detail::check_monte_carlo_args(s, q, init, K, trials);
  kernels_detail::Moments total(K, q.dim());
  kernels_detail::accumulate_trials(s, q, init, K, seed, 0, trials, total);
  return kernels_detail::summarize(total);
}

}  // namespace pscli::reference
