#include <algorithm>

#include "accumulate.hpp"
#include "pscli/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pscli::kernels {

namespace {
// Fixed block count: the reduction order depends only on the trial count.
constexpr int kBlocks = 64;
}  // namespace

std::vector<double> radius_curve(const LinearFactorFamily& fam, std::span<const double> etas) {
  std::vector<double> out(etas.size());
  const auto n = static_cast<std::ptrdiff_t>(etas.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = root_radius(eval_factor(fam, etas[static_cast<std::size_t>(i)]));
  return out;
}

MonteCarloSummary monte_carlo(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                              int trials, std::uint64_t seed) {
  kernels_detail::check_monte_carlo_args(s, q, init, K, trials);
  const int blocks = std::min(kBlocks, trials);
  std::vector<kernels_detail::Moments> parts(static_cast<std::size_t>(blocks),
                                             kernels_detail::Moments(K, q.dim()));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(blocks));

#pragma omp parallel for schedule(dynamic, 1)
  for (int blk = 0; blk < blocks; ++blk) {
    const int first = static_cast<int>(static_cast<long long>(trials) * blk / blocks);
    const int last = static_cast<int>(static_cast<long long>(trials) * (blk + 1) / blocks);
    try {
      kernels_detail::accumulate_trials(s, q, init, K, seed, first, last, parts[static_cast<std::size_t>(blk)]);
    } catch (...) {
      errors[static_cast<std::size_t>(blk)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  kernels_detail::Moments total(K, q.dim());
  for (const auto& part : parts) total.merge(part);
  return kernels_detail::summarize(total);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace pscli::kernels
