#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pscli/scli.hpp"

namespace pscli::kernels_detail {

// Running first and second moments of x_k over a contiguous range of trials.
struct Moments {
  std::vector<Vector> sum;
  std::vector<Matrix> outer;
  int count = 0;

  Moments(int K, Eigen::Index d);
  void add_path(const std::vector<Vector>& path);
  void merge(const Moments& other);
};

void accumulate_trials(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                       std::uint64_t seed, int first, int last, Moments& m);

MonteCarloSummary summarize(const Moments& m);

void check_monte_carlo_args(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                            int trials);

}  // namespace pscli::kernels_detail
