#pragma once

// Data-parallel kernels. `pscli::kernels` holds the OpenMP versions used by
// the library; `pscli::reference` holds plain serial loops kept as the
// oracle for tests and the baseline for benchmarks.

#include <cstdint>
#include <span>
#include <vector>

#include "pscli/polynomials.hpp"

namespace pscli {

class Scheme;
class Quadratic;
struct MonteCarloSummary;

namespace kernels {

/// root_radius(eval_factor(fam, η)) for every η, in input order.
std::vector<double> radius_curve(const LinearFactorFamily& fam, std::span<const double> etas);

MonteCarloSummary monte_carlo(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                              int trials, std::uint64_t seed);

/// Number of OpenMP threads the kernels will use (1 without OpenMP).
int max_threads();

}  // namespace kernels

namespace reference {

std::vector<double> radius_curve(const LinearFactorFamily& fam, std::span<const double> etas);

MonteCarloSummary monte_carlo(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                              int trials, std::uint64_t seed);

}  // namespace reference
}  // namespace pscli
