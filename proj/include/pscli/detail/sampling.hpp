#pragma once

#include <random>
#include <span>
#include <vector>

#include "pscli/scli.hpp"

namespace pscli::detail {

/// One sampled-mode path: fills out[k] with x_k for k = 0..K.
void sampled_path(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                  std::mt19937_64& rng, std::vector<Vector>& out);

/// Throws InvalidArgument unless init holds max(p, 1) points of dimension d.
void check_init(const Scheme& s, const Quadratic& q, std::span<const Vector> init);

}  // namespace pscli::detail
