#pragma once

#include <random>
#include <vector>

#include "pscli/quadratics.hpp"

namespace testing {

// Random SPD matrix with eigenvalues drawn uniformly from [lo, hi]; both
// endpoints are included when `pin_endpoints` is set.
inline pscli::Matrix random_spd(int d, double lo, double hi, std::mt19937_64& rng, bool pin_endpoints = true) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> eigs(static_cast<std::size_t>(d));
  for (auto& e : eigs) e = u(rng);
  if (pin_endpoints && d >= 2) {
    eigs[0] = lo;
    eigs[1] = hi;
  }
  return pscli::random_symmetric_with_spectrum(eigs, rng);
}

inline pscli::Vector random_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  pscli::Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = n(rng);
  return v;
}

}  // namespace testing
