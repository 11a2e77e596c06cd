#pragma once

#include <random>

namespace pscli {

template <class Rng>
Matrix random_symmetric_with_spectrum(const std::vector<double>& eigenvalues, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(eigenvalues.size());
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix G(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) G(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  Vector lam = Eigen::Map<const Vector>(eigenvalues.data(), d);
  Matrix A = Q * lam.asDiagonal() * Q.transpose();
  return 0.5 * (A + A.transpose());
}

}  // namespace pscli
