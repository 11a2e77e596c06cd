#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pscli/types.hpp"

namespace pscli {

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;  // orthonormal columns
};

/// Relative asymmetry ‖A − Aᵀ‖_F / ‖A‖_F (0 for the zero matrix).
double asymmetry(const Matrix& A);

/// Symmetric eigendecomposition. Rejects non-square input and input whose
/// relative asymmetry exceeds 1e-12.
SymmetricEigen eigen_decompose(const Matrix& A);

/// Ascending eigenvalues of a symmetric matrix.
std::vector<double> spectrum(const Matrix& A);

/// f(x) = ½xᵀAx + bᵀx with A symmetric positive definite.
///
/// The constructor symmetrizes A as (A + Aᵀ)/2, printing a warning to stderr
/// when the input asymmetry exceeds 1e-12, and rejects matrices whose
/// eigenvalues are not all strictly positive. The spectrum is cached.
class Quadratic {
 public:
  Quadratic(Matrix A, Vector b);

  int dim() const { return static_cast<int>(b_.size()); }
  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  double mu() const { return eigenvalues_.front(); }
  double L() const { return eigenvalues_.back(); }
  double condition_number() const { return L() / mu(); }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

 private:
  Matrix A_;
  Vector b_;
  std::vector<double> eigenvalues_;
};

/// x* = −A⁻¹b. Throws NumericalError when the smallest eigenvalue is below 1e-12.
Vector minimizer(const Quadratic& q);

/// Diag(L, μ, …, μ) of size d. `b` defaults to zero (minimizer at the origin).
Quadratic diag_hard_instance(int d, double mu, double L, Vector b = {});

/// Diag(μ, L) rotated by 45°: [[(L+μ)/2, (μ−L)/2], [(μ−L)/2, (L+μ)/2]].
/// Eigenvector (1,1)/√2 carries μ and (1,−1)/√2 carries L.
Matrix rotated_hard_instance(double mu, double L);

/// The rotated 2×2 instance with b = −A·(100, 100), minimizer (100, 100).
Quadratic spectral_gap_instance(double mu = 2.0, double L = 100.0);

/// A = ¼·tridiag(−1, 2, −1), b = −e₁.
Quadratic nesterov_lb_matrix(int d);

/// Dual of ridge regression with φ_i(y) = y² and x_i = 𝟙/√n:
/// D(α) = ½αᵀ((1/2n)I + (1/(λn²))𝟙𝟙ᵀ)α, minimizer α* = 0.
Quadratic sdca_dual_quadratic(int n, double lambda);

/// Random symmetric matrix with the given eigenvalues and a Haar-ish random
/// orthogonal basis (QR of a Gaussian matrix).
template <class Rng>
Matrix random_symmetric_with_spectrum(const std::vector<double>& eigenvalues, Rng& rng);

nlohmann::json to_json(const Quadratic& q);
Quadratic quadratic_from_json(const nlohmann::json& j);
Quadratic load_quadratic(const std::string& path);

}  // namespace pscli

#include "pscli/detail/random_matrix.hpp"
