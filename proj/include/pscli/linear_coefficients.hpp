#pragma once

#include <vector>

#include "json.hpp"
#include "pscli/polynomials.hpp"

namespace pscli {

/// C_j(X) = a_j·X + b_j·I for j = 0..p−1 and N(X) = ν·I.
struct LinearCoefficients {
  int p = 1;
  std::vector<double> a;
  std::vector<double> b;
  double nu = 0.0;

  /// ℓ(λ, η) = λ^p − Σ_j (a_j η + b_j) λ^j.
  LinearFactorFamily family() const { return {p, a, b}; }

  /// max(|Σb − 1|, |Σa − ν|); zero for a consistent coefficient set.
  double consistency_residual() const;

  /// Throws InvalidArgument unless sizes match p and the residual is ≤ tol.
  void validate(double tol = 1e-10) const;
};

nlohmann::json to_json(const LinearCoefficients& c);
LinearCoefficients linear_coefficients_from_json(const nlohmann::json& j);

}  // namespace pscli
