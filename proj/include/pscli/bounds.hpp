#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace pscli {

/// Certified lower bound on the root radius of a scheme family.
struct BoundReport {
  int p = 1;
  double mu = 0.0;
  double L = 0.0;
  std::optional<double> nu;  // scalar inversion value, when applicable
  std::string case_label;    // "case 1", "case 2", "case 3" or "diagonal"
  double rho_star = 0.0;

  /// (ρ*/(1−ρ*))·ln(1/ε).
  double ic_lower(double eps) const;
};

nlohmann::json to_json(const BoundReport& r);

/// Scalar inversion N = νI on spectra inside [μ, L]:
/// ρ* = max(|ᵖ√(−νμ) − 1|, |ᵖ√(−νL) − 1|). Requires ν ∈ (−2^p/L, 0).
BoundReport scalar_bound(int p, double mu, double L, double nu);

/// −(2/(ᵖ√L + ᵖ√μ))^p, the minimizer of scalar_bound over ν.
double optimal_nu(int p, double mu, double L);

/// (ᵖ√κ − 1)/(ᵖ√κ + 1).
double headline_bound(int p, double kappa);

/// Eigenvalues σ₁ ≥ σ₂ of −Diag(α, β)·B on the rotated two-point instance B.
struct SigmaPair {
  double s1;
  double s2;
};

SigmaPair diag_inversion_sigmas(double alpha, double beta, double mu, double L);

/// max(|ᵖ√σ₁ − 1|, |ᵖ√σ₂ − 1|). Throws InvalidArgument unless both σ lie in (0, 2^p).
BoundReport diag_inversion_bound(double alpha, double beta, double mu, double L, int p);

/// One row of the scalar-inversion bound table, split by sub-range of ν.
struct BoundTableRow {
  int case_id;
  std::string nu_range;  // human-readable sub-range
  double nu_lo;          // numeric endpoints of the sub-range
  double nu_hi;
  bool applicable;       // false when the sub-range is empty
  std::optional<double> minimizer;
  std::optional<double> bound;  // min of rho_star over the sub-range
  std::string requirement;
};

std::vector<BoundTableRow> bound_table(int p, double mu, double L);

nlohmann::json to_json(const BoundTableRow& r);

}  // namespace pscli
