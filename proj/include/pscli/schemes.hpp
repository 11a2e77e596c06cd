#pragma once

#include "json.hpp"
#include "pscli/linear_coefficients.hpp"
#include "pscli/scli.hpp"

namespace pscli {

/// Scheme with C_j(X) = a_j X + b_j I and N = νI, declared on [mu, L].
Scheme linear_scheme(std::string name, const LinearCoefficients& c, std::optional<Interval> range = std::nullopt);

/// Fixed-step gradient descent x ← x − step·(Ax + b).
Scheme gradient_descent(double step, std::optional<Interval> range = std::nullopt);

/// Gradient descent with step 2/(μ+L).
Scheme fgd(double mu, double L);
Scheme heavy_ball(double mu, double L);
Scheme agd(double mu, double L);

/// One-step solver x = −X⁻¹b (p = 0).
Scheme newton();

/// Randomized coordinate descent. Each step picks i uniformly and applies
/// x ← x − e_i (a_iᵀx + b_i)/A_ii; the expected map is I − D⁻¹X/d.
Scheme jacobi_scd();

struct SdcaExpected {
  Matrix E;
  double predicted_rho;
};

/// Expected SDCA dual iteration matrix for the squared-loss ridge problem
/// with n samples and regularization λ, with ρ(E) = 1 − 1/(2/λ + n).
SdcaExpected sdca_expected(int n, double lambda);

/// Two-step coefficients fitted so ℓ(·, μ) and ℓ(·, L) are economic. ν ∈ (−4/L, 0).
LinearCoefficients derive_2scli(double mu, double L, double nu);

/// p-step generalization: 2p coefficient-matching equations solved by LU. ν ∈ (−2^p/L, 0).
LinearCoefficients derive_linear_pscli(double mu, double L, int p, double nu);

/// Three-step method tuned to spectra clustered near μ and L.
Scheme a3(double mu = 2.0, double L = 100.0);

/// Default half-width of the clusters of the spectral-gap family.
inline constexpr double kGapWidth = 1.5;

/// [μ, μ+ε] ∪ [L−ε, L].
std::vector<Interval> spectral_gap_set(double mu, double L, double eps = kGapWidth);

/// Spectral construction C_k(X) = U·Diag(−C(p,k)(ᵖ√(−νλ_i) − 1)^{p−k})·Uᵀ
/// from the eigendecomposition X = UΛUᵀ, with N = νI. The maps reject X
/// whose spectrum leaves (0, 2^p/(−ν)).
Scheme optimal_spectral(int p, double nu);

/// Same scheme, validated against A and declared on [λ_min(A), λ_max(A)].
Scheme optimal_spectral(const Matrix& A, int p, double nu);

/// Builds a scheme from a descriptor such as {"name": "agd", "mu": 2, "L": 100}.
Scheme scheme_from_json(const nlohmann::json& j);

}  // namespace pscli
