#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pscli/linear_coefficients.hpp"
#include "pscli/quadratics.hpp"
#include "pscli/scli.hpp"

namespace pscli {

/// Smooth strongly convex objective accessed through values and gradients.
struct GradientOracle {
  Eigen::Index dim = 0;
  std::function<double(const Vector&)> eval;
  std::function<Vector(const Vector&)> grad;
  double mu = 0.0;
  double L = 0.0;
  std::optional<Vector> known_minimizer;
};

/// f(x) = ½xᵀAx + bᵀx, with its exact minimizer.
GradientOracle quadratic_oracle(const Quadratic& q);

/// f(x) = (μ/2)‖x‖² + (L−μ)·Σ_i [log cosh(x_i + t_i) − log cosh t_i − tanh(t_i)·x_i].
/// Shifts t_i spread the Hessian at the minimizer x* = 0 over [μ, L]
/// (t_0 = 0 gives L; the last coordinate gives ≈ μ). Requires d ≥ 2.
GradientOracle logcosh_oracle(Eigen::Index d, double mu, double L);

/// Largest ‖∇f(x)−∇f(y)‖ / (L‖x−y‖) over random pairs drawn with `seed`.
double lipschitz_ratio(const GradientOracle& f, int pairs, std::uint64_t seed, double scale = 1.0);

/// Largest relative gap between central differences and grad over random probes.
double gradient_check(const GradientOracle& f, int probes, std::uint64_t seed, double scale = 1.0);

/// The canonical first-order extension
///   x^k = Σ_j b_j x^{k−p+j} + Σ_j a_j ∇f(x^{k−p+j}).
class FirstOrderMethod {
 public:
  explicit FirstOrderMethod(LinearCoefficients c);

  const LinearCoefficients& coefficients() const { return c_; }

  /// window holds the last p iterates, oldest first; grads their gradients.
  Vector step(std::span<const Vector> window, std::span<const Vector> grads) const;

 private:
  LinearCoefficients c_;
};

FirstOrderMethod extend(const LinearCoefficients& c);

/// Runs K iterations from p initial points. Error norms are filled when the
/// oracle knows its minimizer; objective gaps need it too. Error or gradient
/// norms above kDivergenceThreshold raise DivergenceError.
Trajectory run_extension(const GradientOracle& f, const LinearCoefficients& c, std::span<const Vector> init,
                         int K);

struct LocalRateResult {
  bool passed = false;
  double delta = 0.0;        // initialization distance that was accepted (or last tried)
  double slope = 0.0;        // fitted ln-error slope
  double target = 0.0;       // ln ρ* of the factor family over [μ, L]
  double relative_gap = 0.0; // |slope/target − 1|
};

/// Starts all p points at δ along the normalized ones direction from x*, for
/// δ in `deltas`, fits the ln-error slope on [k_from, k_to] and accepts when
/// slope ≤ target + 0.05 and the slope is within 5% of the target.
LocalRateResult local_rate_check(const GradientOracle& f, const LinearCoefficients& c,
                                 std::span<const double> deltas, int k_from = 100, int k_to = 500);

}  // namespace pscli
