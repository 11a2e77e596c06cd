#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pscli/linear_coefficients.hpp"
#include "pscli/polynomials.hpp"
#include "pscli/quadratics.hpp"
#include "pscli/types.hpp"

namespace pscli {

enum class SchemeKind { deterministic, expected_stochastic };

/// One draw of the (possibly random) coefficient and inversion matrices.
struct Realization {
  std::vector<Matrix> coeffs;  // C_0 .. C_{p−1}
  Matrix inversion;            // N
};

using CoefficientMap = std::function<std::vector<Matrix>(const Matrix&)>;
using InversionMap = std::function<Matrix(const Matrix&)>;
using Sampler = std::function<Realization(const Matrix&, std::mt19937_64&)>;

/// A p-stationary canonical linear iterative scheme
///
///   x^k = Σ_{j<p} C_j(A)·x^{k−p+j} + N(A)·b.
///
/// The maps return the expected matrices E C_j(X) and E N(X). Stochastic
/// schemes additionally carry a sampler drawing i.i.d. realizations. p = 0
/// is the degenerate one-step solver x = N(A)b.
class Scheme {
 public:
  Scheme(std::string name, int p, CoefficientMap coeffs, InversionMap inversion,
         SchemeKind kind = SchemeKind::deterministic, Sampler sampler = {});

  const std::string& name() const { return name_; }
  int p() const { return p_; }
  SchemeKind kind() const { return kind_; }

  /// Expected coefficient matrices at X; checks count and shapes.
  std::vector<Matrix> coefficients(const Matrix& X) const;
  /// Expected inversion matrix at X.
  Matrix inversion(const Matrix& X) const;

  bool has_sampler() const { return static_cast<bool>(sampler_); }
  Realization sample(const Matrix& X, std::mt19937_64& rng) const;

  /// Present when C_j(X) = a_j X + b_j I and N = νI.
  const std::optional<LinearCoefficients>& linear() const { return linear_; }
  Scheme& set_linear(LinearCoefficients c);

  /// Built-ins whose expected coefficient matrices commute pairwise.
  bool commuting() const { return commuting_; }
  Scheme& set_commuting(bool value);

  /// Spectrum interval the constructor was designed for, if any.
  const std::optional<Interval>& declared_range() const { return range_; }
  Scheme& set_declared_range(Interval range);

  const nlohmann::json& descriptor() const { return descriptor_; }
  Scheme& set_descriptor(nlohmann::json j);

 private:
  std::string name_;
  int p_;
  CoefficientMap coeffs_;
  InversionMap inversion_;
  SchemeKind kind_;
  Sampler sampler_;
  std::optional<LinearCoefficients> linear_;
  bool commuting_ = false;
  std::optional<Interval> range_;
  nlohmann::json descriptor_;
};

/// Block-companion lift of the recursion to R^{pd}:
/// z^k = M z^{k−1} + U N b with z = (x^{k−p+1}, …, x^k).
struct IterationMatrix {
  Matrix M;  // pd × pd
  Matrix U;  // pd × d, zeros stacked over I
  int p;
  int d;
};

IterationMatrix iteration_matrix(const Scheme& s, const Matrix& A);

/// Spectral radius of E M(A); 0 for the degenerate p = 0 scheme.
double rho_lambda(const Scheme& s, const Matrix& A);

/// Worst relative gap between det(λI − EM(A)) and det(λ^p I − Σ λ^k E C_k(A))
/// over the given samples.
double det_identity_check(const Scheme& s, const Matrix& A, std::span<const double> lambdas);

struct ConsistencyVerdict {
  enum class Status { consistent, fails_condition_1, fails_condition_2 };
  Status status;
  double residual;  // relative residual of L(1,A) = −E N(A) A
  double rho;       // rho_lambda(s, A)

  bool ok() const { return status == Status::consistent; }
  const char* label() const;
};

/// Condition 1: ‖L(1,A) + E N(A)·A‖ ≤ tol·‖E N(A)·A‖ with E N(A)·A
/// nonsingular. Condition 2: rho_lambda < 1 − 1e-12.
ConsistencyVerdict is_consistent(const Scheme& s, const Matrix& A, double tol = 1e-10);

/// z* = (I − EM)⁻¹ U E N(A) b (pd-vector); −A⁻¹b for p = 0.
/// Throws NumericalError when rho_lambda ≥ 1.
Vector fixed_point(const Scheme& s, const Quadratic& q);

/// Iterates of a run. Row k holds the newest point of the lifted state z^k,
/// so row 0 is the last initial point.
struct Trajectory {
  std::vector<Vector> iterates;
  std::vector<double> error_norms;     // ‖x_k − x*‖
  std::vector<double> objective_gaps;  // f(x_k) − f(x*), when available

  std::size_t size() const { return iterates.size(); }
};

enum class RunMode { expected, sampled };

/// Error norms above this threshold abort a run with DivergenceError.
inline constexpr double kDivergenceThreshold = 1e12;

/// Runs K lifted iterations from p initial points (one point when p = 0; the
/// one-step solver stops after its single iteration). Sampled mode draws
/// fresh realizations per iteration from a generator seeded by `seed`.
Trajectory run(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
               RunMode mode = RunMode::expected, std::uint64_t seed = 0);

/// Mean and covariance of the sampled iterates over independent trials.
/// Trial t uses a generator derived from (seed, t) only, so results do not
/// depend on the thread count.
struct MonteCarloSummary {
  std::vector<Vector> mean;        // E x_k estimates, k = 0..K
  std::vector<Matrix> covariance;  // per-k sample covariance of x_k
  int trials = 0;
};

MonteCarloSummary monte_carlo(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                              int trials, std::uint64_t seed, Execution exec = Execution::parallel);

/// Generator for sampled-mode trial `trial` under master seed `seed`.
std::mt19937_64 trial_generator(std::uint64_t seed, std::uint64_t trial);

/// Least-squares slope of ln(error_k) against k for k in [k_from, k_to].
double fit_log_slope(std::span<const double> errors, int k_from, int k_to);

struct ComplexityBounds {
  double lower;  // (ρ/(1−ρ))·ln(norm0/ε)
  double upper;  // (1/(1−ρ))·ln(norm0/ε)
};

ComplexityBounds iteration_complexity(double rho, double eps, double norm0 = 1.0);

}  // namespace pscli
