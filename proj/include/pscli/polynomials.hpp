#pragma once

#include <span>
#include <vector>

#include "pscli/types.hpp"

namespace pscli {

/// Monic real polynomial c₀ + c₁z + … + z^p, stored lowest degree first.
class Polynomial {
 public:
  /// Requires degree ≥ 1, finite entries and a leading coefficient of exactly 1.
  explicit Polynomial(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

  double operator()(double z) const;
  Complex operator()(Complex z) const;

 private:
  std::vector<double> coeffs_;
};

/// All roots with multiplicity, via eigenvalues of the balanced companion
/// matrix. Numerically multiple roots are collapsed onto their centroid.
std::vector<Complex> roots(const Polynomial& q);

/// Largest root modulus. Degrees 1 and 2 use the closed form.
double root_radius(const Polynomial& q);

/// (z − (1 − r^{1/p}))^p, the unique minimizer of the root radius among
/// monic real degree-p polynomials with q(1) = r.
Polynomial economic(int p, double r);

/// Lower bound on root_radius(q) for monic real q of degree p with q(1) = r:
/// |r^{1/p} − 1| when r ≥ 0 and 1 when r < 0. Values of r in [−1e-12, 0)
/// are treated as 0.
double min_radius_bound(int p, double r);

/// ℓ(λ, η) = λ^p − (η·a(λ) + b(λ)) with deg a, deg b < p.
struct LinearFactorFamily {
  int p = 1;
  std::vector<double> a;  // a₀..a_{p−1}; shorter vectors are zero-padded
  std::vector<double> b;
};

/// The monic polynomial ℓ(·, η).
Polynomial eval_factor(const LinearFactorFamily& fam, double eta);

/// Closed interval [lo, hi] of candidate Hessian eigenvalues.
struct Interval {
  double lo;
  double hi;
};

struct WorstCase {
  double radius;
  double eta;
};

enum class Execution { parallel, serial };

/// Uniform grid of `grid_points` values per interval, endpoints included
/// (a degenerate interval contributes its single point once).
std::vector<double> interval_grid(std::span<const Interval> set, int grid_points);

/// max over the grid of root_radius(eval_factor(fam, η)) and the first
/// grid point attaining it.
WorstCase worst_case_radius(const LinearFactorFamily& fam, std::span<const Interval> set,
                            int grid_points = 10001, Execution exec = Execution::parallel);

}  // namespace pscli
