#include "pscli/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pscli/detail/clusters.hpp"
#include "pscli/errors.hpp"
#include "pscli/kernels.hpp"

namespace pscli {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double binomial(int n, int k) {
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

double quadratic_radius(double c0, double c1) {
  const double disc = c1 * c1 - 4.0 * c0;
  if (std::abs(disc) <= 64.0 * kEps * (c1 * c1 + 4.0 * std::abs(c0))) return std::abs(c1) / 2.0;
  if (disc < 0.0) return std::sqrt(c0);
  const double sq = std::sqrt(disc);
  const double big = -(c1 + std::copysign(sq, c1)) / 2.0;
  if (big == 0.0) return 0.0;
  return std::max(std::abs(big), std::abs(c0 / big));
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw InvalidArgument("Polynomial: degree must be at least 1");
  if (coeffs_.back() != 1.0) throw InvalidArgument("Polynomial: leading coefficient must be exactly 1");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw InvalidArgument("Polynomial: coefficients must be finite");
}

double Polynomial::operator()(double z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> roots(const Polynomial& q) {
  const int p = q.degree();
  if (p == 1) return {Complex(-q[0], 0.0)};
  Matrix companion = Matrix::Zero(p, p);
  for (int i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  for (int k = 0; k < p; ++k) companion(k, p - 1) = -q[k];
  return detail::refined_eigenvalues(std::move(companion));
}

double root_radius(const Polynomial& q) {
  switch (q.degree()) {
    case 1:
      return std::abs(q[0]);
    case 2:
      return quadratic_radius(q[0], q[1]);
    default: {
      double radius = 0.0;
      for (const auto& z : roots(q)) radius = std::max(radius, std::abs(z));
      return radius;
    }
  }
}

Polynomial economic(int p, double r) {
  if (p < 1) throw InvalidArgument("economic: p must be at least 1");
  if (!(r >= 0.0)) throw InvalidArgument("economic: r must be non-negative");
  const double shift = 1.0 - std::pow(r, 1.0 / p);
  std::vector<double> c(static_cast<std::size_t>(p) + 1);
  for (int k = 0; k <= p; ++k) c[static_cast<std::size_t>(k)] = binomial(p, k) * std::pow(-shift, p - k);
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

double min_radius_bound(int p, double r) {
  if (p < 1) throw InvalidArgument("min_radius_bound: p must be at least 1");
  if (r < 0.0 && r >= -1e-12) r = 0.0;
  if (r < 0.0) return 1.0;
  return std::abs(std::pow(r, 1.0 / p) - 1.0);
}

Polynomial eval_factor(const LinearFactorFamily& fam, double eta) {
  if (fam.p < 1) throw InvalidArgument("LinearFactorFamily: p must be at least 1");
  const auto p = static_cast<std::size_t>(fam.p);
  if (fam.a.size() > p || fam.b.size() > p)
    throw InvalidArgument("LinearFactorFamily: deg a and deg b must be below p");
  std::vector<double> c(p + 1, 0.0);
  for (std::size_t k = 0; k < fam.a.size(); ++k) c[k] -= eta * fam.a[k];
  for (std::size_t k = 0; k < fam.b.size(); ++k) c[k] -= fam.b[k];
  c[p] = 1.0;
  return Polynomial(std::move(c));
}

std::vector<double> interval_grid(std::span<const Interval> set, int grid_points) {
  if (set.empty()) throw InvalidArgument("interval set must be non-empty");
  if (grid_points < 2) throw InvalidArgument("need at least 2 grid points per interval");
  std::vector<double> etas;
  etas.reserve(set.size() * static_cast<std::size_t>(grid_points));
  for (const auto& iv : set) {
    if (!(iv.lo <= iv.hi)) throw InvalidArgument("interval must satisfy lo <= hi");
    if (iv.lo == iv.hi) {
      etas.push_back(iv.lo);
      continue;
    }
    const double step = (iv.hi - iv.lo) / (grid_points - 1);
    for (int i = 0; i < grid_points - 1; ++i) etas.push_back(iv.lo + i * step);
    etas.push_back(iv.hi);
  }
  return etas;
}

WorstCase worst_case_radius(const LinearFactorFamily& fam, std::span<const Interval> set, int grid_points,
                            Execution exec) {
  const auto etas = interval_grid(set, grid_points);
  const auto radii = exec == Execution::parallel ? kernels::radius_curve(fam, etas)
                                                 : reference::radius_curve(fam, etas);
  const auto it = std::max_element(radii.begin(), radii.end());
  const auto idx = static_cast<std::size_t>(it - radii.begin());
  return {*it, etas[idx]};
}

}  // namespace pscli
