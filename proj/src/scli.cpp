#include "pscli/scli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pscli/detail/clusters.hpp"
#include "pscli/detail/sampling.hpp"
#include "pscli/errors.hpp"
#include "pscli/kernels.hpp"

namespace pscli {

// ---------------------------------------------------------------------------
// LinearCoefficients

double LinearCoefficients::consistency_residual() const {
  double sa = 0.0;
  double sb = 0.0;
  for (double v : a) sa += v;
  for (double v : b) sb += v;
  return std::max(std::abs(sb - 1.0), std::abs(sa - nu));
}

void LinearCoefficients::validate(double tol) const {
  if (p < 1) throw InvalidArgument("LinearCoefficients: p must be at least 1");
  if (a.size() != static_cast<std::size_t>(p) || b.size() != static_cast<std::size_t>(p))
    throw InvalidArgument("LinearCoefficients: a and b must have p entries");
  if (consistency_residual() > tol)
    throw InvalidArgument("LinearCoefficients: inconsistent coefficients (need sum b = 1, sum a = nu)");
}

nlohmann::json to_json(const LinearCoefficients& c) {
  return {{"p", c.p}, {"a", c.a}, {"b", c.b}, {"nu", c.nu}};
}

LinearCoefficients linear_coefficients_from_json(const nlohmann::json& j) {
  try {
    LinearCoefficients c;
    c.a = j.at("a").get<std::vector<double>>();
    c.b = j.at("b").get<std::vector<double>>();
    c.nu = j.at("nu").get<double>();
    c.p = j.contains("p") ? j.at("p").get<int>() : static_cast<int>(c.a.size());
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("linear coefficients JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Scheme

Scheme::Scheme(std::string name, int p, CoefficientMap coeffs, InversionMap inversion, SchemeKind kind,
               Sampler sampler)
    : name_(std::move(name)),
      p_(p),
      coeffs_(std::move(coeffs)),
      inversion_(std::move(inversion)),
      kind_(kind),
      sampler_(std::move(sampler)),
      descriptor_({{"name", name_}}) {
  if (p_ < 0) throw InvalidArgument("Scheme: lifting factor must be non-negative");
  if (!inversion_) throw InvalidArgument("Scheme: inversion map is required");
  if (p_ > 0 && !coeffs_) throw InvalidArgument("Scheme: coefficient map is required for p >= 1");
}

std::vector<Matrix> Scheme::coefficients(const Matrix& X) const {
  if (p_ == 0) return {};
  auto C = coeffs_(X);
  if (C.size() != static_cast<std::size_t>(p_))
    throw InvalidArgument("Scheme " + name_ + ": coefficient map returned the wrong number of matrices");
  for (const auto& c : C)
    if (c.rows() != X.rows() || c.cols() != X.cols())
      throw InvalidArgument("Scheme " + name_ + ": coefficient matrix has the wrong shape");
  return C;
}

Matrix Scheme::inversion(const Matrix& X) const {
  Matrix N = inversion_(X);
  if (N.rows() != X.rows() || N.cols() != X.cols())
    throw InvalidArgument("Scheme " + name_ + ": inversion matrix has the wrong shape");
  return N;
}

Realization Scheme::sample(const Matrix& X, std::mt19937_64& rng) const {
  if (!sampler_) throw InvalidArgument("Scheme " + name_ + " has no sampler");
  return sampler_(X, rng);
}

Scheme& Scheme::set_linear(LinearCoefficients c) {
  c.validate();
  if (c.p != p_) throw InvalidArgument("Scheme: linear coefficients have the wrong lifting factor");
  linear_ = std::move(c);
  return *this;
}

Scheme& Scheme::set_commuting(bool value) {
  commuting_ = value;
  return *this;
}

Scheme& Scheme::set_declared_range(Interval range) {
  range_ = range;
  return *this;
}

Scheme& Scheme::set_descriptor(nlohmann::json j) {
  descriptor_ = std::move(j);
  return *this;
}

// ---------------------------------------------------------------------------
// Iteration matrix and its spectrum

IterationMatrix iteration_matrix(const Scheme& s, const Matrix& A) {
  if (s.p() == 0) throw InvalidArgument("degenerate scheme (p = 0): use fixed_point directly");
  const int p = s.p();
  const int d = static_cast<int>(A.rows());
  const auto C = s.coefficients(A);
  IterationMatrix im{Matrix::Zero(p * d, p * d), Matrix::Zero(p * d, d), p, d};
  for (int i = 0; i + 1 < p; ++i) im.M.block(i * d, (i + 1) * d, d, d).setIdentity();
  for (int j = 0; j < p; ++j) im.M.block((p - 1) * d, j * d, d, d) = C[static_cast<std::size_t>(j)];
  im.U.bottomRows(d).setIdentity();
  return im;
}

double rho_lambda(const Scheme& s, const Matrix& A) {
  if (s.p() == 0) return 0.0;
  double rho = 0.0;
  for (const auto& z : detail::refined_eigenvalues(iteration_matrix(s, A).M)) rho = std::max(rho, std::abs(z));
  return rho;
}

double det_identity_check(const Scheme& s, const Matrix& A, std::span<const double> lambdas) {
  if (lambdas.empty()) throw InvalidArgument("det_identity_check: need at least one sample");
  const auto im = iteration_matrix(s, A);
  const auto C = s.coefficients(A);
  const int pd = im.p * im.d;
  double worst = 0.0;
  for (double lam : lambdas) {
    const double lhs = (lam * Matrix::Identity(pd, pd) - im.M).partialPivLu().determinant();
    Matrix poly = std::pow(lam, im.p) * Matrix::Identity(im.d, im.d);
    for (int k = 0; k < im.p; ++k) poly -= std::pow(lam, k) * C[static_cast<std::size_t>(k)];
    const double rhs = poly.partialPivLu().determinant();
    const double denom = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
    worst = std::max(worst, std::abs(lhs - rhs) / denom);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Consistency and fixed points

const char* ConsistencyVerdict::label() const {
  switch (status) {
    case Status::consistent:
      return "consistent";
    case Status::fails_condition_1:
      return "fails_condition_1";
    case Status::fails_condition_2:
      return "fails_condition_2";
  }
  return "unknown";
}

ConsistencyVerdict is_consistent(const Scheme& s, const Matrix& A, double tol) {
  const auto d = A.rows();
  Matrix char_at_one = Matrix::Identity(d, d);
  for (const auto& c : s.coefficients(A)) char_at_one -= c;
  const Matrix NA = s.inversion(A) * A;

  const double na_norm = NA.norm();
  const double residual = na_norm > 0.0 ? (char_at_one + NA).norm() / na_norm
                                        : std::numeric_limits<double>::infinity();
  bool singular = na_norm == 0.0;
  if (!singular) {
    Eigen::JacobiSVD<Matrix> svd(NA);
    const auto& sv = svd.singularValues();
    singular = sv(sv.size() - 1) <= 1e-12 * sv(0);
  }
  const double rho = rho_lambda(s, A);
  using Status = ConsistencyVerdict::Status;
  if (singular || residual > tol) return {Status::fails_condition_1, residual, rho};
  if (!(rho < 1.0 - 1e-12)) return {Status::fails_condition_2, residual, rho};
  return {Status::consistent, residual, rho};
}

Vector fixed_point(const Scheme& s, const Quadratic& q) {
  if (s.p() == 0) return s.inversion(q.A()) * q.b();
  const double rho = rho_lambda(s, q.A());
  if (!(rho < 1.0)) throw NumericalError("fixed_point: spectral radius >= 1, iteration has no limit");
  const auto im = iteration_matrix(s, q.A());
  const auto n = im.M.rows();
  const Vector rhs = im.U * (s.inversion(q.A()) * q.b());
  return (Matrix::Identity(n, n) - im.M).partialPivLu().solve(rhs);
}

// ---------------------------------------------------------------------------
// Trajectories

namespace detail {

void check_init(const Scheme& s, const Quadratic& q, std::span<const Vector> init) {
  const std::size_t needed = static_cast<std::size_t>(std::max(s.p(), 1));
  if (init.size() != needed)
    throw InvalidArgument("run: scheme " + s.name() + " needs " + std::to_string(needed) + " initial points");
  for (const auto& x : init)
    if (x.size() != q.dim()) throw InvalidArgument("run: initial point has the wrong dimension");
}

void sampled_path(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                  std::mt19937_64& rng, std::vector<Vector>& out) {
  out.resize(static_cast<std::size_t>(K) + 1);
  std::vector<Vector> window(init.begin(), init.end());
  out[0] = window.back();
  for (int k = 1; k <= K; ++k) {
    const auto draw = s.sample(q.A(), rng);
    Vector next = draw.inversion * q.b();
    for (std::size_t j = 0; j < window.size() && j < draw.coeffs.size(); ++j) next.noalias() += draw.coeffs[j] * window[j];
    if (!window.empty()) {
      std::rotate(window.begin(), window.begin() + 1, window.end());
      window.back() = next;
    }
    out[static_cast<std::size_t>(k)] = std::move(next);
  }
}

}  // namespace detail

namespace {

void record(Trajectory& t, const Vector& x, const Vector& x_star, int k) {
  const double err = (x - x_star).norm();
  if (!std::isfinite(err) || err > kDivergenceThreshold)
    throw DivergenceError("diverged at iteration " + std::to_string(k));
  t.iterates.push_back(x);
  t.error_norms.push_back(err);
}

}  // namespace

Trajectory run(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K, RunMode mode,
               std::uint64_t seed) {
  if (K < 1) throw InvalidArgument("run: need at least one iteration");
  detail::check_init(s, q, init);
  if (mode == RunMode::sampled && !s.has_sampler())
    throw InvalidArgument("run: sampled mode requires a scheme with a sampler");

  const Vector x_star = minimizer(q);
  Trajectory t;

  if (s.p() == 0) {
    record(t, init[0], x_star, 0);
    record(t, s.inversion(q.A()) * q.b(), x_star, 1);
    return t;
  }

  if (mode == RunMode::sampled) {
    auto rng = trial_generator(seed, 0);
    std::vector<Vector> path;
    detail::sampled_path(s, q, init, K, rng, path);
    for (int k = 0; k <= K; ++k) record(t, path[static_cast<std::size_t>(k)], x_star, k);
    return t;
  }

  const auto C = s.coefficients(q.A());
  const Vector Nb = s.inversion(q.A()) * q.b();
  std::vector<Vector> window(init.begin(), init.end());
  t.iterates.reserve(static_cast<std::size_t>(K) + 1);
  t.error_norms.reserve(static_cast<std::size_t>(K) + 1);
  record(t, window.back(), x_star, 0);
  for (int k = 1; k <= K; ++k) {
    Vector next = Nb;
    for (std::size_t j = 0; j < window.size(); ++j) next.noalias() += C[j] * window[j];
    std::rotate(window.begin(), window.begin() + 1, window.end());
    window.back() = next;
    record(t, next, x_star, k);
  }
  return t;
}

MonteCarloSummary monte_carlo(const Scheme& s, const Quadratic& q, std::span<const Vector> init, int K,
                              int trials, std::uint64_t seed, Execution exec) {
  return exec == Execution::parallel ? kernels::monte_carlo(s, q, init, K, trials, seed)
                                     : reference::monte_carlo(s, q, init, K, trials, seed);
}

std::mt19937_64 trial_generator(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

double fit_log_slope(std::span<const double> errors, int k_from, int k_to) {
  if (k_from < 0 || k_to <= k_from || static_cast<std::size_t>(k_to) >= errors.size())
    throw InvalidArgument("fit_log_slope: window outside the trajectory");
  const double n = k_to - k_from + 1;
  double sk = 0.0, sy = 0.0, skk = 0.0, sky = 0.0;
  for (int k = k_from; k <= k_to; ++k) {
    const double e = errors[static_cast<std::size_t>(k)];
    if (!(e > 0.0)) throw NumericalError("fit_log_slope: non-positive error in window");
    const double y = std::log(e);
    sk += k;
    sy += y;
    skk += static_cast<double>(k) * k;
    sky += k * y;
  }
  return (n * sky - sk * sy) / (n * skk - sk * sk);
}

ComplexityBounds iteration_complexity(double rho, double eps, double norm0) {
  if (!(rho >= 0.0) || !(rho < 1.0)) throw InvalidArgument("iteration_complexity: rate must lie in [0, 1)");
  if (!(eps > 0.0) || !(eps < 1.0)) throw InvalidArgument("iteration_complexity: eps must lie in (0, 1)");
  if (!(norm0 > 0.0)) throw InvalidArgument("iteration_complexity: initial distance must be positive");
  const double log_term = std::log(norm0 / eps);
  return {rho / (1.0 - rho) * log_term, log_term / (1.0 - rho)};
}

}  // namespace pscli
