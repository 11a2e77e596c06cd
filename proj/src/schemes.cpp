#include "pscli/schemes.hpp"

#include <cmath>

#include "pscli/bounds.hpp"
#include "pscli/errors.hpp"

namespace pscli {

namespace {

void check_pair(double mu, double L) {
  if (!(mu > 0.0) || !(L > mu) || !std::isfinite(L)) throw InvalidArgument("need 0 < mu < L");
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_nu(int p, double L, double nu) {
  const double lo = -std::pow(2.0, p) / L;
  if (!(nu > lo) || !(nu < 0.0)) throw InvalidArgument("nu outside the consistency range (-2^p/L, 0)");
}

}  // namespace

Scheme linear_scheme(std::string name, const LinearCoefficients& c, std::optional<Interval> range) {
  c.validate();
  auto coeffs = [c](const Matrix& X) {
    std::vector<Matrix> C;
    C.reserve(static_cast<std::size_t>(c.p));
    const auto d = X.rows();
    for (int j = 0; j < c.p; ++j) C.push_back(c.a[j] * X + c.b[j] * Matrix::Identity(d, d));
    return C;
  };
  auto inversion = [nu = c.nu](const Matrix& X) -> Matrix { return nu * Matrix::Identity(X.rows(), X.cols()); };
  Scheme s(std::move(name), c.p, coeffs, inversion);
  s.set_linear(c).set_commuting(true);
  if (range) s.set_declared_range(*range);
  nlohmann::json desc = to_json(c);
  desc["name"] = "linear";
  s.set_descriptor(desc);
  return s;
}

Scheme gradient_descent(double step, std::optional<Interval> range) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("gradient_descent: step must be positive");
  auto s = linear_scheme("gd", {1, {-step}, {1.0}, -step}, range);
  return s.set_descriptor({{"name", "gd"}, {"step", step}});
}

Scheme fgd(double mu, double L) {
  check_pair(mu, L);
  const double beta = 2.0 / (mu + L);
  auto s = linear_scheme("fgd", {1, {-beta}, {1.0}, -beta}, Interval{mu, L});
  return s.set_descriptor({{"name", "fgd"}, {"mu", mu}, {"L", L}});
}

Scheme heavy_ball(double mu, double L) {
  check_pair(mu, L);
  const double sl = std::sqrt(L);
  const double sm = std::sqrt(mu);
  const double alpha = 4.0 / ((sl + sm) * (sl + sm));
  const double ratio = (sl - sm) / (sl + sm);
  const double beta = ratio * ratio;
  auto s = linear_scheme("heavy_ball", {2, {0.0, -alpha}, {-beta, 1.0 + beta}, -alpha}, Interval{mu, L});
  return s.set_descriptor({{"name", "heavy_ball"}, {"mu", mu}, {"L", L}});
}

Scheme agd(double mu, double L) {
  check_pair(mu, L);
  const double alpha = (std::sqrt(L) - std::sqrt(mu)) / (std::sqrt(L) + std::sqrt(mu));
  LinearCoefficients c{2, {alpha / L, -(1.0 + alpha) / L}, {-alpha, 1.0 + alpha}, -1.0 / L};
  auto s = linear_scheme("agd", c, Interval{mu, L});
  return s.set_descriptor({{"name", "agd"}, {"mu", mu}, {"L", L}});
}

Scheme newton() {
  auto inversion = [](const Matrix& X) -> Matrix {
    Eigen::PartialPivLU<Matrix> lu(X);
    if (!(std::abs(lu.determinant()) > 0.0) || !lu.inverse().allFinite())
      throw NumericalError("newton: singular matrix");
    return -lu.inverse();
  };
  Scheme s("newton", 0, {}, inversion);
  s.set_commuting(true).set_descriptor({{"name", "newton"}});
  return s;
}

namespace {

Vector checked_diagonal(const Matrix& X) {
  Vector diag = X.diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (!(diag(i) > 0.0)) throw InvalidArgument("jacobi_scd: diagonal entries must be positive");
  return diag;
}

}  // namespace

Scheme jacobi_scd() {
  auto coeffs = [](const Matrix& X) {
    const Vector diag = checked_diagonal(X);
    const double d = static_cast<double>(X.rows());
    Matrix C = Matrix::Identity(X.rows(), X.cols()) - diag.cwiseInverse().asDiagonal() * X / d;
    return std::vector<Matrix>{C};
  };
  auto inversion = [](const Matrix& X) -> Matrix {
    const Vector diag = checked_diagonal(X);
    return -Matrix(diag.cwiseInverse().asDiagonal()) / static_cast<double>(X.rows());
  };
  auto sampler = [](const Matrix& X, std::mt19937_64& rng) {
    const Vector diag = checked_diagonal(X);
    const auto d = X.rows();
    std::uniform_int_distribution<Eigen::Index> pick(0, d - 1);
    const Eigen::Index i = pick(rng);
    Realization r{{Matrix::Identity(d, d)}, Matrix::Zero(d, d)};
    r.coeffs[0].row(i) -= X.row(i) / diag(i);
    r.inversion(i, i) = -1.0 / diag(i);
    return r;
  };
  Scheme s("jacobi_scd", 1, coeffs, inversion, SchemeKind::expected_stochastic, sampler);
  s.set_commuting(true).set_descriptor({{"name", "jacobi_scd"}});
  return s;
}

SdcaExpected sdca_expected(int n, double lambda) {
  if (n < 2) throw InvalidArgument("sdca_expected: need n >= 2");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("sdca_expected: lambda must be positive");
  const double c = 2.0 / (2.0 + lambda * n);
  Matrix U = Matrix::Constant(n, n, c);
  U.diagonal().setOnes();
  Matrix E = Matrix::Identity(n, n) - U / static_cast<double>(n);
  return {E, 1.0 - 1.0 / (2.0 / lambda + n)};
}

LinearCoefficients derive_2scli(double mu, double L, double nu) {
  check_pair(mu, L);
  if (!(nu > -4.0 / L) || !(nu < 0.0)) throw InvalidArgument("derive_2scli: nu outside (-4/L, 0)");
  const double s = std::sqrt(-nu);
  const double a1 = -2.0 * s / (std::sqrt(mu) + std::sqrt(L));
  const double a0 = 2.0 * s / (std::sqrt(mu) + std::sqrt(L)) + nu;
  const double root = 1.0 - std::sqrt(-nu * mu);
  const double b1 = 2.0 * root - a1 * mu;
  const double b0 = -root * root - a0 * mu;
  return {2, {a0, a1}, {b0, b1}, nu};
}

LinearCoefficients derive_linear_pscli(double mu, double L, int p, double nu) {
  if (p < 1) throw InvalidArgument("derive_linear_pscli: p must be at least 1");
  if (!(mu > 0.0) || !(L >= mu)) throw InvalidArgument("derive_linear_pscli: need 0 < mu <= L");
  check_nu(p, L, nu);

  // Unknowns ordered (a_0..a_{p−1}, b_0..b_{p−1}); rows k at η = μ then η = L.
  const int n = 2 * p;
  Matrix sys = Matrix::Zero(n, n);
  Vector rhs(n);
  const double etas[2] = {mu, L};
  for (int e = 0; e < 2; ++e) {
    const double shift = 1.0 - std::pow(-nu * etas[e], 1.0 / p);
    for (int k = 0; k < p; ++k) {
      const int row = e * p + k;
      sys(row, k) = etas[e];
      sys(row, p + k) = 1.0;
      rhs(row) = -binomial(p, k) * std::pow(-shift, p - k);
    }
  }
  Eigen::PartialPivLU<Matrix> lu(sys);
  const double growth = sys.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(std::abs(lu.determinant()) > 1e-14 * std::pow(growth, n)))
    throw InvalidArgument("derive_linear_pscli: singular system (mu == L)");
  const Vector sol = lu.solve(rhs);
  LinearCoefficients c{p, std::vector<double>(sol.data(), sol.data() + p),
                       std::vector<double>(sol.data() + p, sol.data() + n), nu};
  return c;
}

Scheme a3(double mu, double L) {
  check_pair(mu, L);
  auto s = linear_scheme("a3", derive_linear_pscli(mu, L, 3, optimal_nu(3, mu, L)), Interval{mu, L});
  return s.set_descriptor({{"name", "a3"}, {"mu", mu}, {"L", L}});
}

std::vector<Interval> spectral_gap_set(double mu, double L, double eps) {
  check_pair(mu, L);
  if (!(eps >= 0.0) || 2.0 * eps > L - mu) throw InvalidArgument("spectral_gap_set: gap width out of range");
  return {{mu, mu + eps}, {L - eps, L}};
}

Scheme optimal_spectral(int p, double nu) {
  if (p < 1) throw InvalidArgument("optimal_spectral: p must be at least 1");
  if (!(nu < 0.0) || !std::isfinite(nu)) throw InvalidArgument("optimal_spectral: nu must be negative");
  auto coeffs = [p, nu](const Matrix& X) {
    const auto eig = eigen_decompose(X);
    const double cap = std::pow(2.0, p) / -nu;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
      if (!(eig.values(i) > 0.0) || !(eig.values(i) < cap))
        throw InvalidArgument("optimal_spectral: nu outside the consistency range for this spectrum");
    std::vector<Matrix> C;
    for (int k = 0; k < p; ++k) {
      Vector w(eig.values.size());
      for (Eigen::Index i = 0; i < w.size(); ++i)
        w(i) = -binomial(p, k) * std::pow(std::pow(-nu * eig.values(i), 1.0 / p) - 1.0, p - k);
      Matrix Ck = eig.vectors * w.asDiagonal() * eig.vectors.transpose();
      C.push_back(0.5 * (Ck + Ck.transpose()));
    }
    return C;
  };
  auto inversion = [nu](const Matrix& X) -> Matrix { return nu * Matrix::Identity(X.rows(), X.cols()); };
  Scheme s("optimal_spectral", p, coeffs, inversion);
  s.set_commuting(true).set_descriptor({{"name", "optimal_spectral"}, {"p", p}, {"nu", nu}});
  return s;
}

Scheme optimal_spectral(const Matrix& A, int p, double nu) {
  const auto values = eigen_decompose(A).values;
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  if (!(lo > 0.0)) throw InvalidArgument("optimal_spectral: A must be positive definite");
  check_nu(p, hi, nu);
  auto s = optimal_spectral(p, nu);
  s.set_declared_range({lo, hi});
  return s;
}

namespace {

double number(const nlohmann::json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

double required(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("scheme descriptor: missing \"") + key + "\"");
  return j.at(key).get<double>();
}

}  // namespace

Scheme scheme_from_json(const nlohmann::json& j) {
  try {
    const std::string name = j.at("name").get<std::string>();
    if (name == "fgd") return fgd(required(j, "mu"), required(j, "L"));
    if (name == "hb" || name == "heavy_ball") return heavy_ball(required(j, "mu"), required(j, "L"));
    if (name == "agd") return agd(required(j, "mu"), required(j, "L"));
    if (name == "newton") return newton();
    if (name == "jacobi_scd" || name == "scd") return jacobi_scd();
    if (name == "gd") return gradient_descent(required(j, "step"));
    if (name == "a3") return a3(number(j, "mu", 2.0), number(j, "L", 100.0));
    if (name == "linear") return linear_scheme("linear", linear_coefficients_from_json(j));
    if (name == "derived" || name == "optimal_spectral") {
      const int p = j.at("p").get<int>();
      const bool has_range = j.contains("mu") && j.contains("L");
      double nu = 0.0;
      if (j.contains("nu") && j.at("nu").is_string()) {
        if (j.at("nu").get<std::string>() != "optimal" || !has_range)
          throw InvalidArgument("scheme descriptor: nu must be a number, or \"optimal\" with mu and L");
        nu = optimal_nu(p, required(j, "mu"), required(j, "L"));
      } else {
        nu = required(j, "nu");
      }
      if (name == "optimal_spectral") {
        auto s = optimal_spectral(p, nu);
        if (has_range) s.set_declared_range({required(j, "mu"), required(j, "L")});
        return s;
      }
      const double mu = required(j, "mu");
      const double L = required(j, "L");
      auto s = linear_scheme("derived", derive_linear_pscli(mu, L, p, nu), Interval{mu, L});
      return s.set_descriptor({{"name", "derived"}, {"p", p}, {"mu", mu}, {"L", L}, {"nu", nu}});
    }
    throw InvalidArgument("unknown scheme \"" + name + "\"");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("scheme descriptor: ") + e.what());
  }
}

}  // namespace pscli
