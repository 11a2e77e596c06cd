#include "pscli/bounds.hpp"

#include <cmath>
#include <sstream>

#include "pscli/errors.hpp"

namespace pscli {

namespace {

void check_pair(int p, double mu, double L) {
  if (p < 1) throw InvalidArgument("lifting factor must be at least 1");
  if (!(mu > 0.0) || !(L > mu) || !std::isfinite(L))
    throw InvalidArgument("need 0 < mu < L");
}

double root_p(double x, int p) { return std::pow(x, 1.0 / p); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

double BoundReport::ic_lower(double eps) const {
  if (!(eps > 0.0) || !(eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  return rho_star / (1.0 - rho_star) * std::log(1.0 / eps);
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j = {{"p", r.p}, {"mu", r.mu}, {"L", r.L}, {"case", r.case_label}, {"rho_star", r.rho_star}};
  j["nu"] = r.nu ? nlohmann::json(*r.nu) : nlohmann::json(nullptr);
  return j;
}

BoundReport scalar_bound(int p, double mu, double L, double nu) {
  check_pair(p, mu, L);
  const double lo = -std::pow(2.0, p) / L;
  if (!(nu > lo) || !(nu < 0.0))
    throw InvalidArgument("inconsistent nu: need " + fmt(lo) + " < nu < 0, got " + fmt(nu));
  BoundReport r;
  r.p = p;
  r.mu = mu;
  r.L = L;
  r.nu = nu;
  r.rho_star = std::max(std::abs(root_p(-nu * mu, p) - 1.0), std::abs(root_p(-nu * L, p) - 1.0));
  if (nu >= -1.0 / L)
    r.case_label = "case 1";
  else if (nu > -1.0 / mu)
    r.case_label = "case 2";
  else
    r.case_label = "case 3";
  return r;
}

double optimal_nu(int p, double mu, double L) {
  check_pair(p, mu, L);
  return -std::pow(2.0 / (root_p(L, p) + root_p(mu, p)), p);
}

double headline_bound(int p, double kappa) {
  if (p < 1) throw InvalidArgument("lifting factor must be at least 1");
  if (!(kappa >= 1.0)) throw InvalidArgument("condition number must be at least 1");
  const double r = root_p(kappa, p);
  return (r - 1.0) / (r + 1.0);
}

SigmaPair diag_inversion_sigmas(double alpha, double beta, double mu, double L) {
  check_pair(1, mu, L);
  const double h = (alpha + beta) * (L + mu) / 4.0;
  const double disc = h * h - alpha * beta * L * mu;
  if (disc < 0.0) throw NumericalError("diagonal inversion: complex eigenvalues");
  const double s = std::sqrt(disc);
  return {-h + s, -h - s};
}

BoundReport diag_inversion_bound(double alpha, double beta, double mu, double L, int p) {
  check_pair(p, mu, L);
  const auto [s1, s2] = diag_inversion_sigmas(alpha, beta, mu, L);
  const double cap = std::pow(2.0, p);
  if (!(s2 > 0.0) || !(s1 < cap)) throw InvalidArgument("inconsistent diagonal inversion");
  BoundReport r;
  r.p = p;
  r.mu = mu;
  r.L = L;
  r.case_label = "diagonal";
  r.rho_star = std::max(std::abs(root_p(s1, p) - 1.0), std::abs(root_p(s2, p) - 1.0));
  return r;
}

std::vector<BoundTableRow> bound_table(int p, double mu, double L) {
  check_pair(p, mu, L);
  const double kappa = L / mu;
  const double r = root_p(kappa, p);
  std::vector<BoundTableRow> rows;

  rows.push_back({1, "[-1/L, 0)", -1.0 / L, 0.0, true, -1.0 / L, 1.0 - root_p(mu / L, p), "none"});
  rows.push_back({2, "(-1/mu, -1/L)", -1.0 / mu, -1.0 / L, true, optimal_nu(p, mu, L), (r - 1.0) / (r + 1.0),
                  "none"});

  // Case 3 is (−2^p/L, −1/μ], non-empty only when 2^p > κ.
  const double lo3 = -std::pow(2.0, p) / L;
  const bool has3 = lo3 < -1.0 / mu;
  BoundTableRow row3{3, "(-2^p/L, -1/mu]", lo3, -1.0 / mu, has3, std::nullopt, std::nullopt, "p >= log2(kappa)"};
  if (has3) {
    row3.minimizer = -1.0 / mu;
    row3.bound = r - 1.0;
  }
  rows.push_back(row3);
  return rows;
}

nlohmann::json to_json(const BoundTableRow& r) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"case", r.case_id},          {"nu_range", r.nu_range},   {"nu_lo", r.nu_lo},
          {"nu_hi", r.nu_hi},           {"applicable", r.applicable}, {"minimizer", opt(r.minimizer)},
          {"bound", opt(r.bound)},      {"requires", r.requirement}};
}

}  // namespace pscli
