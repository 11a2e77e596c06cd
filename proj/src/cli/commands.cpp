#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pscli/bounds.hpp"
#include "pscli/cli.hpp"
#include "pscli/errors.hpp"
#include "pscli/io.hpp"
#include "pscli/kernels.hpp"
#include "pscli/schemes.hpp"

namespace pscli {

namespace {

struct Options {
  std::string scheme = "agd";
  std::string instance = "diag_hard";
  std::string nu;
  std::string mode = "expected";
  std::string init = "auto";
  std::string format = "text";
  std::string out;
  double mu = 2.0;
  double L = 100.0;
  double eps = 1e-6;
  double gap = -1.0;
  double lambda = 1.0;
  int p = 2;
  int grid = 10001;
  int iters = 500;
  int dim = 2;
  int n = 2;
  int trials = 1;
  std::optional<std::uint64_t> seed;
};

std::optional<double> parse_nu(const Options& o) {
  if (o.nu.empty() || o.nu == "optimal") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(o.nu, &used);
    if (used != o.nu.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("--nu must be a number or \"optimal\"");
  }
}

double resolve_nu(const Options& o) {
  const auto nu = parse_nu(o);
  return nu ? *nu : optimal_nu(o.p, o.mu, o.L);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

Scheme build_scheme(const Options& o) {
  const std::string& s = o.scheme;
  if (!s.empty() && s.front() == '{') {
    try {
      return scheme_from_json(nlohmann::json::parse(s));
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidArgument(std::string("--scheme: ") + e.what());
    }
  }
  if (s.ends_with(".json")) return scheme_from_json(read_json_file(s));

  nlohmann::json j = {{"name", s}, {"mu", o.mu}, {"L", o.L}};
  if (s == "derived" || s == "optimal_spectral") {
    j["p"] = o.p;
    if (const auto nu = parse_nu(o))
      j["nu"] = *nu;
    else
      j["nu"] = "optimal";
  }
  if (s == "gd") {
    const auto nu = parse_nu(o);
    if (!nu) throw InvalidArgument("gd needs --nu (the negated step)");
    j["step"] = -*nu;
  }
  return scheme_from_json(j);
}

Quadratic build_instance(const Options& o) {
  const std::string& name = o.instance;
  if (name == "diag_hard") return diag_hard_instance(o.dim, o.mu, o.L);
  if (name == "spectral_gap") return spectral_gap_instance(o.mu, o.L);
  if (name == "rotated") return Quadratic(rotated_hard_instance(o.mu, o.L), Vector::Zero(2));
  if (name == "nesterov") return nesterov_lb_matrix(o.dim);
  if (name == "sdca") return sdca_dual_quadratic(o.n, o.lambda);
  if (name.ends_with(".json")) return load_quadratic(name);
  throw InvalidArgument("unknown instance \"" + name + "\"");
}

Vector build_init(const Options& o, const Quadratic& q) {
  const auto d = q.dim();
  if (o.init == "zeros") return Vector::Zero(d);
  if (o.init == "ones") return Vector::Ones(d);
  if (o.init == "auto") {
    // Start at the origin unless the minimizer sits there.
    const Vector x_star = minimizer(q);
    return x_star.norm() > 0.0 ? Vector::Zero(d) : Vector::Ones(d);
  }
  std::vector<double> values;
  std::stringstream ss(o.init);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InvalidArgument("--init: expected zeros, ones, auto or a comma-separated vector");
    }
  }
  if (static_cast<Eigen::Index>(values.size()) != d)
    throw InvalidArgument("--init: vector has " + std::to_string(values.size()) + " entries, instance has " +
                          std::to_string(d));
  return Eigen::Map<Vector>(values.data(), d);
}

std::vector<Interval> analysis_set(const Options& o) {
  if (o.gap >= 0.0) return spectral_gap_set(o.mu, o.L, o.gap);
  if (!(o.mu > 0.0) || !(o.L >= o.mu)) throw InvalidArgument("need 0 < mu <= L");
  return {{o.mu, o.L}};
}

// ---------------------------------------------------------------------------

void cmd_analyze(const Options& o, std::ostream& out) {
  const auto s = build_scheme(o);
  if (!s.linear()) throw InvalidArgument("analyze: scheme " + s.name() + " has no linear coefficients");
  if (o.grid < 2) throw InvalidArgument("--grid must be at least 2");
  const auto set = analysis_set(o);
  const auto etas = interval_grid(set, o.grid);
  const auto fam = s.linear()->family();
  const auto radii = kernels::radius_curve(fam, etas);
  CsvWriter csv(out, {"eta", "radius"});
  for (std::size_t i = 0; i < etas.size(); ++i) csv.row({etas[i], radii[i]});
}

void cmd_run(const Options& o, std::ostream& out) {
  const auto s = build_scheme(o);
  const auto q = build_instance(o);
  const Vector x0 = build_init(o, q);
  const std::vector<Vector> init(static_cast<std::size_t>(std::max(s.p(), 1)), x0);
  if (o.iters < 1) throw InvalidArgument("--iters must be positive");

  if (o.mode == "expected") {
    write_trajectory_csv(out, run(s, q, init, o.iters).error_norms);
    return;
  }
  if (o.mode != "sampled") throw InvalidArgument("--mode must be expected or sampled");
  if (!o.seed) throw InvalidArgument("sampled mode requires an explicit --seed");
  if (o.trials < 1) throw InvalidArgument("--trials must be positive");
  if (o.trials == 1) {
    write_trajectory_csv(out, run(s, q, init, o.iters, RunMode::sampled, *o.seed).error_norms);
    return;
  }
  const auto mc = monte_carlo(s, q, init, o.iters, o.trials, *o.seed);
  const Vector x_star = minimizer(q);
  std::vector<double> errors;
  errors.reserve(mc.mean.size());
  for (const auto& m : mc.mean) errors.push_back((m - x_star).norm());
  write_trajectory_csv(out, errors);
}

void cmd_derive(const Options& o, std::ostream& out) {
  const double nu = resolve_nu(o);
  const auto c = derive_linear_pscli(o.mu, o.L, o.p, nu);
  const auto worst = worst_case_radius(c.family(), analysis_set(o), o.grid);
  nlohmann::json j = to_json(c);
  j["mu"] = o.mu;
  j["L"] = o.L;
  j["worst_case_radius"] = worst.radius;
  j["worst_case_eta"] = worst.eta;
  out << std::setw(2) << j << '\n';
}

void cmd_bounds(const Options& o, std::ostream& out) {
  const auto rows = bound_table(o.p, o.mu, o.L);
  const double kappa = o.L / o.mu;
  const double nu_star = optimal_nu(o.p, o.mu, o.L);
  const auto head = scalar_bound(o.p, o.mu, o.L, nu_star);
  const double rho = headline_bound(o.p, kappa);
  const auto ic = iteration_complexity(rho, o.eps);
  const std::string context = "dimension-dependent bound Omega(min{d, sqrt(kappa) ln(1/eps)}) (cited, not computed)";

  if (o.format == "json") {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& r : rows) table.push_back(to_json(r));
    nlohmann::json j = {{"p", o.p},     {"mu", o.mu},      {"L", o.L},          {"kappa", kappa},
                        {"eps", o.eps}, {"table", table},  {"context", context}};
    j["headline"] = {{"nu", nu_star}, {"rho_star", rho}, {"case", head.case_label},
                     {"ic_lower", ic.lower}, {"ic_upper", ic.upper}};
    out << std::setw(2) << j << '\n';
    return;
  }
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("NA"); };
  if (o.format == "csv") {
    CsvWriter csv(out, {"case", "nu_lo", "nu_hi", "applicable", "minimizer", "rho_star", "ic_lower"});
    for (const auto& r : rows) {
      const std::string ic_lo = r.bound ? (*r.bound < 1.0 ? format_double(iteration_complexity(*r.bound, o.eps).lower)
                                                          : std::string("inf"))
                                        : std::string("NA");
      csv.row({std::to_string(r.case_id), format_double(r.nu_lo), format_double(r.nu_hi),
               r.applicable ? "1" : "0", opt(r.minimizer), opt(r.bound), ic_lo});
    }
    csv.row({"headline", "NA", "NA", "1", format_double(nu_star), format_double(rho), format_double(ic.lower)});
    return;
  }
  if (o.format != "text") throw InvalidArgument("--format must be text, csv or json");

  out << "p = " << o.p << ", mu = " << o.mu << ", L = " << o.L << ", kappa = " << kappa << "\n\n";
  out << std::left << std::setw(6) << "case" << std::setw(18) << "nu range" << std::setw(16) << "minimizer"
      << std::setw(16) << "lower bound" << "requires\n";
  for (const auto& r : rows) {
    out << std::setw(6) << r.case_id << std::setw(18) << r.nu_range;
    if (r.applicable)
      out << std::setw(16) << opt(r.minimizer).substr(0, 14) << std::setw(16) << opt(r.bound).substr(0, 14);
    else
      out << std::setw(16) << "NA (empty)" << std::setw(16) << "NA";
    out << r.requirement << '\n';
  }
  out << std::right << std::setprecision(10);
  out << "\nheadline bound (p-th root of kappa): " << rho << " at nu = " << nu_star << '\n';
  out << "iteration complexity for eps = " << o.eps << ": lower " << ic.lower << ", upper " << ic.upper << '\n';
  out << "context: " << context << '\n';
}

void cmd_spectrum(const Options& o, std::ostream& out) {
  const auto q = build_instance(o);
  CsvWriter csv(out, {"index", "eigenvalue"});
  const auto& ev = q.eigenvalues();
  for (std::size_t i = 0; i < ev.size(); ++i) csv.row({std::to_string(i), format_double(ev[i])});
}

// Random linear-coefficient families q(z) − ηr(z) with q(1) = 0, compared
// with the two-step optimum. Reported only; nothing is asserted.
void cmd_conjecture(const Options& o, std::ostream& out) {
  if (o.p < 1) throw InvalidArgument("--p must be at least 1");
  if (o.trials < 1) throw InvalidArgument("--trials must be positive");
  if (!(o.mu > 0.0) || !(o.L > o.mu)) throw InvalidArgument("need 0 < mu < L");
  const std::uint64_t seed = o.seed.value_or(0);
  const double bound = headline_bound(2, o.L / o.mu);
  const std::vector<Interval> set{{o.mu, o.L}};
  CsvWriter csv(out, {"trial", "worst_radius", "bound", "margin"});
  for (int t = 0; t < o.trials; ++t) {
    auto rng = trial_generator(seed, static_cast<std::uint64_t>(t));
    std::normal_distribution<double> gauss(0.0, 1.0);
    LinearFactorFamily fam{o.p, std::vector<double>(o.p), std::vector<double>(o.p)};
    double sum_b = 0.0;
    for (int j = 0; j < o.p; ++j) {
      fam.b[j] = gauss(rng);
      fam.a[j] = gauss(rng) / o.L;
      sum_b += fam.b[j];
    }
    fam.b[o.p - 1] += 1.0 - sum_b;
    const double worst = worst_case_radius(fam, set, o.grid).radius;
    csv.row({std::to_string(t), format_double(worst), format_double(bound), format_double(worst - bound)});
  }
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--mu", o.mu, "Strong convexity constant")->capture_default_str();
  cmd->add_option("--L", o.L, "Smoothness constant")->capture_default_str();
  cmd->add_option("--p", o.p, "Lifting factor")->capture_default_str();
  cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
}

void add_scheme(CLI::App* cmd, Options& o) {
  cmd->add_option("--scheme", o.scheme,
                  "fgd, hb, agd, newton, jacobi_scd, a3, derived, optimal_spectral, gd, a JSON file or inline JSON")
      ->capture_default_str();
  cmd->add_option("--nu", o.nu, "Scalar inversion value or \"optimal\"");
}

void add_instance(CLI::App* cmd, Options& o) {
  cmd->add_option("--instance", o.instance, "diag_hard, spectral_gap, rotated, nesterov, sdca or a JSON file")
      ->capture_default_str();
  cmd->add_option("--dim", o.dim, "Dimension for diag_hard and nesterov")->capture_default_str();
  cmd->add_option("--n", o.n, "Sample count for sdca")->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "Regularization for sdca")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analyze and run stationary linear iterative optimization schemes on quadratics"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Root radius of a linear scheme across the spectrum (eta,radius CSV)");
  add_common(analyze, o);
  add_scheme(analyze, o);
  analyze->add_option("--grid", o.grid, "Grid points per interval")->capture_default_str();
  analyze->add_option("--gap", o.gap, "Restrict to [mu, mu+gap] and [L-gap, L]");

  auto* runc = app.add_subcommand("run", "Trajectory of a scheme on an instance (k,error_norm,log10_error CSV)");
  add_common(runc, o);
  add_scheme(runc, o);
  add_instance(runc, o);
  runc->add_option("--iters", o.iters, "Iterations")->capture_default_str();
  runc->add_option("--mode", o.mode, "expected or sampled")->capture_default_str();
  runc->add_option("--seed", o.seed, "Seed for sampled mode");
  runc->add_option("--trials", o.trials, "Monte-Carlo trials averaged in sampled mode")->capture_default_str();
  runc->add_option("--init", o.init, "zeros, ones, auto or comma-separated vector")->capture_default_str();

  auto* derive = app.add_subcommand("derive", "Fit linear coefficients for given p, mu, L, nu (JSON)");
  add_common(derive, o);
  derive->add_option("--nu", o.nu, "Scalar inversion value or \"optimal\"");
  derive->add_option("--grid", o.grid, "Grid points for the achieved radius")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Scalar-inversion lower bounds and iteration complexity");
  add_common(bounds, o);
  bounds->add_option("--eps", o.eps, "Target accuracy")->capture_default_str();
  bounds->add_option("--format", o.format, "text, csv or json")->capture_default_str();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues of a named instance (index,eigenvalue CSV)");
  add_common(spectrum_cmd, o);
  add_instance(spectrum_cmd, o);

  auto* conj = app.add_subcommand("conjecture", "Random linear-coefficient sweep against the two-step optimum");
  add_common(conj, o);
  conj->add_option("--trials", o.trials, "Random families")->capture_default_str();
  conj->add_option("--seed", o.seed, "Seed");
  conj->add_option("--grid", o.grid, "Grid points")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ofstream file;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) throw InvalidArgument("cannot write " + o.out);
    }
    std::ostream& sink = o.out.empty() ? out : file;
    if (*analyze) cmd_analyze(o, sink);
    else if (*runc) cmd_run(o, sink);
    else if (*derive) cmd_derive(o, sink);
    else if (*bounds) cmd_bounds(o, sink);
    else if (*spectrum_cmd) cmd_spectrum(o, sink);
    else if (*conj) cmd_conjecture(o, sink);
    sink.flush();
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DivergenceError& e) {
    err << "diverged: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace pscli
