#include <cmath>

#include "doctest.h"
#include "pscli/bounds.hpp"
#include "pscli/errors.hpp"
#include "pscli/schemes.hpp"
#include "support.hpp"

using namespace pscli;

namespace {

double max_coeff_gap(const Scheme& a, const Scheme& b, const Matrix& X) {
  const auto ca = a.coefficients(X);
  const auto cb = b.coefficients(X);
  double gap = (a.inversion(X) - b.inversion(X)).cwiseAbs().maxCoeff();
  for (std::size_t j = 0; j < ca.size(); ++j) gap = std::max(gap, (ca[j] - cb[j]).cwiseAbs().maxCoeff());
  return gap;
}

const std::vector<Interval> kFull{{2.0, 100.0}};

}  // namespace

TEST_CASE("fgd") {
  const auto s = fgd(2, 100);
  const Matrix A = diag_hard_instance(2, 2, 100).A();
  CHECK(rho_lambda(s, A) == doctest::Approx(49.0 / 51.0).epsilon(1e-14));
  const auto C = s.coefficients(A);
  CHECK(C[0](0, 0) == doctest::Approx(1.0 - 200.0 / 102.0));
  CHECK(s.inversion(A)(1, 1) == doctest::Approx(-2.0 / 102.0));
  CHECK(2.0 / 102.0 * 100.0 < 2.0);
  CHECK_THROWS_AS(fgd(5, 5), InvalidArgument);
}

TEST_CASE("heavy ball") {
  const auto s = heavy_ball(2, 100);
  const auto& c = *s.linear();
  const double root = std::sqrt(100.0) + std::sqrt(2.0);
  CHECK(c.nu == doctest::Approx(-4.0 / (root * root)));
  CHECK(c.a[0] == 0.0);
  const auto w = worst_case_radius(c.family(), kFull);
  const double sk = std::sqrt(50.0);
  CHECK(w.radius == doctest::Approx((sk - 1) / (sk + 1)).epsilon(1e-10));
  // ℓ(·, μ) is a perfect square.
  const auto q = eval_factor(c.family(), 2.0);
  CHECK(q[1] * q[1] - 4 * q[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(heavy_ball(3, 1), InvalidArgument);
}

TEST_CASE("agd") {
  const auto s = agd(2, 100);
  const auto& c = *s.linear();
  CHECK(c.nu == doctest::Approx(-0.01));
  const auto w = worst_case_radius(c.family(), kFull);
  CHECK(w.radius == doctest::Approx(1.0 - std::sqrt(0.02)).epsilon(1e-9));
  CHECK(w.eta == 2.0);
  const double alpha = (10.0 - std::sqrt(2.0)) / (10.0 + std::sqrt(2.0));
  std::mt19937_64 rng(1);
  const Matrix X = testing::random_spd(3, 2, 100, rng);
  const Matrix I = Matrix::Identity(3, 3);
  const auto C = s.coefficients(X);
  CHECK((C[1] - (1 + alpha) * (I - X / 100.0)).norm() < 1e-12);
  CHECK((C[0] + alpha * (I - X / 100.0)).norm() < 1e-12);
}

TEST_CASE("two-step derivation recovers agd and heavy ball") {
  std::mt19937_64 rng(3);
  const Matrix X = testing::random_spd(4, 2, 100, rng);
  const auto agd_fit = linear_scheme("fit", derive_2scli(2, 100, -0.01));
  CHECK(max_coeff_gap(agd_fit, agd(2, 100), X) <= 1e-12);
  const auto& c = *agd_fit.linear();
  CHECK(c.a[1] == doctest::Approx(-0.0175218).epsilon(1e-5));

  const double nu_hb = -std::pow(2.0 / (10.0 + std::sqrt(2.0)), 2);
  CHECK(max_coeff_gap(linear_scheme("fit", derive_2scli(2, 100, nu_hb)), heavy_ball(2, 100), X) <= 1e-12);
  CHECK(std::abs(derive_2scli(2, 100, nu_hb).a[0]) < 1e-15);

  for (double nu : {-0.001, -0.02, -0.039}) {
    const auto fam = derive_2scli(2, 100, nu).family();
    for (double eta : {2.0, 17.0, 64.0, 100.0})
      CHECK(eval_factor(fam, eta)(1.0) == doctest::Approx(-nu * eta).epsilon(1e-12));
  }
  CHECK_THROWS_AS(derive_2scli(2, 100, -0.05), InvalidArgument);
  CHECK_THROWS_AS(derive_2scli(2, 100, 0.01), InvalidArgument);
}

TEST_CASE("p-step derivation") {
  const auto c1 = derive_linear_pscli(2, 100, 1, -0.01);
  CHECK(c1.a[0] == doctest::Approx(-0.01));
  CHECK(c1.b[0] == doctest::Approx(1.0));

  const auto c2 = derive_linear_pscli(2, 100, 2, -0.02);
  const auto ref = derive_2scli(2, 100, -0.02);
  for (int j = 0; j < 2; ++j) {
    CHECK(c2.a[j] == doctest::Approx(ref.a[j]).epsilon(1e-12));
    CHECK(c2.b[j] == doctest::Approx(ref.b[j]).epsilon(1e-12));
  }

  for (int p = 1; p <= 6; ++p) {
    const auto c = derive_linear_pscli(2, 100, p, optimal_nu(p, 2, 100));
    CHECK(c.consistency_residual() < 1e-12);
    // Both endpoint factors are economic p-th powers.
    for (double eta : {2.0, 100.0}) {
      const double s = 1.0 - std::pow(-c.nu * eta, 1.0 / p);
      CHECK(root_radius(eval_factor(c.family(), eta)) == doctest::Approx(std::abs(s)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(derive_linear_pscli(5, 5, 2, -0.1), InvalidArgument);
  CHECK_THROWS_AS(derive_linear_pscli(2, 100, 3, -0.09), InvalidArgument);
}

TEST_CASE("three-step gap method") {
  const auto c = *a3().linear();
  const double expected_a[] = {-0.0038, 0.0, -0.0351};
  const double expected_b[] = {0.1958, -0.9850, 1.7892};
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(c.a[j] - expected_a[j]) < 5e-4);
    CHECK(std::abs(c.b[j] - expected_b[j]) < 5e-4);
  }
  CHECK(std::abs(c.nu + 0.0389) < 5e-4);
  const double cb = std::cbrt(50.0);
  CHECK(worst_case_radius(c.family(), spectral_gap_set(2, 100)).radius <= (cb - 1) / cb + 1e-6);
  const double sk = std::sqrt(50.0);
  CHECK(worst_case_radius(c.family(), kFull).radius > (sk - 1) / (sk + 1));
  CHECK_THROWS_AS(spectral_gap_set(2, 100, 60), InvalidArgument);
  // Longer memory sharpens the clusters but leaves the middle non-contractive.
  const auto c4 = derive_linear_pscli(2, 100, 4, optimal_nu(4, 2, 100));
  CHECK(worst_case_radius(c4.family(), spectral_gap_set(2, 100)).radius < 0.75);
  CHECK(worst_case_radius(c4.family(), kFull).radius > 1.0);
}

TEST_CASE("spectral construction attains the optimal rate") {
  std::mt19937_64 rng(12);
  for (int p = 1; p <= 4; ++p) {
    const Matrix A = testing::random_spd(5, 2.0, 100.0, rng);
    const auto s = optimal_spectral(A, p, optimal_nu(p, 2, 100));
    CHECK(rho_lambda(s, A) == doctest::Approx(headline_bound(p, 50.0)).epsilon(1e-10));
    CHECK(is_consistent(s, A).ok());
  }
  // p = 1 is I + νX.
  const Matrix A = testing::random_spd(3, 1, 4, rng);
  const auto C = optimal_spectral(A, 1, -0.3).coefficients(A);
  CHECK((C[0] - (Matrix::Identity(3, 3) - 0.3 * A)).norm() < 1e-12);
  // Repeated eigenvalues.
  const Matrix D = diag_hard_instance(4, 2, 100).A();
  CHECK(rho_lambda(optimal_spectral(D, 3, optimal_nu(3, 2, 100)), D) ==
        doctest::Approx(headline_bound(3, 50)).epsilon(1e-10));
  CHECK_THROWS_AS(optimal_spectral(A, 2, -1.5), InvalidArgument);
  CHECK_THROWS_AS(optimal_spectral(2, -2.0).coefficients(D), InvalidArgument);
}

TEST_CASE("coordinate descent expected map") {
  const auto s = jacobi_scd();
  const Matrix I = Matrix::Identity(4, 4);
  CHECK((s.coefficients(I)[0] - 0.75 * I).norm() < 1e-15);
  std::mt19937_64 rng(5);
  const Matrix A = testing::random_spd(4, 1.0, 3.0, rng);
  const Matrix Dinv = A.diagonal().cwiseInverse().asDiagonal();
  CHECK((s.coefficients(A)[0] - (I - Dinv * A / 4.0)).norm() < 1e-14);
  const auto v = is_consistent(s, A);
  CHECK(v.ok());
  Matrix bad = A;
  bad(2, 2) = 0.0;
  CHECK_THROWS_AS(s.coefficients(bad), InvalidArgument);
}

TEST_CASE("sdca expected matrix") {
  const auto e = sdca_expected(2, 1.0);
  Matrix expected(2, 2);
  expected << 0.5, -0.25, -0.25, 0.5;
  CHECK((e.E - expected).norm() < 1e-15);
  CHECK(e.predicted_rho == doctest::Approx(0.75));
  // For this symmetric 2×2 matrix, eigenvalues are a ± b.
  CHECK(std::max(std::abs(0.5 + 0.25), std::abs(0.5 - 0.25)) == doctest::Approx(e.predicted_rho));

  for (int n : {2, 5, 17, 50})
    for (double lambda : {0.01, 0.3, 2.0, 10.0}) {
      const auto se = sdca_expected(n, lambda);
      const auto ev = spectrum(se.E);
      CHECK(std::max(std::abs(ev.front()), std::abs(ev.back())) ==
            doctest::Approx(1.0 - 1.0 / (2.0 / lambda + n)).epsilon(1e-10));
      // Same matrix as coordinate descent on the dual quadratic.
      const Matrix D = sdca_dual_quadratic(n, lambda).A();
      CHECK((jacobi_scd().coefficients(D)[0] - se.E).cwiseAbs().maxCoeff() < 1e-14);
    }
  const auto small = sdca_expected(4, 0.5);
  CHECK(iteration_complexity(small.predicted_rho, 1e-3).upper >= (2 / 0.5 + 4 - 1) * std::log(1e3));
  CHECK_THROWS_AS(sdca_expected(1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(sdca_expected(3, 0.0), InvalidArgument);
}

TEST_CASE("all constructors are consistent on their declared range") {
  std::mt19937_64 rng(99);
  std::vector<Scheme> schemes{fgd(2, 100), heavy_ball(2, 100), agd(2, 100), a3(2, 100),
                              linear_scheme("derived2", derive_linear_pscli(2, 100, 2, -0.02), Interval{2, 100})};
  for (const auto& s : schemes) {
    const auto range = *s.declared_range();
    for (int i = 0; i < 20; ++i) {
      const Matrix A = testing::random_spd(4, range.lo, range.hi, rng, i % 2 == 0);
      CHECK_MESSAGE(is_consistent(s, A).ok(), s.name());
    }
  }
}

TEST_CASE("built-in coefficient matrices commute") {
  std::mt19937_64 rng(6);
  const Matrix A = testing::random_spd(4, 2, 100, rng);
  for (const auto& s : {heavy_ball(2, 100), agd(2, 100), a3(), optimal_spectral(A, 3, optimal_nu(3, 2, 100))}) {
    REQUIRE(s.commuting());
    const auto C = s.coefficients(A);
    for (std::size_t i = 0; i < C.size(); ++i)
      for (std::size_t j = i + 1; j < C.size(); ++j) CHECK((C[i] * C[j] - C[j] * C[i]).norm() < 1e-8);
  }
}

TEST_CASE("scheme descriptors") {
  const Matrix X = diag_hard_instance(2, 2, 100).A();
  CHECK(max_coeff_gap(scheme_from_json({{"name", "agd"}, {"mu", 2}, {"L", 100}}), agd(2, 100), X) == 0.0);
  CHECK(max_coeff_gap(scheme_from_json({{"name", "hb"}, {"mu", 2}, {"L", 100}}), heavy_ball(2, 100), X) == 0.0);
  CHECK(scheme_from_json({{"name", "newton"}}).p() == 0);
  CHECK(scheme_from_json(agd(2, 100).descriptor()).name() == "agd");
  CHECK(max_coeff_gap(scheme_from_json({{"name", "a3"}}), a3(), X) == 0.0);
  const auto derived = scheme_from_json({{"name", "derived"}, {"p", 3}, {"mu", 2}, {"L", 100}, {"nu", "optimal"}});
  CHECK(max_coeff_gap(derived, a3(), X) < 1e-15);
  auto desc = to_json(*agd(2, 100).linear());
  desc["name"] = "linear";
  const auto lin = scheme_from_json(desc);
  CHECK(max_coeff_gap(lin, agd(2, 100), X) == 0.0);
  CHECK_THROWS_AS(scheme_from_json({{"name", "sag"}}), InvalidArgument);
  CHECK_THROWS_AS(scheme_from_json({{"name", "agd"}, {"mu", 2}}), InvalidArgument);
  CHECK_THROWS_AS(scheme_from_json({{"name", "linear"}, {"a", {0.1}}, {"b", {0.9}}, {"nu", 0.1}}), InvalidArgument);
}
