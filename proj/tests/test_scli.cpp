#include <cmath>

#include "doctest.h"
#include "pscli/errors.hpp"
#include "pscli/kernels.hpp"
#include "pscli/schemes.hpp"
#include "support.hpp"

using namespace pscli;

namespace {

Scheme random_scheme(int p, int d, std::mt19937_64& rng) {
  std::vector<Matrix> R;
  std::vector<double> s;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int j = 0; j < p; ++j) {
    R.push_back(Matrix::NullaryExpr(d, d, [&] { return u(rng); }) / d);
    s.push_back(u(rng) * 0.1);
  }
  auto coeffs = [R, s](const Matrix& X) {
    std::vector<Matrix> C;
    for (std::size_t j = 0; j < R.size(); ++j) C.push_back(R[j] + s[j] * X);
    return C;
  };
  return Scheme("random", p, coeffs, [](const Matrix& X) -> Matrix { return -0.01 * X; });
}

}  // namespace

TEST_CASE("iteration matrix is block companion") {
  const auto s = a3();
  const Matrix A = diag_hard_instance(2, 2.0, 100.0).A();
  const auto im = iteration_matrix(s, A);
  REQUIRE(im.M.rows() == 6);
  CHECK(im.M.block(0, 2, 2, 2).isIdentity());
  CHECK(im.M.block(2, 4, 2, 2).isIdentity());
  CHECK(im.M.block(0, 0, 2, 2).isZero());
  const auto C = s.coefficients(A);
  for (int j = 0; j < 3; ++j) CHECK((im.M.block(4, 2 * j, 2, 2) - C[j]).norm() == 0.0);
  CHECK(im.U.topRows(4).isZero());
  CHECK(im.U.bottomRows(2).isIdentity());
  CHECK_THROWS_AS(iteration_matrix(newton(), A), InvalidArgument);
}

TEST_CASE("spectral radius agrees with the factor family for linear schemes") {
  std::mt19937_64 rng(21);
  for (const auto& s : {fgd(2, 100), heavy_ball(2, 100), agd(2, 100), a3()}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix A = testing::random_spd(5, 2.0, 100.0, rng);
      double expected = 0.0;
      for (double eta : spectrum(A)) expected = std::max(expected, root_radius(eval_factor(s.linear()->family(), eta)));
      CHECK(rho_lambda(s, A) == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("determinant identity on random schemes") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> lam(-1.5, 1.5);
  for (int p = 1; p <= 4; ++p) {
    for (int d = 1; d <= 5; d += 2) {
      const auto s = random_scheme(p, d, rng);
      const Matrix A = testing::random_spd(std::max(d, 1), 1.0, 3.0, rng, d >= 2);
      std::vector<double> ls(10);
      for (auto& l : ls) l = lam(rng);
      CHECK(det_identity_check(s, A, ls) <= 1e-8);
    }
  }
}

TEST_CASE("consistency verdicts") {
  const Matrix A = diag_hard_instance(2, 2.0, 100.0).A();
  CHECK(is_consistent(fgd(2, 100), A).ok());
  CHECK(is_consistent(newton(), A).ok());

  auto null_inversion = Scheme(
      "null_inversion", 1, [](const Matrix& X) { return std::vector<Matrix>{Matrix::Identity(X.rows(), X.cols())}; },
      [](const Matrix& X) -> Matrix { return Matrix::Zero(X.rows(), X.cols()); });
  const auto v1 = is_consistent(null_inversion, A);
  CHECK(v1.status == ConsistencyVerdict::Status::fails_condition_1);
  CHECK(std::string(v1.label()) == "fails_condition_1");

  const auto v2 = is_consistent(gradient_descent(2.0 / 2.0), A);
  CHECK(v2.status == ConsistencyVerdict::Status::fails_condition_2);
  CHECK(v2.rho > 1.0);

  auto wrong_fixed_point = Scheme(
      "wrong", 1, [](const Matrix& X) { return std::vector<Matrix>{0.5 * Matrix::Identity(X.rows(), X.cols())}; },
      [](const Matrix& X) -> Matrix { return -0.1 * Matrix::Identity(X.rows(), X.cols()); });
  CHECK(is_consistent(wrong_fixed_point, A).status == ConsistencyVerdict::Status::fails_condition_1);
}

TEST_CASE("fixed point is stacked copies of the minimizer") {
  std::mt19937_64 rng(4);
  for (const auto& s : {fgd(1, 10), heavy_ball(1, 10), agd(1, 10), a3(1, 10)}) {
    const Quadratic q(testing::random_spd(3, 1.0, 10.0, rng), testing::random_vector(3, rng));
    const Vector z = fixed_point(s, q);
    const Vector x = minimizer(q);
    for (int j = 0; j < s.p(); ++j) CHECK((z.segment(3 * j, 3) - x).norm() <= 1e-9 * x.norm());
  }
  const auto q = spectral_gap_instance();
  CHECK((fixed_point(newton(), q) - minimizer(q)).norm() < 1e-9);
  CHECK_THROWS_AS(fixed_point(gradient_descent(1.0), diag_hard_instance(2, 2, 100)), NumericalError);
}

TEST_CASE("expected run matches the scalar recursion of gradient descent") {
  const auto q = diag_hard_instance(2, 2.0, 100.0);
  const double beta = 2.0 / 102.0;
  const std::vector<Vector> init{Vector::Ones(2)};
  const auto t = run(fgd(2, 100), q, init, 50);
  REQUIRE(t.size() == 51);
  for (int k = 0; k <= 50; ++k) {
    const double e0 = std::pow(1 - beta * 100.0, k);
    const double e1 = std::pow(1 - beta * 2.0, k);
    CHECK(t.error_norms[k] == doctest::Approx(std::hypot(e0, e1)).epsilon(1e-12));
  }
}

TEST_CASE("newton converges in a single step") {
  const auto q = spectral_gap_instance();
  const std::vector<Vector> init{Vector::Zero(2)};
  const auto t = run(newton(), q, init, 10);
  REQUIRE(t.size() == 2);
  CHECK(t.error_norms[1] <= 1e-10 * minimizer(q).norm());
}

TEST_CASE("run validation and divergence") {
  const auto q = diag_hard_instance(2, 2.0, 100.0);
  const std::vector<Vector> one{Vector::Ones(2)};
  CHECK_THROWS_AS(run(agd(2, 100), q, one, 10), InvalidArgument);
  CHECK_THROWS_AS(run(fgd(2, 100), q, one, 0), InvalidArgument);
  CHECK_THROWS_AS(run(fgd(2, 100), q, one, 10, RunMode::sampled), InvalidArgument);
  const std::vector<Vector> wrong_dim{Vector::Ones(3)};
  CHECK_THROWS_AS(run(fgd(2, 100), q, wrong_dim, 10), InvalidArgument);
  CHECK_THROWS_AS(run(gradient_descent(0.05), q, one, 1000), DivergenceError);
}

TEST_CASE("sampled coordinate descent averages to the expected map") {
  const auto s = jacobi_scd();
  std::mt19937_64 rng(9);
  const Matrix A = testing::random_spd(3, 1.0, 4.0, rng);
  Matrix mean = Matrix::Zero(3, 3);
  Matrix mean_n = Matrix::Zero(3, 3);
  auto gen = trial_generator(1, 0);
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) {
    const auto r = s.sample(A, gen);
    mean += r.coeffs[0];
    mean_n += r.inversion;
  }
  mean /= draws;
  mean_n /= draws;
  const auto C = s.coefficients(A);
  CHECK((mean - C[0]).cwiseAbs().maxCoeff() < 0.02);
  CHECK((mean_n - s.inversion(A)).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("monte carlo is deterministic and matches the serial reference") {
  const auto s = jacobi_scd();
  const auto q = sdca_dual_quadratic(3, 0.5);
  const std::vector<Vector> init{Vector::Ones(3)};
  const auto par = monte_carlo(s, q, init, 15, 500, 42, Execution::parallel);
  const auto again = monte_carlo(s, q, init, 15, 500, 42, Execution::parallel);
  const auto ser = monte_carlo(s, q, init, 15, 500, 42, Execution::serial);
  REQUIRE(par.mean.size() == 16);
  CHECK(par.trials == 500);
  for (std::size_t k = 0; k < par.mean.size(); ++k) {
    CHECK((par.mean[k] - again.mean[k]).norm() == 0.0);
    CHECK((par.mean[k] - ser.mean[k]).norm() <= 1e-13);
    CHECK((par.covariance[k] - ser.covariance[k]).norm() <= 1e-12);
  }
  CHECK(par.covariance[0].norm() == 0.0);
  CHECK_THROWS_AS(monte_carlo(fgd(2, 100), q, init, 5, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(monte_carlo(s, q, init, 5, 0, 1), InvalidArgument);
}

TEST_CASE("trial generators are reproducible and distinct") {
  auto a = trial_generator(5, 3);
  auto b = trial_generator(5, 3);
  auto c = trial_generator(5, 4);
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
}

TEST_CASE("log slope fit") {
  std::vector<double> e;
  for (int k = 0; k <= 100; ++k) e.push_back(3.0 * std::pow(0.9, k));
  CHECK(fit_log_slope(e, 10, 90) == doctest::Approx(std::log(0.9)).epsilon(1e-12));
  CHECK_THROWS_AS(fit_log_slope(e, 50, 200), InvalidArgument);
  e[20] = 0.0;
  CHECK_THROWS_AS(fit_log_slope(e, 10, 30), NumericalError);
}

TEST_CASE("iteration complexity bounds") {
  const auto ic = iteration_complexity(0.5, 1e-6);
  CHECK(ic.lower == doctest::Approx(std::log(1e6)));
  CHECK(ic.upper == doctest::Approx(2.0 * std::log(1e6)));
  double prev = 0.0;
  for (double rho : {0.9, 0.99, 0.999, 0.9999}) {
    const auto b = iteration_complexity(rho, 1e-3);
    CHECK(b.lower > prev);
    CHECK(b.upper > b.lower);
    prev = b.lower;
  }
  CHECK_THROWS_AS(iteration_complexity(1.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(iteration_complexity(0.5, 1.0), InvalidArgument);
  CHECK_THROWS_AS(iteration_complexity(0.5, 0.1, 0.0), InvalidArgument);
}
