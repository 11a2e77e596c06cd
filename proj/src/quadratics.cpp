#include "pscli/quadratics.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "pscli/errors.hpp"

namespace pscli {
namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kSingularTol = 1e-12;

void require_square(const Matrix& A, const char* what) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw InvalidArgument(std::string(what) + ": matrix must be square and non-empty");
}

}  // namespace

double asymmetry(const Matrix& A) {
  const double norm = A.norm();
  if (norm == 0.0) return 0.0;
  return (A - A.transpose()).norm() / norm;
}

SymmetricEigen eigen_decompose(const Matrix& A) {
  require_square(A, "eigen_decompose");
  if (asymmetry(A) > kSymmetryTol) throw InvalidArgument("eigen_decompose: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(A);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen_decompose: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> spectrum(const Matrix& A) {
  const auto eig = eigen_decompose(A);
  return {eig.values.data(), eig.values.data() + eig.values.size()};
}

Quadratic::Quadratic(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
  require_square(A_, "Quadratic");
  if (b_.size() != A_.rows()) throw InvalidArgument("Quadratic: b has the wrong dimension");
  if (!A_.allFinite() || !b_.allFinite()) throw InvalidArgument("Quadratic: non-finite entries");
  const double asym = asymmetry(A_);
  if (asym > kSymmetryTol)
    std::cerr << "warning: symmetrizing input matrix (relative asymmetry " << asym << ")\n";
  A_ = (0.5 * (A_ + A_.transpose())).eval();
  eigenvalues_ = spectrum(A_);
  if (eigenvalues_.front() <= 0.0) throw InvalidArgument("Quadratic: matrix is not positive definite");
}

double Quadratic::value(const Vector& x) const { return 0.5 * x.dot(A_ * x) + b_.dot(x); }

Vector Quadratic::gradient(const Vector& x) const { return A_ * x + b_; }

Vector minimizer(const Quadratic& q) {
  if (q.mu() < kSingularTol) throw NumericalError("minimizer: Hessian is numerically singular");
  return q.A().llt().solve(-q.b());
}

Quadratic diag_hard_instance(int d, double mu, double L, Vector b) {
  if (d < 2) throw InvalidArgument("diag_hard_instance: d must be at least 2");
  if (!(mu > 0.0) || !(mu < L)) throw InvalidArgument("diag_hard_instance: need 0 < mu < L");
  Vector diag = Vector::Constant(d, mu);
  diag(0) = L;
  if (b.size() == 0) b = Vector::Zero(d);
  return Quadratic(diag.asDiagonal(), std::move(b));
}

Matrix rotated_hard_instance(double mu, double L) {
  if (!(mu > 0.0) || !(mu < L)) throw InvalidArgument("rotated_hard_instance: need 0 < mu < L");
  Matrix A(2, 2);
  A << (L + mu) / 2, (mu - L) / 2,
       (mu - L) / 2, (L + mu) / 2;
  return A;
}

Quadratic spectral_gap_instance(double mu, double L) {
  Matrix A = rotated_hard_instance(mu, L);
  Vector target = Vector::Constant(2, 100.0);
  Vector b = -A * target;
  return Quadratic(std::move(A), std::move(b));
}

Quadratic nesterov_lb_matrix(int d) {
  if (d < 2) throw InvalidArgument("nesterov_lb_matrix: d must be at least 2");
  Matrix A = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    A(i, i) = 0.5;
    if (i + 1 < d) A(i, i + 1) = A(i + 1, i) = -0.25;
  }
  Vector b = Vector::Zero(d);
  b(0) = -1.0;
  return Quadratic(std::move(A), std::move(b));
}

Quadratic sdca_dual_quadratic(int n, double lambda) {
  if (n < 2) throw InvalidArgument("sdca_dual_quadratic: n must be at least 2");
  if (!(lambda > 0.0)) throw InvalidArgument("sdca_dual_quadratic: lambda must be positive");
  const double nn = n;
  Matrix A = Matrix::Constant(n, n, 1.0 / (lambda * nn * nn));
  A.diagonal().array() += 1.0 / (2.0 * nn);
  return Quadratic(std::move(A), Vector::Zero(n));
}

nlohmann::json to_json(const Quadratic& q) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < q.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < q.dim(); ++j) row.push_back(q.A()(i, j));
    rows.push_back(std::move(row));
  }
  nlohmann::json b = nlohmann::json::array();
  for (int i = 0; i < q.dim(); ++i) b.push_back(q.b()(i));
  return {{"A", std::move(rows)}, {"b", std::move(b)}};
}

Quadratic quadratic_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("b"))
    throw InvalidArgument("instance JSON must be an object with keys \"A\" and \"b\"");
  const auto& rows = j.at("A");
  const auto& bj = j.at("b");
  if (!rows.is_array() || !bj.is_array() || rows.empty())
    throw InvalidArgument("instance JSON: \"A\" and \"b\" must be non-empty arrays");
  const auto d = static_cast<Eigen::Index>(rows.size());
  Matrix A(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
      throw InvalidArgument("instance JSON: \"A\" must be square");
    for (Eigen::Index k = 0; k < d; ++k) A(i, k) = row.at(k).get<double>();
  }
  if (static_cast<Eigen::Index>(bj.size()) != d) throw InvalidArgument("instance JSON: \"b\" has the wrong length");
  Vector b(d);
  for (Eigen::Index i = 0; i < d; ++i) b(i) = bj.at(i).get<double>();
  return Quadratic(std::move(A), std::move(b));
}

Quadratic load_quadratic(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed instance JSON in " + path + ": " + e.what());
  }
  return quadratic_from_json(j);
}

}  // namespace pscli
