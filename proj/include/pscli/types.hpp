#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace pscli {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;

}  // namespace pscli
