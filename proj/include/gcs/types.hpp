#pragma once

#include <Eigen/Dense>

namespace gcs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

}  // namespace gcs
