#pragma once

#include <Eigen/Core>

namespace proxpt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace proxpt
