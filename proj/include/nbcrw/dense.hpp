#pragma once

#include <Eigen/Dense>

namespace nbcrw {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultTol = 1e-12;

}  // namespace nbcrw
