// Common dense types used across the library.
#pragma once

#include <Eigen/Dense>

namespace lagdelay {

using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace lagdelay
