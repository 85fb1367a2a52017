#pragma once

#include <Eigen/Core>

namespace isoflow {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Numerical tolerances shared across modules.
namespace tol {
inline constexpr double algebraic = 1e-10;  // identities that hold exactly in exact arithmetic
inline constexpr double eigen = 1e-8;       // grouping ad-eigenvalues, vector equality of roots
inline constexpr double ode = 1e-8;         // RK4 integration against closed forms
inline constexpr double flow_base = 1e-8;   // scaled by (1 + |u0|)
}  // namespace tol

}  // namespace isoflow
