#pragma once

#include <Eigen/Dense>

namespace hhv::geometry::detail {

struct LpResult {
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// maximize c.x subject to A x <= b with x free, starting from a strictly
/// feasible point x0 (b - A x0 > 0).  Dense tableau simplex, Dantzig pricing
/// with a fall back to Bland's rule against cycling.  The final vertex is
/// re-solved on its active constraints to remove accumulated round-off.
LpResult maximize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  const Eigen::VectorXd& x0);

}  // namespace hhv::geometry::detail
