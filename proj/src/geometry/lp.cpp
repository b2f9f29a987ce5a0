#include "lp.hpp"

#include "hhv/core.hpp"

#include <cmath>
#include <vector>

namespace hhv::geometry::detail {

LpResult maximize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  const Eigen::VectorXd& x0) {
  const int m = static_cast<int>(a.rows());
  const int k = static_cast<int>(a.cols());
  const int cols = 2 * k + m;
  const Eigen::VectorXd slack0 = b - a * x0;
  if (slack0.size() > 0 && slack0.minCoeff() < 0.0)
    throw Error(ErrorCode::InvalidArgument, "LP start point is infeasible");

  // Tableau rows 0..m-1 are constraints, row m is the reduced-cost row.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, cols + 1);
  t.block(0, 0, m, k) = a;
  t.block(0, k, m, k) = -a;
  t.block(0, 2 * k, m, m).setIdentity();
  t.col(cols).head(m) = slack0;
  t.block(m, 0, 1, k) = -c.transpose();
  t.block(m, k, 1, k) = c.transpose();
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = 2 * k + i;

  const double eps = 1e-12 * std::max(1.0, c.cwiseAbs().maxCoeff());
  const int dantzig_limit = 50 * (m + k) + 100;
  for (int iter = 0;; ++iter) {
    const bool bland = iter > dantzig_limit;
    if (iter > 40 * dantzig_limit) throw Error(ErrorCode::SolverDiverged, "simplex iteration limit");
    int enter = -1;
    double best = -eps;
    for (int j = 0; j < cols; ++j) {
      if (t(m, j) < best) {
        enter = j;
        if (bland) break;
        best = t(m, j);
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      const double piv = t(i, enter);
      if (piv <= 1e-12) continue;
      const double r = t(i, cols) / piv;
      if (leave < 0 || r < ratio - 1e-15 || (std::abs(r - ratio) <= 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        ratio = r;
      }
    }
    if (leave < 0) throw Error(ErrorCode::InvalidArgument, "LP is unbounded");
    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;
  }

  Eigen::VectorXd d = Eigen::VectorXd::Zero(k);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < k) d[basis[i]] += t(i, cols);
    else if (basis[i] < 2 * k) d[basis[i] - k] -= t(i, cols);
  }
  LpResult res;
  res.x = x0 + d;
  res.objective = c.dot(res.x);

  // Polish on the active set.
  const Eigen::VectorXd slack = b - a * res.x;
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  std::vector<int> active;
  for (int i = 0; i < m; ++i)
    if (slack[i] <= 1e-9 * scale) active.push_back(i);
  if (static_cast<int>(active.size()) >= k) {
    Eigen::MatrixXd aa(active.size(), k);
    Eigen::VectorXd bb(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) {
      aa.row(i) = a.row(active[i]);
      bb[i] = b[active[i]];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(aa);
    if (qr.rank() == k) {
      const Eigen::VectorXd xp = qr.solve(bb);
      const double viol = (a * xp - b).maxCoeff();
      if (viol <= 1e-12 * scale && c.dot(xp) >= res.objective - 1e-9 * std::max(1.0, std::abs(res.objective))) {
        res.x = xp;
        res.objective = c.dot(xp);
      }
    }
  }
  return res;
}

}  // namespace hhv::geometry::detail
