#include "hhv/torsion/torsion.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hhv::torsion {
namespace {

constexpr int kDi[4] = {1, -1, 0, 0};
constexpr int kDj[4] = {0, 0, 1, -1};

// Chord of the polygon on the line {coord[axis] = c}: the range of the other
// coordinate, empty when lo >= hi.
std::pair<double, double> chord(const geometry::ConvexBody& body, int axis, double c) {
  const int other = 1 - axis;
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (const auto& f : body.facets()) {
    const double a = f.normal[other], rest = f.offset - f.normal[axis] * c;
    if (a > 0.0) hi = std::min(hi, rest / a);
    else if (a < 0.0) lo = std::max(lo, rest / a);
    else if (rest < 0.0) return {1.0, 0.0};
  }
  return {lo, hi};
}

}  // namespace

std::size_t GridDiscretization::unknowns() const {
  return static_cast<std::size_t>(std::count_if(kind.begin(), kind.end(), [](NodeKind k) { return k != NodeKind::Exterior; }));
}

GridDiscretization discretize(const geometry::ConvexBody& body, double h) {
  if (body.dimension() != 2) throw Error(ErrorCode::UnsupportedDimension, "torsion solves are 2-D only");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  const Vec lo = body.lower(), hi = body.upper();
  GridDiscretization g;
  g.h = h;
  const double cells_x = std::ceil((hi[0] - lo[0]) / h), cells_y = std::ceil((hi[1] - lo[1]) / h);
  if (cells_x * cells_y > 5e7) throw Error(ErrorCode::InvalidArgument, "grid is too fine");
  g.nx = static_cast<int>(cells_x);
  g.ny = static_cast<int>(cells_y);
  g.origin = Vec2(0.5 * (lo[0] + hi[0]) - 0.5 * g.nx * h, 0.5 * (lo[1] + hi[1]) - 0.5 * g.ny * h);
  const std::size_t total = static_cast<std::size_t>(g.nx) * g.ny;
  g.kind.assign(total, NodeKind::Exterior);
  g.arms.assign(total, {h, h, h, h});
  g.unknown.assign(total, -1);

  // Row and column chords give inside tests and axis distances to the
  // boundary; nodes closer than `slack` to the boundary along an axis are
  // treated as boundary points.
  const double slack = 1e-6 * h;
  std::vector<std::pair<double, double>> rows(g.ny), cols(g.nx);
  for (int j = 0; j < g.ny; ++j) rows[j] = chord(body, 1, g.position(0, j)[1]);
  for (int i = 0; i < g.nx; ++i) cols[i] = chord(body, 0, g.position(i, 0)[0]);
  auto dist = [&](int i, int j) {
    const Vec2 p = g.position(i, j);
    return std::array<double, 4>{rows[j].second - p[0], p[0] - rows[j].first, cols[i].second - p[1],
                                 p[1] - cols[i].first};
  };
  auto in = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= g.nx || j >= g.ny) return false;
    const auto d = dist(i, j);
    return *std::min_element(d.begin(), d.end()) > slack;
  };

  int next = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (!in(i, j)) continue;
      const std::size_t id = g.node(i, j);
      g.kind[id] = NodeKind::Interior;
      g.unknown[id] = next++;
      const auto d = dist(i, j);
      for (int k = 0; k < 4; ++k) {
        if (in(i + kDi[k], j + kDj[k])) continue;
        g.kind[id] = NodeKind::NearBoundary;
        g.arms[id][k] = std::min(d[k], h);
      }
    }
  if (next < 100) throw Error(ErrorCode::GridTooCoarse, "fewer than 100 grid nodes inside the body");
  return g;
}

double TorsionSolution::evaluate(const Vec2& x) const {
  const auto& g = grid;
  const double fx = (x[0] - g.origin[0]) / g.h - 0.5, fy = (x[1] - g.origin[1]) / g.h - 0.5;
  const int ci = static_cast<int>(std::lround(fx)), cj = static_cast<int>(std::lround(fy));
  auto at = [&](int i, int j) { return g.inside(i, j) ? u[g.node(i, j)] : 0.0; };

  // Biquadratic Lagrange interpolation on the nearest full 3x3 block.
  int best_di = 0, best_dj = 0, best_cost = 99;
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) {
      const int cost = std::abs(di) + std::abs(dj);
      if (cost >= best_cost) continue;
      bool full = true;
      for (int a = -1; a <= 1 && full; ++a)
        for (int b = -1; b <= 1 && full; ++b) full = g.inside(ci + di + a, cj + dj + b);
      if (full) best_di = di, best_dj = dj, best_cost = cost;
    }
  if (best_cost < 99) {
    const int i0 = ci + best_di, j0 = cj + best_dj;
    const double sx = fx - i0, sy = fy - j0;
    if (std::abs(sx) <= 1.5 && std::abs(sy) <= 1.5) {
      const double lx[3] = {0.5 * sx * (sx - 1.0), 1.0 - sx * sx, 0.5 * sx * (sx + 1.0)};
      const double ly[3] = {0.5 * sy * (sy - 1.0), 1.0 - sy * sy, 0.5 * sy * (sy + 1.0)};
      double v = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) v += lx[a] * ly[b] * u[g.node(i0 + a - 1, j0 + b - 1)];
      return v;
    }
  }
  const int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
  const double tx = fx - i, ty = fy - j;
  return (1 - tx) * (1 - ty) * at(i, j) + tx * (1 - ty) * at(i + 1, j) + (1 - tx) * ty * at(i, j + 1) +
         tx * ty * at(i + 1, j + 1);
}

TorsionSolution solve_torsion(const geometry::ConvexBody& body, double h, const TorsionOptions& options) {
  TorsionSolution sol;
  sol.grid = discretize(body, h);
  const auto& g = sol.grid;
  const int n = static_cast<int>(g.unknowns());

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 5);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t id = g.node(i, j);
      const int row = g.unknown[id];
      if (row < 0) continue;
      const auto& arm = g.arms[id];
      double diag = 0.0;
      // -u_xx - u_yy with unequal arms: 2/(a+b) * ((u - u_e)/a + (u - u_w)/b).
      for (int axis = 0; axis < 2; ++axis) {
        const double a = arm[2 * axis], b = arm[2 * axis + 1];
        for (int side = 0; side < 2; ++side) {
          const int d = 2 * axis + side;
          const double len = side == 0 ? a : b;
          const double coef = 2.0 / ((a + b) * len);
          diag += coef;
          const int ii = i + kDi[d], jj = j + kDj[d];
          if (len == h && g.inside(ii, jj)) trip.emplace_back(row, g.unknown[g.node(ii, jj)], -coef);
        }
      }
      trip.emplace_back(row, row, diag);
    }
  Eigen::SparseMatrix<double, Eigen::RowMajor> a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);

  Eigen::BiCGSTAB<Eigen::SparseMatrix<double, Eigen::RowMajor>, Eigen::IncompleteLUT<double>> solver;
  solver.preconditioner().setDroptol(1e-4);
  solver.preconditioner().setFillfactor(10);
  solver.compute(a);
  solver.setTolerance(options.tolerance);
  solver.setMaxIterations(std::max(1000, 4 * (g.nx + g.ny)));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  double rel = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 4 && !(rel <= options.tolerance); ++attempt) {
    x = solver.solveWithGuess(rhs, x);
    sol.iterations += static_cast<int>(solver.iterations());
    rel = (rhs - a * x).norm() / rhs.norm();
    if (!std::isfinite(rel)) break;
  }
  if (!(rel <= options.tolerance))
    throw Error(ErrorCode::SolverDiverged, "linear solver did not reach the requested residual");
  sol.residual_norm = rel;
  sol.max_defect = (a * x - rhs).cwiseAbs().maxCoeff();

  sol.u.assign(g.kind.size(), 0.0);
  for (std::size_t id = 0; id < g.kind.size(); ++id)
    if (g.unknown[id] >= 0) sol.u[id] = x[g.unknown[id]];
  sol.sup_norm = *std::max_element(sol.u.begin(), sol.u.end());

  const auto verts = body.vertices();
  const auto facets = body.facets();
  const int m = static_cast<int>(verts.size());
  const int samples = std::max(1, options.samples_per_facet);
  const double d = 2.0 * h;
  for (int f = 0; f < m; ++f) {
    const Vec2 p0 = verts[f].head<2>(), p1 = verts[(f + 1) % m].head<2>();
    const double len = (p1 - p0).norm();
    const Vec2 tangent = (p1 - p0) / len;
    const Vec2 inward = -facets[f].normal.head<2>();
    for (int k = 0; k < samples; ++k) {
      const double frac = samples == 1 ? 0.5
                                       : options.corner_fraction +
                                             (1.0 - 2.0 * options.corner_fraction) * k / (samples - 1.0);
      BoundarySample bs;
      bs.facet = f;
      bs.s = frac * len;
      bs.point = p0 + bs.s * tangent;
      bs.dnu = (4.0 * sol.evaluate(bs.point + d * inward) - sol.evaluate(bs.point + 2.0 * d * inward)) / (2.0 * d);
      sol.boundary_trace.push_back(bs);
    }
  }
  return sol;
}

double max_normal_derivative(const TorsionSolution& sol) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : sol.boundary_trace) best = std::max(best, s.dnu);
  return best;
}

double sup_norm(const TorsionSolution& sol) { return sol.sup_norm; }

}  // namespace hhv::torsion
