#include "hhv/geometry/shapes.hpp"

#include "hhv/geometry/functionals.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace hhv::geometry {
namespace {

// Vertices of a regular k-simplex in the first k coordinates of R^dim,
// centred at the origin.
std::vector<Vec> simplex_vertices(int k, int dim, double side) {
  std::vector<Vec> v(k + 1, Vec::Zero(dim));
  for (int i = 1; i <= k; ++i) {
    Vec c = Vec::Zero(dim);
    for (int j = 0; j < i; ++j) c += v[j];
    c /= i;
    const double r2 = (v[0] - c).squaredNorm();
    v[i] = c;
    v[i][i - 1] = std::sqrt(side * side - r2);
  }
  Vec c = Vec::Zero(dim);
  for (const auto& p : v) c += p;
  c /= (k + 1);
  for (auto& p : v) p -= c;
  return v;
}

void check_dimension(int n) {
  if (n < 1 || n > kMaxDimension)
    throw Error(ErrorCode::UnsupportedDimension, "dimension must be in 1..4");
}

std::vector<Vec> thin_simplex_vertices(int n, double eta, double apex) {
  std::vector<Vec> pts;
  for (const auto& b : simplex_vertices(n - 1, n - 1, eta)) {
    Vec p(n);
    p[0] = -1.0;
    p.tail(n - 1) = b;
    pts.push_back(p);
  }
  Vec a = Vec::Zero(n);
  a[0] = apex;
  pts.push_back(a);
  return pts;
}

double thin_inradius(int n, double eta, double apex) {
  const auto pts = thin_simplex_vertices(n, eta, apex);
  return inradius(ConvexBody::from_points(pts, Provenance::ThinSimplex)).radius;
}

}  // namespace

double regular_simplex_inradius(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return 1.0 / std::sqrt(2.0 * n * (n + 1));
}

ConvexBody regular_simplex(int n, double side) {
  check_dimension(n);
  if (!(side > 0.0)) throw Error(ErrorCode::InvalidArgument, "side must be positive");
  return ConvexBody::from_points(simplex_vertices(n, n, side), Provenance::Simplex);
}

double thin_simplex_apex(int n, double eta) {
  if (n < 2 || n > kMaxDimension) throw Error(ErrorCode::UnsupportedDimension, "thin simplex needs n in 2..4");
  if (!(eta > 0.0)) throw Error(ErrorCode::InvalidArgument, "eta must be positive");
  // The inradius grows with the apex height and tends to that of the base.
  if (eta * regular_simplex_inradius(n - 1) <= 1.0)
    throw Error(ErrorCode::InfeasibleSimplex, "base simplex too small for inradius 1");
  double lo = -1.0, hi = 1.0;
  for (int k = 0; thin_inradius(n, eta, hi) < 1.0; ++k) {
    if (k > 200) throw Error(ErrorCode::InfeasibleSimplex, "no apex height reaches inradius 1");
    lo = hi;
    hi = 2.0 * hi + 1.0;
  }
  for (int k = 0; k < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++k) {
    const double mid = 0.5 * (lo + hi);
    (thin_inradius(n, eta, mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ConvexBody thin_simplex(int n, double eta) {
  const double apex = thin_simplex_apex(n, eta);
  ConvexBody body = ConvexBody::from_points(thin_simplex_vertices(n, eta, apex), Provenance::ThinSimplex);
  const Inball ball = inradius(body);
  if (std::abs(ball.radius - 1.0) > 1e-10)
    throw Error(ErrorCode::InfeasibleSimplex, "inradius check failed");
  const double ratio = n * body.volume() / body.surface_area();
  if (std::abs(ratio - 1.0) > 1e-8)
    throw Error(ErrorCode::InfeasibleSimplex, "volume/perimeter identity check failed");
  for (const auto& v : body.vertices())
    if (v.norm() > 2.0 * eta) throw Error(ErrorCode::InfeasibleSimplex, "body leaves the ball of radius 2 eta");
  return body;
}

ConvexBody box(const Vec& lower, const Vec& upper) {
  const int n = static_cast<int>(lower.size());
  check_dimension(n);
  if (upper.size() != n || !((upper - lower).minCoeff() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "box needs lower < upper componentwise");
  std::vector<Vec> corners;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec c(n);
    for (int k = 0; k < n; ++k) c[k] = (mask >> k) & 1 ? upper[k] : lower[k];
    corners.push_back(c);
  }
  return ConvexBody::from_points(corners, Provenance::Box);
}

ConvexBody ball_polytope(int n, std::size_t segments, double radius, const Vec& center) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const Vec c = center.size() == 0 ? Vec(Vec::Zero(n)) : center;
  if (c.size() != n) throw Error(ErrorCode::InvalidArgument, "center dimension mismatch");
  std::vector<Vec> pts;
  if (n == 2) {
    if (segments < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 segments");
    for (std::size_t i = 0; i < segments; ++i) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(segments);
      pts.push_back(c + radius * make_vec({std::cos(a), std::sin(a)}));
    }
  } else if (n == 3) {
    if (segments < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 points");
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double m = static_cast<double>(segments);
    for (std::size_t i = 0; i < segments; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / m;
      const double rho = std::sqrt(1.0 - z * z);
      const double a = golden * static_cast<double>(i);
      pts.push_back(c + radius * make_vec({rho * std::cos(a), rho * std::sin(a), z}));
    }
  } else {
    throw Error(ErrorCode::UnsupportedDimension, "polytopal balls are built in 2-D and 3-D");
  }
  return ConvexBody::from_points(pts, Provenance::BallPolygon);
}

}  // namespace hhv::geometry
