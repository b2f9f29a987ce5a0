#pragma once

#include "hhv/core.hpp"

#include <span>
#include <vector>

namespace hhv::geometry::detail {

struct HullFacet {
  Vec normal;  // unit, outward
  double offset = 0.0;
  std::vector<int> vertices;
};

struct Hull {
  std::vector<Vec> vertices;
  std::vector<HullFacet> facets;
};

/// Largest coordinate extent of a point set.
double extent(std::span<const Vec> points);

/// Drops points within `tol` of an earlier point.
std::vector<Vec> dedupe(std::span<const Vec> points, double tol);

/// Convex hull with facet description.  Throws DegenerateBody when the points
/// do not span R^n.  In 2-D the vertices come back in counter-clockwise order
/// and facet i joins vertex i to vertex i+1.
Hull convex_hull(std::span<const Vec> points, double tol);

Hull hull_1d(std::span<const Vec> points, double tol);
Hull hull_2d(std::span<const Vec> points, double tol);
Hull hull_3d(std::span<const Vec> points, double tol);
/// Enumerates every n-subset of points as a candidate supporting hyperplane.
/// O(C(V, n) * V); meant for n = 4 and as a cross-check in tests.
Hull hull_brute_force(std::span<const Vec> points, double tol);

/// Unit normal of the hyperplane through n affinely independent points in
/// R^n (sign arbitrary); zero vector when they are dependent.
Vec hyperplane_normal(std::span<const Vec> points);

/// Orthonormal basis (n x (n-1)) of the complement of a unit vector.
Mat complement_basis(const Vec& unit_normal);

}  // namespace hhv::geometry::detail
