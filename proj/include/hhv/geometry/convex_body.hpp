#pragma once

#include "hhv/core.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace hhv::geometry {

enum class Provenance {
  Explicit,
  Box,
  BallPolygon,
  Simplex,
  ThinSimplex,
  Scaled,
  InnerParallel,
  Intersection,
  Prism,
};

std::string_view to_string(Provenance p);

/// Closed half-space {x : <normal, x> <= offset}.  Normals need not be unit.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

struct Facet {
  Vec normal;                 // unit outward normal
  double offset = 0.0;        // <normal, x> <= offset on the body
  std::vector<int> vertices;  // indices into ConvexBody::vertices()
  double measure = 0.0;       // (n-1)-dimensional measure
  Vec centroid;               // centroid of the facet
};

/// Convex polytope in R^n (1 <= n <= 4), stored by its extreme points with the
/// facet description and the basic measures derived once at construction.
///
/// Construction takes the convex hull of the input, so the points need not be
/// in convex position.  Inputs whose hull has empty interior, or whose volume
/// falls below 1e-12 * diam^n, are rejected with DegenerateBody.
class ConvexBody {
 public:
  static ConvexBody from_points(std::span<const Vec> points,
                                Provenance provenance = Provenance::Explicit);

  /// Bounded intersection of `halfspaces` with `container`.  The container
  /// supplies boundedness; its facets take part in the intersection.
  static ConvexBody from_halfspaces(std::span<const Halfspace> halfspaces,
                                    const ConvexBody& container,
                                    Provenance provenance = Provenance::Intersection);

  int dimension() const { return dimension_; }
  Provenance provenance() const { return provenance_; }
  std::span<const Vec> vertices() const { return vertices_; }
  std::span<const Facet> facets() const { return facets_; }

  double volume() const { return volume_; }
  double surface_area() const { return surface_area_; }
  const Vec& centroid() const { return centroid_; }
  /// Largest vertex-vertex distance.
  double diameter() const { return diameter_; }
  /// Absolute tolerance for exact predicates, 1e-9 relative to the extent.
  double tolerance() const { return tolerance_; }

  /// max over the body of <d, x>.
  double support(const Vec& d) const;
  /// max_i (<a_i, x> - b_i); <= 0 inside, and equal to the distance to the
  /// boundary (negated) for interior points.
  double max_violation(const Vec& x) const;
  bool contains(const Vec& x, double tol = 0.0) const { return max_violation(x) <= tol; }
  /// Axis-aligned bounding box of the vertices.
  Vec lower() const;
  Vec upper() const;

  /// Same body with a new provenance tag.
  ConvexBody retagged(Provenance p) const;

 private:
  ConvexBody() = default;
  void finalize(std::vector<Vec> vertices, std::vector<Facet> facets);

  int dimension_ = 0;
  Provenance provenance_ = Provenance::Explicit;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  double volume_ = 0.0;
  double surface_area_ = 0.0;
  Vec centroid_;
  double diameter_ = 0.0;
  double tolerance_ = 0.0;
};

/// Lebesgue measure of the body.
inline double volume(const ConvexBody& body) { return body.volume(); }
/// Sum of facet measures.
inline double surface_area(const ConvexBody& body) { return body.surface_area(); }

/// k-dimensional measure and centroid of the convex hull of points in R^k
/// (k = 0..4; k = 0 gives measure 1).  Used for facet measures after the
/// facet is expressed in coordinates of its own hyperplane.
struct MeasuredSet {
  double measure = 0.0;
  Vec centroid;
};
MeasuredSet hull_measure(std::span<const Vec> points);

/// Edges of a 3-D body: vertex pair, length, and the exterior dihedral angle
/// (angle between the outward normals of the two adjacent facets).
struct Edge {
  int a = 0;
  int b = 0;
  double length = 0.0;
  double exterior_angle = 0.0;
};
std::vector<Edge> edges_3d(const ConvexBody& body);

}  // namespace hhv::geometry
