#pragma once

#include "hhv/geometry/convex_body.hpp"

namespace hhv::geometry {

struct Inball {
  double radius = 0.0;
  Vec center;
};

/// Largest inscribed ball: max r s.t. <a_i, c> + r <= b_i over all facets,
/// solved by a dense simplex method and polished on the active set.
Inball inradius(const ConvexBody& body);

/// Minimal width with a certified bracket.
///
/// In 2-D the value comes from rotating calipers and is exact (lower == upper).
/// In 3-D `upper` is the minimum over facet normals and edge-pair directions
/// (the candidate set that contains the true minimizer) followed by a local
/// refinement; in 4-D over facet normals plus refinement.  For n >= 3
/// `lower` is derived from a cube-face direction grid through the Lipschitz
/// bound on the width function, and never below 2 * inradius.
struct WidthBracket {
  double lower = 0.0;
  double upper = 0.0;
  Vec direction;  // unit direction attaining `upper`
  bool exact = false;

  double value() const { return upper; }
};
WidthBracket width(const ConvexBody& body);

/// Extent of the body along a unit direction: h(d) + h(-d).
double directional_width(const ConvexBody& body, const Vec& direction);

/// Steinhagen's width/inradius multiplier: 2*sqrt(n) for odd n,
/// 2(n+1)/sqrt(n+2) for even n.
double steinhagen_bound(int n);

/// Inner parallel body {x : d(x, boundary) > t}: every facet moved inward by
/// t.  Throws EmptyInnerBody when t >= inradius (or the result has empty
/// interior).
ConvexBody inner_parallel(const ConvexBody& body, double t);

struct BodyMeasures {
  double volume = 0.0;
  double surface_area = 0.0;
};
/// Volume and surface area of the inner parallel body; zero once it is empty.
BodyMeasures inner_parallel_measures(const ConvexBody& body, double t);

/// Body scaled about the origin.
ConvexBody scale(const ConvexBody& body, double factor);

/// Smallest lambda with outer ⊆ lambda * inner, via the gauge of `inner` at
/// the vertices of `outer`.  `inner` must contain the origin in its interior.
double containment_scale(const ConvexBody& outer, const ConvexBody& inner);

}  // namespace hhv::geometry
