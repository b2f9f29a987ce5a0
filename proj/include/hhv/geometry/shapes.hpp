#pragma once

#include "hhv/geometry/convex_body.hpp"

#include <cstddef>

namespace hhv::geometry {

/// Regular n-simplex with the given side, centred at the origin.
ConvexBody regular_simplex(int n, double side);

/// Inradius of the regular n-simplex with unit side, 1/sqrt(2n(n+1)).
double regular_simplex_inradius(int n);

/// Pyramid over a regular (n-1)-simplex of side eta lying in x_1 = -1 and
/// centred at (-1, 0, ..., 0), with apex (h, 0, ..., 0).  The apex height is
/// found by bisection so that the inradius is 1 (the inball is centred at the
/// origin).  Throws InfeasibleSimplex when the base is too small for an
/// inradius of 1, or when the built body fails its consistency checks.
ConvexBody thin_simplex(int n, double eta);

/// Apex height of thin_simplex(n, eta), same bisection.
double thin_simplex_apex(int n, double eta);

/// Axis-aligned box [lower, upper].
ConvexBody box(const Vec& lower, const Vec& upper);

/// Polytope inscribed in the sphere of the given radius: a regular polygon
/// with `segments` vertices in 2-D, a Fibonacci point set with `segments`
/// points in 3-D.
ConvexBody ball_polytope(int n, std::size_t segments, double radius = 1.0,
                         const Vec& center = Vec());

}  // namespace hhv::geometry
