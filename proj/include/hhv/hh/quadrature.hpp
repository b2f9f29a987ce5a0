#pragma once

#include "hhv/geometry/convex_body.hpp"

#include <functional>
#include <span>

namespace hhv::hh {

struct QuadratureSpec {
  double relative_tolerance = 1e-10;
  unsigned max_depth = 15;  // bisection levels of each adaptive Gauss-Kronrod pass
  int initial_panels = 8;   // uniform split before adapting, so narrow peaks are seen
  double absolute_tolerance = 0.0;
};

struct Integral {
  double value = 0.0;
  double error = 0.0;      // estimated absolute error of the outermost pass
  double magnitude = 0.0;  // estimate of the integral of |f|
};

using Integrand = std::function<double(const Vec&)>;

/// Adaptive 31-point Gauss-Kronrod on [a, b].  Panels are bisected until
/// each meets its share of max(relative_tolerance * ∫|f|, absolute_tolerance),
/// so integrands that are tiny or pure rounding noise do not force
/// full-depth refinement.
Integral integrate_interval(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec = {});

/// Adaptive Gauss-Kronrod along the segment from a to b, with respect to
/// arclength.
Integral integrate_segment(const Integrand& f, const Vec& a, const Vec& b, const QuadratureSpec& spec = {});

/// Iterated adaptive Gauss-Kronrod over a convex polygon given by its
/// vertices in cyclic order: chords in y, then x, split at the vertices.
/// A coarse first pass sets the absolute tolerance of both levels.
Integral integrate_convex_polygon(const std::function<double(double, double)>& f, std::span<const Vec2> ring,
                                  const QuadratureSpec& spec = {});

/// Integral over a 2-D body.
Integral integrate_polygon(const Integrand& f, const geometry::ConvexBody& body, const QuadratureSpec& spec = {});

/// Integral over the boundary of a 2-D or 3-D body (sum over facets), with
/// one absolute tolerance for all facets.
Integral integrate_boundary(const Integrand& f, const geometry::ConvexBody& body, const QuadratureSpec& spec = {});

}  // namespace hhv::hh
