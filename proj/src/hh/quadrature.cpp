#include "hhv/hh/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hhv::hh {
namespace {

using geometry::ConvexBody;
using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

// Range of y on the vertical line through x.
std::pair<double, double> vertical_chord(std::span<const Vec2> ring, double x) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[(i + 1) % ring.size()];
    const double x0 = std::min(a[0], b[0]), x1 = std::max(a[0], b[0]);
    if (x < x0 || x > x1) continue;
    if (x1 == x0) {
      lo = std::min({lo, a[1], b[1]});
      hi = std::max({hi, a[1], b[1]});
      continue;
    }
    const double t = (x - a[0]) / (b[0] - a[0]);
    const double y = a[1] + t * (b[1] - a[1]);
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  return {lo, hi};
}

// Vertices of a 3-D facet in cyclic order, in coordinates of the facet
// plane (origin at the facet centroid, basis e1, e2).
std::vector<Vec2> facet_ring(const ConvexBody& body, const geometry::Facet& facet, Vec3& e1, Vec3& e2) {
  const Vec3 n = facet.normal.head<3>();
  e1 = (std::abs(n[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(n).normalized();
  e2 = n.cross(e1);
  std::vector<std::pair<double, Vec2>> tagged;
  for (int vi : facet.vertices) {
    const Vec3 d = (body.vertices()[vi] - facet.centroid).head<3>();
    const Vec2 q(d.dot(e1), d.dot(e2));
    tagged.emplace_back(std::atan2(q[1], q[0]), q);
  }
  std::sort(tagged.begin(), tagged.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Vec2> ring;
  for (const auto& t : tagged) ring.push_back(t.second);
  return ring;
}

struct Panel {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

Panel panel(const std::function<double(double)>& f, double a, double b) {
  Panel p;
  p.value = GK::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
  // Boost reports the error of the panel mapped onto [-1, 1].
  p.error *= 0.5 * (b - a);
  return p;
}

void refine(const std::function<double(double)>& f, double a, double b, const Panel& p, double tol, unsigned depth,
            Integral& out) {
  if (p.error <= tol || depth == 0 || !(b - a > 1e-15 * (std::abs(a) + std::abs(b)))) {
    out.value += p.value;
    out.error += p.error;
    return;
  }
  const double mid = 0.5 * (a + b);
  const Panel left = panel(f, a, mid), right = panel(f, mid, b);
  refine(f, a, mid, left, 0.5 * tol, depth - 1, out);
  refine(f, mid, b, right, 0.5 * tol, depth - 1, out);
}

}  // namespace

Integral integrate_interval(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec) {
  Integral out;
  if (!(b > a)) return out;
  const int count = std::max(1, spec.initial_panels);
  std::vector<Panel> panels;
  for (int k = 0; k < count; ++k) {
    panels.push_back(panel(f, a + (b - a) * k / count, a + (b - a) * (k + 1) / count));
    out.magnitude += panels.back().l1;
  }
  const double tol = std::max(spec.relative_tolerance * out.magnitude, spec.absolute_tolerance) / count;
  for (int k = 0; k < count; ++k)
    refine(f, a + (b - a) * k / count, a + (b - a) * (k + 1) / count, panels[k], tol, spec.max_depth, out);
  return out;
}

Integral integrate_segment(const Integrand& f, const Vec& a, const Vec& b, const QuadratureSpec& spec) {
  const double len = (b - a).norm();
  if (len == 0.0) return {};
  const Vec dir = (b - a) / len;
  return integrate_interval([&](double s) { return f(a + s * dir); }, 0.0, len, spec);
}

Integral integrate_convex_polygon(const std::function<double(double, double)>& f, std::span<const Vec2> ring,
                                  const QuadratureSpec& spec) {
  std::vector<double> xs;
  for (const auto& v : ring) xs.push_back(v[0]);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const double span = xs.back() - xs.front();
  if (!(span > 0.0)) return {};

  auto pass = [&](const QuadratureSpec& outer, const QuadratureSpec& inner) {
    auto chord_integral = [&](double x) {
      const auto [lo, hi] = vertical_chord(ring, x);
      if (!(hi > lo)) return 0.0;
      return integrate_interval([&](double y) { return f(x, y); }, lo, hi, inner).value;
    };
    Integral total;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const auto piece = integrate_interval(chord_integral, xs[i], xs[i + 1], outer);
      total.value += piece.value;
      total.error += piece.error;
      total.magnitude += piece.magnitude;
    }
    return total;
  };

  // Coarse pass: one panel per level, no refinement.
  QuadratureSpec coarse = spec;
  coarse.max_depth = 0;
  coarse.initial_panels = 1;
  const double scale = pass(coarse, coarse).magnitude;

  QuadratureSpec outer = spec, inner = spec;
  outer.absolute_tolerance = std::max(spec.absolute_tolerance, spec.relative_tolerance * scale);
  inner.initial_panels = 1;
  inner.absolute_tolerance = outer.absolute_tolerance / span;
  return pass(outer, inner);
}

Integral integrate_polygon(const Integrand& f, const ConvexBody& body, const QuadratureSpec& spec) {
  if (body.dimension() != 2) throw Error(ErrorCode::UnsupportedDimension, "polygon quadrature is 2-D only");
  std::vector<Vec2> ring;
  for (const auto& v : body.vertices()) ring.push_back(v.head<2>());
  return integrate_convex_polygon([&](double x, double y) { return f(Vec(Vec2(x, y))); }, ring, spec);
}

Integral integrate_boundary(const Integrand& f, const ConvexBody& body, const QuadratureSpec& spec) {
  Integral total;
  if (body.dimension() == 2) {
    const auto verts = body.vertices();
    QuadratureSpec coarse = spec;
    coarse.max_depth = 0;
    double scale = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
      scale += integrate_segment(f, verts[i], verts[(i + 1) % verts.size()], coarse).magnitude;
    QuadratureSpec fine = spec;
    fine.absolute_tolerance = std::max(spec.absolute_tolerance, spec.relative_tolerance * scale / verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const auto piece = integrate_segment(f, verts[i], verts[(i + 1) % verts.size()], fine);
      total.value += piece.value;
      total.error += piece.error;
      total.magnitude += piece.magnitude;
    }
    return total;
  }
  if (body.dimension() != 3) throw Error(ErrorCode::UnsupportedDimension, "boundary quadrature is 2-D or 3-D");
  struct Plane {
    Vec3 c, e1, e2;
    std::vector<Vec2> ring;
  };
  std::vector<Plane> planes;
  for (const auto& facet : body.facets()) {
    Plane p;
    p.ring = facet_ring(body, facet, p.e1, p.e2);
    p.c = facet.centroid.head<3>();
    planes.push_back(std::move(p));
  }
  auto run = [&](const QuadratureSpec& s) {
    Integral sum;
    for (const auto& p : planes) {
      const auto piece = integrate_convex_polygon(
          [&](double u, double v) { return f(Vec(Vec3(p.c + u * p.e1 + v * p.e2))); }, p.ring, s);
      sum.value += piece.value;
      sum.error += piece.error;
      sum.magnitude += piece.magnitude;
    }
    return sum;
  };
  QuadratureSpec coarse = spec;
  coarse.max_depth = 0;
  coarse.initial_panels = 1;
  QuadratureSpec fine = spec;
  fine.absolute_tolerance =
      std::max(spec.absolute_tolerance, spec.relative_tolerance * run(coarse).magnitude / planes.size());
  return run(fine);
}

}  // namespace hhv::hh
