#include "hhv/hh/hh.hpp"

#include "hhv/geometry/functionals.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace hhv::hh {
namespace {

using geometry::ConvexBody;

// Parameter range of {p + t d} inside the body; empty when lo >= hi.
std::pair<double, double> chord(const ConvexBody& body, const Vec& p, const Vec& d) {
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (const auto& f : body.facets()) {
    const double a = f.normal.dot(d), rest = f.offset - f.normal.dot(p);
    if (a > 1e-300) hi = std::min(hi, rest / a);
    else if (a < -1e-300) lo = std::max(lo, rest / a);
    else if (rest < 0.0) return {0.0, 0.0};
  }
  return {lo, std::max(lo, hi)};
}

// Per-fiber quantities at the projection point p.
struct Fiber {
  double integral = 0.0;  // ∫ f along the chord
  double ends = 0.0;      // f(a) + f(b)
  double length = 0.0;
};

Fiber fiber(const ConvexBody& body, const TestFunction& f, const Vec& p, const Vec& d, const QuadratureSpec& spec) {
  const auto [t0, t1] = chord(body, p, d);
  Fiber out;
  if (!(t1 > t0)) return out;
  out.length = t1 - t0;
  out.ends = f(p + t0 * d) + f(p + t1 * d);
  // Smooth between kinks, so a single starting panel suffices.
  QuadratureSpec piece_spec = spec;
  piece_spec.initial_panels = 1;
  std::vector<double> cuts = f.kinks_along(p, d, t0, t1);
  cuts.insert(cuts.begin(), t0);
  cuts.push_back(t1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    out.integral +=
        integrate_interval([&](double t) { return f(p + t * d); }, cuts[i], cuts[i + 1], piece_spec).value;
  return out;
}

using Ring = std::vector<Vec2>;

// Affine function s -> <a, s> + b on a plane.
struct PlaneAffine {
  Vec2 a;
  double b = 0.0;
};

double ring_area(const Ring& r) {
  double area = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Vec2& p = r[i];
    const Vec2& q = r[(i + 1) % r.size()];
    area += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * area;
}

// Part of a convex ring where <a, s> + b <= 0.
Ring clip(const Ring& ring, const PlaneAffine& h) {
  Ring out;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2& p = ring[i];
    const Vec2& q = ring[(i + 1) % ring.size()];
    const double hp = h.a.dot(p) + h.b, hq = h.a.dot(q) + h.b;
    if (hp <= 0.0) out.push_back(p);
    if ((hp < 0.0 && hq > 0.0) || (hp > 0.0 && hq < 0.0)) out.push_back(p + (q - p) * (hp / (hp - hq)));
  }
  return out;
}

// Splits every cell along each line, dropping slivers.
std::vector<Ring> cut(std::vector<Ring> cells, const std::vector<PlaneAffine>& lines, double min_area) {
  for (const auto& line : lines) {
    std::vector<Ring> next;
    for (const auto& c : cells)
      for (const PlaneAffine& side : {line, PlaneAffine{-line.a, -line.b}}) {
        Ring part = clip(c, side);
        if (part.size() >= 3 && ring_area(part) > min_area) next.push_back(std::move(part));
      }
    cells = std::move(next);
  }
  return cells;
}

// Lines of the plane whose image under the affine map lies on a kink of f.
std::vector<PlaneAffine> kink_lines(const TestFunction& f, const std::function<Vec(const Vec2&)>& map) {
  std::vector<PlaneAffine> lines;
  const auto* pieces = f.pieces();
  if (!pieces) return lines;
  const Vec x0 = map(Vec2(0, 0)), x1 = map(Vec2(1, 0)), x2 = map(Vec2(0, 1));
  for (std::size_t i = 0; i < pieces->size(); ++i)
    for (std::size_t j = i + 1; j < pieces->size(); ++j) {
      const Vec g = (*pieces)[i].first - (*pieces)[j].first;
      const double c = (*pieces)[i].second - (*pieces)[j].second;
      const double h0 = g.dot(x0) + c;
      const Vec2 a(g.dot(x1 - x0), g.dot(x2 - x0));
      if (a.norm() > 1e-14 * g.norm()) lines.push_back({a, h0});
    }
  return lines;
}

// Convex ring through points of a plane, counter-clockwise.
Ring ring_around(std::vector<Vec2> pts) {
  Vec2 mid = Vec2::Zero();
  for (const auto& p : pts) mid += p;
  mid /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Vec2& x, const Vec2& y) {
    return std::atan2(x[1] - mid[1], x[0] - mid[0]) < std::atan2(y[1] - mid[1], y[0] - mid[0]);
  });
  return pts;
}

// ∫_∂Ω f with every facet split along the kinks of f.
double boundary_integral(const ConvexBody& body, const TestFunction& f, const QuadratureSpec& spec) {
  double total = 0.0;
  const auto verts = body.vertices();
  if (body.dimension() == 2) {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const Vec a = verts[i], edge = verts[(i + 1) % verts.size()] - a;
      std::vector<double> ts = f.kinks_along(a, edge, 0.0, 1.0);
      ts.insert(ts.begin(), 0.0);
      ts.push_back(1.0);
      for (std::size_t k = 0; k + 1 < ts.size(); ++k)
        total += integrate_segment([&](const Vec& x) { return f(x); }, a + ts[k] * edge, a + ts[k + 1] * edge, spec)
                     .value;
    }
    return total;
  }
  for (const auto& facet : body.facets()) {
    const Vec3 nrm = facet.normal.head<3>();
    const Vec3 e1 = (std::abs(nrm[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(nrm).normalized();
    const Vec3 e2 = nrm.cross(e1);
    const Vec3 c = facet.centroid.head<3>();
    std::vector<Vec2> pts;
    for (int vi : facet.vertices) {
      const Vec3 q = verts[vi].head<3>() - c;
      pts.emplace_back(q.dot(e1), q.dot(e2));
    }
    const Ring ring = ring_around(pts);
    auto map = [&](const Vec2& s) -> Vec { return Vec(Vec3(c + s[0] * e1 + s[1] * e2)); };
    for (const auto& cell : cut({ring}, kink_lines(f, map), 1e-14 * facet.measure))
      total += integrate_convex_polygon([&](double u, double v) { return f(map(Vec2(u, v))); }, cell, spec).value;
  }
  return total;
}

void check_convex(const TestFunction& f) {
  if (!f.convex())
    throw Error(ErrorCode::NotConvexFunction, f.id() + " is not known to be convex");
}

}  // namespace

double BoundReport::param(const std::string& name) const {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  throw Error(ErrorCode::InvalidArgument, "no parameter named " + name);
}

HHConstant hh_constant(const ConvexBody& body, double h, const torsion::TorsionOptions& options) {
  const auto sol = torsion::solve_torsion(body, h, options);
  HHConstant out;
  out.h = h;
  out.c = torsion::max_normal_derivative(sol);
  out.sup_norm = sol.sup_norm;
  out.normalized = out.c * body.surface_area() / body.volume();
  return out;
}

double theorem1_bound(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  const double x = n;
  return n % 2 == 1 ? std::pow(x, 1.5) : (x * x + x) / std::sqrt(x + 2.0);
}

double theorem1_uniform_bound(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  return 2.0 * std::pow(static_cast<double>(n), 1.5);
}

double theorem2_lower(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  return std::max(n - 1.0, 1.0);
}

double ball_factor(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  return std::pow(unit_ball_volume(n), 1.0 / n) * std::sqrt(static_cast<double>(n));
}

double theorem3_bound(const ConvexBody& body) {
  const int n = body.dimension();
  if (!(body.volume() > 0.0)) throw Error(ErrorCode::DegenerateBody, "body has no volume");
  return std::pow(body.volume(), 1.0 / n) / ball_factor(n);
}

BoundReport verify_inequality(const ConvexBody& body, const TestFunction& f, const VerifyOptions& options) {
  if (body.dimension() != 2) throw Error(ErrorCode::UnsupportedDimension, "inequality checks are 2-D");
  check_positive(f, body);
  check_subharmonic(f, body);
  const auto vol = integrate_polygon(f, body, options.quadrature);
  const auto bdry = integrate_boundary(f, body, options.quadrature);
  if (!(bdry.value > 0.0))
    throw Error(ErrorCode::NonPositiveFunction, f.id() + " has no positive boundary mass");
  BoundReport r;
  r.body_id = options.body_id;
  r.function_id = f.id();
  r.vol_mean = vol.value / body.volume();
  r.bdry_mean = bdry.value / body.surface_area();
  r.lhs = r.vol_mean / r.bdry_mean;
  r.bound = options.bound.value_or(theorem1_bound(2));
  r.margin = r.bound - r.lhs;
  r.params = {{"volume_integral", vol.value},
              {"boundary_integral", bdry.value},
              {"volume_error", vol.error},
              {"boundary_error", bdry.error},
              {"ratio_error", r.lhs * (vol.error / std::abs(vol.value) + bdry.error / bdry.value)}};
  return r;
}

BoundReport fiber_hh_bound(const ConvexBody& body, const TestFunction& f, const QuadratureSpec& spec) {
  check_convex(f);
  const int n = body.dimension();
  if (f.dimension() != n) throw Error(ErrorCode::InvalidArgument, "function and body dimensions differ");
  if (n > 3) throw Error(ErrorCode::UnsupportedDimension, "fiber quadrature supports n <= 3");

  double lhs = 0.0, fiber_bound = 0.0, ends = 0.0, boundary = 0.0, w = 0.0;
  if (n == 1) {
    const double a = body.lower()[0], b = body.upper()[0];
    w = b - a;
    std::vector<double> ts = f.kinks_along(make_vec({a}), make_vec({1.0}), 0.0, w);
    ts.insert(ts.begin(), 0.0);
    ts.push_back(w);
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
      lhs += integrate_interval([&](double t) { return f(make_vec({a + t})); }, ts[k], ts[k + 1], spec).value;
    boundary = ends = f(make_vec({a})) + f(make_vec({b}));
    fiber_bound = 0.5 * w * ends;
  } else {
    const auto wb = geometry::width(body);
    const Vec d = wb.direction.normalized();
    w = geometry::directional_width(body, d);
    boundary = boundary_integral(body, f, spec);
    if (n == 2) {
      Vec e(2);
      e << -d[1], d[0];
      // The fiber integrals are smooth between projections of vertices and
      // of points where kink lines of f meet the boundary.
      std::vector<double> cuts;
      const auto verts = body.vertices();
      for (const auto& v : verts) cuts.push_back(e.dot(v));
      for (std::size_t i = 0; i < verts.size(); ++i) {
        const Vec a = verts[i], edge = verts[(i + 1) % verts.size()] - a;
        for (double t : f.kinks_along(a, edge, 0.0, 1.0)) cuts.push_back(e.dot(a + t * edge));
      }
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        auto piece = [&](auto pick) {
          return integrate_interval([&](double s) { return pick(fiber(body, f, s * e, d, spec)); }, cuts[i],
                                    cuts[i + 1], spec)
              .value;
        };
        lhs += piece([](const Fiber& q) { return q.integral; });
        fiber_bound += piece([](const Fiber& q) { return 0.5 * q.length * q.ends; });
        ends += piece([](const Fiber& q) { return q.ends; });
      }
    } else {
      const Vec3 d3 = d.head<3>();
      const Vec3 e1 = (std::abs(d3[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(d3).normalized();
      const Vec3 e2 = d3.cross(e1);
      auto lift = [&](const Vec2& s) -> Vec { return Vec(Vec3(s[0] * e1 + s[1] * e2)); };
      // Facets seen from above and below along d project onto two tilings
      // of the shadow.  On each cell of their overlay the chord ends move
      // affinely; cutting further along the kinks of f at either end leaves
      // cells on which the fiber quantities are smooth.
      std::vector<std::pair<const geometry::Facet*, Ring>> upper, lower;
      for (const auto& facet : body.facets()) {
        const double nd = facet.normal.dot(d);
        if (std::abs(nd) < 1e-12) continue;
        std::vector<Vec2> pts;
        for (int vi : facet.vertices) {
          const Vec3 v = body.vertices()[vi].head<3>();
          pts.emplace_back(v.dot(e1), v.dot(e2));
        }
        (nd > 0 ? upper : lower).emplace_back(&facet, ring_around(pts));
      }
      const double min_area = 1e-14 * body.diameter() * body.diameter();
      QuadratureSpec cell_spec = spec;
      cell_spec.initial_panels = 1;
      cell_spec.relative_tolerance = std::max(spec.relative_tolerance, 1e-9);
      auto end_map = [&](const geometry::Facet* facet) {
        return [&, facet](const Vec2& s) -> Vec {
          const Vec x = lift(s);
          return Vec(x + d * ((facet->offset - facet->normal.dot(x)) / facet->normal.dot(d)));
        };
      };
      for (const auto& [uf, uring] : upper)
        for (const auto& [lf, lring] : lower) {
          Ring cell = uring;
          for (std::size_t k = 0; k < lring.size() && cell.size() >= 3; ++k) {
            const Vec2& p = lring[k];
            const Vec2& q = lring[(k + 1) % lring.size()];
            const Vec2 outward(q[1] - p[1], p[0] - q[0]);
            cell = clip(cell, {outward, -outward.dot(p)});
          }
          if (cell.size() < 3 || ring_area(cell) <= min_area) continue;
          auto lines = kink_lines(f, end_map(uf));
          const auto more = kink_lines(f, end_map(lf));
          lines.insert(lines.end(), more.begin(), more.end());
          for (const auto& piece : cut({cell}, lines, min_area)) {
            auto at = [&](double u, double v) { return fiber(body, f, lift(Vec2(u, v)), d, spec); };
            lhs += integrate_convex_polygon([&](double u, double v) { return at(u, v).integral; }, piece, cell_spec)
                       .value;
            fiber_bound += integrate_convex_polygon(
                               [&](double u, double v) {
                                 const auto q = at(u, v);
                                 return 0.5 * q.length * q.ends;
                               },
                               piece, cell_spec)
                               .value;
            ends += integrate_convex_polygon([&](double u, double v) { return at(u, v).ends; }, piece, cell_spec).value;
          }
        }
    }
  }

  BoundReport r;
  r.body_id = "body";
  r.function_id = f.id();
  r.lhs = lhs;
  r.bound = 0.5 * w * boundary;
  r.margin = r.bound - r.lhs;
  r.vol_mean = lhs / body.volume();
  r.bdry_mean = n == 1 ? boundary / 2.0 : boundary / body.surface_area();
  r.params = {{"width", w},
              {"boundary_integral", boundary},
              {"fiber_bound", fiber_bound},
              {"projected_ends_bound", 0.5 * w * ends}};
  return r;
}

}  // namespace hhv::hh
