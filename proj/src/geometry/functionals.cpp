#include "hhv/geometry/functionals.hpp"

#include "hull.hpp"
#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hhv::geometry {

Inball inradius(const ConvexBody& body) {
  const int n = body.dimension();
  const auto facets = body.facets();
  const int m = static_cast<int>(facets.size());
  Eigen::MatrixXd a(m, n + 1);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    a.row(i).head(n) = facets[i].normal.transpose();
    a(i, n) = 1.0;
    b[i] = facets[i].offset;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c[n] = 1.0;
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n + 1);
  x0.head(n) = body.centroid();
  const auto res = detail::maximize(a, b, c, x0);
  if (!(res.objective > 0.0)) throw Error(ErrorCode::DegenerateBody, "inradius is not positive");
  return {res.objective, Vec(res.x.head(n))};
}

double directional_width(const ConvexBody& body, const Vec& direction) {
  return body.support(direction) + body.support(-direction);
}

double steinhagen_bound(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (n % 2 == 1) return 2.0 * std::sqrt(static_cast<double>(n));
  return 2.0 * (n + 1) / std::sqrt(static_cast<double>(n + 2));
}

namespace {

// Two-pointer sweep over a counter-clockwise polygon: for every edge the
// farthest vertex is tracked monotonically.
WidthBracket width_2d(const ConvexBody& body) {
  const auto v = body.vertices();
  const auto f = body.facets();
  const int m = static_cast<int>(v.size());
  WidthBracket out;
  out.exact = true;
  out.upper = std::numeric_limits<double>::infinity();
  int j = 1;
  for (int i = 0; i < m; ++i) {
    const Vec& nrm = f[i].normal;
    auto depth = [&](int k) { return f[i].offset - nrm.dot(v[k % m]); };
    for (int guard = 0; guard < m && depth(j + 1) >= depth(j); ++guard) j = (j + 1) % m;
    const double d = depth(j);
    if (d < out.upper) {
      out.upper = d;
      out.direction = nrm;
    }
  }
  out.lower = out.upper;
  return out;
}

// Local pattern search on the sphere from the current best direction.
void refine(const ConvexBody& body, WidthBracket& wb) {
  const int n = body.dimension();
  Vec d = wb.direction;
  double best = wb.upper;
  double step = 0.05;
  while (step > 1e-10) {
    bool improved = false;
    const Mat basis = detail::complement_basis(d);
    for (int k = 0; k < n - 1 && !improved; ++k)
      for (double s : {step, -step}) {
        Vec cand = (d + s * basis.col(k)).normalized();
        const double w = directional_width(body, cand);
        if (w < best) {
          best = w;
          d = cand;
          improved = true;
          break;
        }
      }
    if (!improved) step *= 0.5;
  }
  wb.upper = best;
  wb.direction = d;
}

// Minimum of the width function over cell centres of a grid on the faces of
// the cube [-1,1]^n, minus the Lipschitz slack of the width function.
double grid_lower_bound(const ConvexBody& body, int g) {
  const int n = body.dimension();
  double radius = 0.0;
  for (const auto& v : body.vertices()) radius = std::max(radius, (v - body.centroid()).norm());
  const double cell = 2.0 / g;
  int cells = 1;
  for (int k = 0; k < n - 1; ++k) cells *= g;
  double best = std::numeric_limits<double>::infinity();
  Vec d(n);
  // Antipodal faces give the same widths; only the +e_axis faces are visited.
  for (int axis = 0; axis < n; ++axis)
    for (int c = 0; c < cells; ++c) {
      int rest = c;
      for (int k = 0; k < n; ++k) {
        if (k == axis) {
          d[k] = 1.0;
          continue;
        }
        d[k] = -1.0 + (rest % g + 0.5) * cell;
        rest /= g;
      }
      best = std::min(best, directional_width(body, d.normalized()));
    }
  const double delta = std::sqrt(static_cast<double>(n - 1)) / g;
  return best - 2.0 * radius * delta;
}

}  // namespace

WidthBracket width(const ConvexBody& body) {
  const int n = body.dimension();
  if (n == 1) {
    const double w = body.upper()[0] - body.lower()[0];
    return {w, w, make_vec({1.0}), true};
  }
  if (n == 2) return width_2d(body);

  WidthBracket out;
  out.upper = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec& d) {
    const double w = directional_width(body, d);
    if (w < out.upper) {
      out.upper = w;
      out.direction = d;
    }
  };
  for (const auto& f : body.facets()) consider(f.normal);

  bool complete = false;
  if (n == 3) {
    const auto edges = edges_3d(body);
    const auto v = body.vertices();
    if (edges.size() <= 400) {
      complete = true;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        const Vec3 ei = v[edges[i].b] - v[edges[i].a];
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
          const Vec3 ej = v[edges[j].b] - v[edges[j].a];
          const Vec3 c = ei.cross(ej);
          const double len = c.norm();
          if (len > 1e-12 * ei.norm() * ej.norm()) consider(Vec(c / len));
        }
      }
    }
  }
  // Facet normals and edge-pair directions contain the minimiser for 3-D
  // polytopes; otherwise the candidate is refined and bracketed from below.
  const double floor = 2.0 * inradius(body).radius;
  if (complete) {
    out.exact = true;
    out.lower = out.upper;
    return out;
  }
  refine(body, out);
  out.exact = false;
  out.lower = std::max(floor, std::min(out.upper, grid_lower_bound(body, n == 3 ? 40 : 12)));
  return out;
}

ConvexBody inner_parallel(const ConvexBody& body, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "inner parallel distance must be >= 0");
  if (t == 0.0) return body;
  if (t >= inradius(body).radius) throw Error(ErrorCode::EmptyInnerBody, "t exceeds the inradius");
  std::vector<Halfspace> hs;
  hs.reserve(body.facets().size());
  for (const auto& f : body.facets()) hs.push_back({f.normal, f.offset - t});
  try {
    if (body.dimension() <= 2) return ConvexBody::from_halfspaces(hs, body, Provenance::InnerParallel);
    // Bounding box as container keeps the vertex enumeration small.
    const Vec lo = body.lower(), hi = body.upper();
    const int n = body.dimension();
    std::vector<Vec> corners;
    for (int mask = 0; mask < (1 << n); ++mask) {
      Vec c(n);
      for (int k = 0; k < n; ++k) c[k] = (mask >> k) & 1 ? hi[k] : lo[k];
      corners.push_back(c);
    }
    return ConvexBody::from_halfspaces(hs, ConvexBody::from_points(corners), Provenance::InnerParallel);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateBody) throw Error(ErrorCode::EmptyInnerBody, e.what());
    throw;
  }
}

BodyMeasures inner_parallel_measures(const ConvexBody& body, double t) {
  try {
    const ConvexBody inner = inner_parallel(body, t);
    return {inner.volume(), inner.surface_area()};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyInnerBody) return {0.0, 0.0};
    throw;
  }
}

ConvexBody scale(const ConvexBody& body, double factor) {
  if (!(factor > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  std::vector<Vec> pts;
  pts.reserve(body.vertices().size());
  for (const auto& v : body.vertices()) pts.push_back(factor * v);
  return ConvexBody::from_points(pts, Provenance::Scaled);
}

double containment_scale(const ConvexBody& outer, const ConvexBody& inner) {
  if (outer.dimension() != inner.dimension())
    throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  if (!(inner.max_violation(Vec::Zero(inner.dimension())) < -inner.tolerance()))
    throw Error(ErrorCode::OriginNotInterior, "origin is not interior to the inner body");
  double lambda = 0.0;
  for (const auto& v : outer.vertices())
    for (const auto& f : inner.facets()) lambda = std::max(lambda, f.normal.dot(v) / f.offset);
  return lambda;
}

}  // namespace hhv::geometry
