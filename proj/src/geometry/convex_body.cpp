#include "hhv/geometry/convex_body.hpp"

#include "hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hhv::geometry {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Explicit: return "explicit";
    case Provenance::Box: return "box";
    case Provenance::BallPolygon: return "ball_polygon";
    case Provenance::Simplex: return "simplex";
    case Provenance::ThinSimplex: return "thin_simplex";
    case Provenance::Scaled: return "scaled";
    case Provenance::InnerParallel: return "inner_parallel";
    case Provenance::Intersection: return "intersection";
    case Provenance::Prism: return "prism";
  }
  return "unknown";
}

namespace {

constexpr double kRelativeTolerance = 1e-9;

double tolerance_for(double ext) { return kRelativeTolerance * std::max(ext, 1e-300); }

// Polygon area and centroid from counter-clockwise vertices (shoelace).
MeasuredSet polygon_measure(std::span<const Vec> ccw) {
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  const std::size_t m = ccw.size();
  const Vec& o = ccw[0];
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double x1 = ccw[i][0] - o[0], y1 = ccw[i][1] - o[1];
    const double x2 = ccw[i + 1][0] - o[0], y2 = ccw[i + 1][1] - o[1];
    const double cr = x1 * y2 - x2 * y1;
    a2 += cr;
    cx += cr * (x1 + x2);
    cy += cr * (y1 + y2);
  }
  MeasuredSet out;
  out.measure = 0.5 * a2;
  out.centroid = make_vec({o[0] + cx / (3.0 * a2), o[1] + cy / (3.0 * a2)});
  return out;
}

}  // namespace

MeasuredSet hull_measure(std::span<const Vec> points) {
  const int k = points.empty() ? 0 : static_cast<int>(points[0].size());
  if (k == 0) return {1.0, Vec::Zero(0)};
  if (k == 1) {
    double lo = points[0][0], hi = points[0][0];
    for (const auto& p : points) lo = std::min(lo, p[0]), hi = std::max(hi, p[0]);
    return {hi - lo, make_vec({0.5 * (lo + hi)})};
  }
  if (k == 2) {
    const auto h = detail::hull_2d(detail::dedupe(points, tolerance_for(detail::extent(points))),
                                   tolerance_for(detail::extent(points)));
    return polygon_measure(h.vertices);
  }
  const ConvexBody body = ConvexBody::from_points(points);
  return {body.volume(), body.centroid()};
}

ConvexBody ConvexBody::from_points(std::span<const Vec> points, Provenance provenance) {
  const double tol = tolerance_for(detail::extent(points));
  detail::Hull hull = detail::convex_hull(points, tol);
  ConvexBody body;
  body.provenance_ = provenance;
  std::vector<Facet> facets;
  facets.reserve(hull.facets.size());
  for (auto& f : hull.facets) facets.push_back({std::move(f.normal), f.offset, std::move(f.vertices), 0.0, {}});
  body.finalize(std::move(hull.vertices), std::move(facets));
  return body;
}

void ConvexBody::finalize(std::vector<Vec> vertices, std::vector<Facet> facets) {
  dimension_ = static_cast<int>(vertices.front().size());
  vertices_ = std::move(vertices);
  facets_ = std::move(facets);
  const int n = dimension_;

  const double ext = detail::extent(vertices_);
  tolerance_ = tolerance_for(ext);
  diameter_ = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      diameter_ = std::max(diameter_, (vertices_[i] - vertices_[j]).norm());

  Vec apex = Vec::Zero(n);
  for (const auto& v : vertices_) apex += v;
  apex /= static_cast<double>(vertices_.size());

  // Facet measures in the facet's own hyperplane.
  for (auto& f : facets_) {
    if (n == 1) {
      f.measure = 1.0;
      f.centroid = vertices_[f.vertices.front()];
      continue;
    }
    const Mat basis = detail::complement_basis(f.normal);
    const Vec& origin = vertices_[f.vertices.front()];
    std::vector<Vec> local;
    local.reserve(f.vertices.size());
    for (int id : f.vertices) local.push_back(basis.transpose() * (vertices_[id] - origin));
    const MeasuredSet ms = hull_measure(local);
    f.measure = ms.measure;
    f.centroid = origin + basis * ms.centroid;
  }

  // Cone decomposition from the vertex average.
  double vol = 0.0, area = 0.0;
  Vec moment = Vec::Zero(n);
  for (const auto& f : facets_) {
    const double height = f.offset - f.normal.dot(apex);
    const double cone = height * f.measure / n;
    vol += cone;
    area += f.measure;
    moment += cone * (apex + (static_cast<double>(n) / (n + 1)) * (f.centroid - apex));
  }
  volume_ = vol;
  surface_area_ = area;
  centroid_ = vol > 0.0 ? Vec(moment / vol) : apex;
  if (!(vol > 1e-12 * std::pow(std::max(diameter_, 1e-300), n)))
    throw Error(ErrorCode::DegenerateBody, "body volume is negligible relative to diam^n");
}

ConvexBody ConvexBody::from_halfspaces(std::span<const Halfspace> halfspaces,
                                       const ConvexBody& container, Provenance provenance) {
  const int n = container.dimension();
  const double tol = container.tolerance();
  std::vector<Halfspace> cons;
  for (const auto& h : halfspaces) {
    if (h.normal.size() != n) throw Error(ErrorCode::InvalidArgument, "halfspace dimension mismatch");
    const double len = h.normal.norm();
    if (len == 0.0) {
      if (h.offset < 0.0) throw Error(ErrorCode::DegenerateBody, "infeasible constant halfspace");
      continue;
    }
    cons.push_back({h.normal / len, h.offset / len});
  }

  std::vector<Vec> pts;
  if (n == 1) {
    double lo = container.lower()[0], hi = container.upper()[0];
    for (const auto& c : cons) {
      if (c.normal[0] > 0) hi = std::min(hi, c.offset / c.normal[0]);
      else lo = std::max(lo, c.offset / c.normal[0]);
    }
    if (hi - lo <= tol) throw Error(ErrorCode::DegenerateBody, "empty 1-D intersection");
    pts = {make_vec({lo}), make_vec({hi})};
  } else if (n == 2) {
    // Clip the container polygon (counter-clockwise) by each half-plane.
    std::vector<Vec> poly(container.vertices().begin(), container.vertices().end());
    for (const auto& c : cons) {
      std::vector<Vec> out;
      const std::size_t m = poly.size();
      for (std::size_t i = 0; i < m; ++i) {
        const Vec& a = poly[i];
        const Vec& b = poly[(i + 1) % m];
        const double sa = c.normal.dot(a) - c.offset;
        const double sb = c.normal.dot(b) - c.offset;
        if (sa <= tol) out.push_back(a);
        if ((sa < -tol && sb > tol) || (sa > tol && sb < -tol)) {
          const double t = sa / (sa - sb);
          out.push_back(a + t * (b - a));
        }
      }
      poly = std::move(out);
      if (poly.size() < 3) throw Error(ErrorCode::DegenerateBody, "empty 2-D intersection");
    }
    pts = std::move(poly);
  } else {
    for (const auto& f : container.facets()) cons.push_back({f.normal, f.offset});
    const int m = static_cast<int>(cons.size());
    double combos = 1.0;
    for (int k = 0; k < n; ++k) combos = combos * (m - k) / (k + 1);
    if (combos > 5e6)
      throw Error(ErrorCode::InvalidArgument, "too many halfspaces for vertex enumeration");
    std::vector<int> idx(n);
    for (int k = 0; k < n; ++k) idx[k] = k;
    Mat a(n, n);
    Vec b(n);
    while (m >= n) {
      for (int k = 0; k < n; ++k) {
        a.row(k) = cons[idx[k]].normal.transpose();
        b[k] = cons[idx[k]].offset;
      }
      Eigen::FullPivLU<Mat> lu(a);
      if (lu.rank() == n && std::abs(lu.determinant()) > 1e-12) {
        const Vec x = lu.solve(b);
        const double scale = std::max(1.0, x.norm());
        bool feasible = true;
        for (int j = 0; j < m && feasible; ++j)
          feasible = cons[j].normal.dot(x) - cons[j].offset <= tol * scale;
        if (feasible) pts.push_back(x);
      }
      int k = n - 1;
      while (k >= 0 && idx[k] == m - n + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (static_cast<int>(pts.size()) < n + 1)
      throw Error(ErrorCode::DegenerateBody, "intersection has empty interior");
  }
  return from_points(pts, provenance);
}

double ConvexBody::support(const Vec& d) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) best = std::max(best, d.dot(v));
  return best;
}

double ConvexBody::max_violation(const Vec& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& f : facets_) worst = std::max(worst, f.normal.dot(x) - f.offset);
  return worst;
}

Vec ConvexBody::lower() const {
  Vec lo = vertices_.front();
  for (const auto& v : vertices_) lo = lo.cwiseMin(v);
  return lo;
}

Vec ConvexBody::upper() const {
  Vec hi = vertices_.front();
  for (const auto& v : vertices_) hi = hi.cwiseMax(v);
  return hi;
}

ConvexBody ConvexBody::retagged(Provenance p) const {
  ConvexBody copy = *this;
  copy.provenance_ = p;
  return copy;
}

std::vector<Edge> edges_3d(const ConvexBody& body) {
  if (body.dimension() != 3) throw Error(ErrorCode::UnsupportedDimension, "edges_3d needs n = 3");
  const auto facets = body.facets();
  const auto verts = body.vertices();
  std::vector<std::vector<int>> incident(verts.size());
  for (int f = 0; f < static_cast<int>(facets.size()); ++f)
    for (int v : facets[f].vertices) incident[v].push_back(f);

  std::vector<Edge> edges;
  const int nf = static_cast<int>(facets.size());
  std::vector<int> mark(nf, -1);
  for (int f = 0; f < nf; ++f) {
    // Facets sharing at least two vertices with f, discovered through incidence.
    std::vector<std::pair<int, std::vector<int>>> shared;
    for (int v : facets[f].vertices)
      for (int g : incident[v]) {
        if (g <= f) continue;
        if (mark[g] != f) {
          mark[g] = f;
          shared.push_back({g, {}});
        }
        for (auto& [gg, vs] : shared)
          if (gg == g) vs.push_back(v);
      }
    for (const auto& [g, vs] : shared) {
      if (vs.size() < 2) continue;
      int a = vs[0], b = vs[1];
      double len = 0.0;
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
          if (double d = (verts[vs[i]] - verts[vs[j]]).norm(); d > len) len = d, a = vs[i], b = vs[j];
      if (len <= body.tolerance()) continue;
      const double c = std::clamp(facets[f].normal.dot(facets[g].normal), -1.0, 1.0);
      edges.push_back({a, b, len, std::acos(c)});
    }
  }
  return edges;
}

}  // namespace hhv::geometry
