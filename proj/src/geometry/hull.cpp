#include "hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

namespace hhv::geometry::detail {
namespace {

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

[[noreturn]] void degenerate(const char* what) { throw Error(ErrorCode::DegenerateBody, what); }

// Facet vertex lists from a plane description: every point on the plane.
std::vector<int> on_plane(std::span<const Vec> pts, const Vec& n, double off, double tol) {
  std::vector<int> ids;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i)
    if (std::abs(n.dot(pts[i]) - off) <= tol) ids.push_back(i);
  return ids;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

double extent(std::span<const Vec> points) {
  if (points.empty()) return 0.0;
  Vec lo = points[0], hi = points[0];
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).maxCoeff();
}

std::vector<Vec> dedupe(std::span<const Vec> points, double tol) {
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return points[a][0] < points[b][0]; });
  std::vector<char> keep(points.size(), 1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!keep[order[i]]) continue;
    const Vec& p = points[order[i]];
    for (std::size_t j = i + 1; j < order.size() && points[order[j]][0] - p[0] <= tol; ++j)
      if (keep[order[j]] && (points[order[j]] - p).norm() <= tol) keep[order[j]] = 0;
  }
  std::vector<Vec> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    if (keep[i]) out.push_back(points[i]);
  return out;
}

Vec hyperplane_normal(std::span<const Vec> points) {
  const int n = static_cast<int>(points.size());
  Vec normal = Vec::Zero(n);
  if (n == 1) {
    normal[0] = 1.0;
    return normal;
  }
  Mat rows(n - 1, n);
  for (int i = 1; i < n; ++i) rows.row(i - 1) = (points[i] - points[0]).transpose();
  // Generalized cross product: cofactor expansion along a virtual first row.
  for (int k = 0; k < n; ++k) {
    Mat minor(n - 1, n - 1);
    for (int c = 0, cc = 0; c < n; ++c) {
      if (c == k) continue;
      minor.col(cc++) = rows.col(c);
    }
    const double det = minor.determinant();
    normal[k] = (k % 2 == 0) ? det : -det;
  }
  const double len = normal.norm();
  double scale = 1.0;
  for (int i = 1; i < n; ++i) scale *= std::max((points[i] - points[0]).norm(), 1e-300);
  if (len <= 1e-12 * scale) return Vec::Zero(n);
  return normal / len;
}

Mat complement_basis(const Vec& unit_normal) {
  const int n = static_cast<int>(unit_normal.size());
  Mat a(n, 1);
  a.col(0) = unit_normal;
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  return q.rightCols(n - 1);
}

Hull hull_1d(std::span<const Vec> points, double tol) {
  auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                      [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
  if ((*hi)[0] - (*lo)[0] <= tol) degenerate("1-D point set has zero length");
  Hull h;
  h.vertices = {*lo, *hi};
  h.facets.push_back({make_vec({-1.0}), -(*lo)[0], {0}});
  h.facets.push_back({make_vec({1.0}), (*hi)[0], {1}});
  return h;
}

Hull hull_2d(std::span<const Vec> points, double tol) {
  std::vector<Vec> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  if (pts.size() < 3) degenerate("fewer than three distinct points in 2-D");
  std::vector<Vec> chain;
  chain.reserve(2 * pts.size());
  auto not_left = [&](const Vec& o, const Vec& a, const Vec& b) {
    return cross2(o, a, b) <= tol * (b - o).norm();
  };
  for (const auto& p : pts) {
    while (chain.size() >= 2 && not_left(chain[chain.size() - 2], chain.back(), p)) chain.pop_back();
    chain.push_back(p);
  }
  const std::size_t lower = chain.size() + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (chain.size() >= lower && not_left(chain[chain.size() - 2], chain.back(), *it))
      chain.pop_back();
    chain.push_back(*it);
  }
  chain.pop_back();
  if (chain.size() < 3) degenerate("2-D point set is collinear");

  Hull h;
  h.vertices = std::move(chain);
  const int m = static_cast<int>(h.vertices.size());
  for (int i = 0; i < m; ++i) {
    const Vec& a = h.vertices[i];
    const Vec& b = h.vertices[(i + 1) % m];
    Vec n = make_vec({b[1] - a[1], a[0] - b[0]});
    n.normalize();
    h.facets.push_back({n, n.dot(a), {i, (i + 1) % m}});
  }
  return h;
}

Hull hull_3d(std::span<const Vec> points, double tol) {
  const int np = static_cast<int>(points.size());
  if (np < 4) degenerate("fewer than four points in 3-D");
  std::vector<Vec3> p(np);
  for (int i = 0; i < np; ++i) p[i] = Vec3(points[i][0], points[i][1], points[i][2]);

  // Initial tetrahedron from extreme points.
  int i0 = 0;
  for (int i = 1; i < np; ++i)
    if (p[i].x() < p[i0].x()) i0 = i;
  int i1 = i0;
  double best = 0.0;
  for (int i = 0; i < np; ++i)
    if (double d = (p[i] - p[i0]).norm(); d > best) best = d, i1 = i;
  if (best <= tol) degenerate("3-D point set is a single point");
  const Vec3 axis = (p[i1] - p[i0]).normalized();
  int i2 = i0;
  best = 0.0;
  for (int i = 0; i < np; ++i) {
    const Vec3 r = p[i] - p[i0];
    if (double d = (r - r.dot(axis) * axis).norm(); d > best) best = d, i2 = i;
  }
  if (best <= tol) degenerate("3-D point set is collinear");
  const Vec3 pn = (p[i1] - p[i0]).cross(p[i2] - p[i0]).normalized();
  int i3 = i0;
  best = 0.0;
  for (int i = 0; i < np; ++i)
    if (double d = std::abs(pn.dot(p[i] - p[i0])); d > best) best = d, i3 = i;
  if (best <= tol) degenerate("3-D point set is coplanar");

  const Vec3 inside = 0.25 * (p[i0] + p[i1] + p[i2] + p[i3]);

  struct Tri {
    int v[3];
    Vec3 n;
    double d;
    bool alive;
  };
  std::vector<Tri> tris;
  std::unordered_map<std::uint64_t, int> edge_face;
  auto key = [np](int u, int v) { return static_cast<std::uint64_t>(u) * np + v; };
  auto add = [&](int a, int b, int c) {
    Vec3 n = (p[b] - p[a]).cross(p[c] - p[a]);
    const double len = n.norm();
    if (len > 0.0) n /= len;
    Tri t{{a, b, c}, n, n.dot(p[a]), true};
    const int id = static_cast<int>(tris.size());
    tris.push_back(t);
    edge_face[key(a, b)] = id;
    edge_face[key(b, c)] = id;
    edge_face[key(c, a)] = id;
  };
  auto add_oriented = [&](int a, int b, int c) {
    const Vec3 n = (p[b] - p[a]).cross(p[c] - p[a]);
    if (n.dot(inside - p[a]) > 0.0)
      add(a, c, b);
    else
      add(a, b, c);
  };
  add_oriented(i0, i1, i2);
  add_oriented(i0, i1, i3);
  add_oriented(i0, i2, i3);
  add_oriented(i1, i2, i3);

  std::vector<int> visible;
  std::vector<char> is_visible;
  std::vector<std::pair<int, int>> horizon;
  for (int ip = 0; ip < np; ++ip) {
    if (ip == i0 || ip == i1 || ip == i2 || ip == i3) continue;
    visible.clear();
    for (int f = 0; f < static_cast<int>(tris.size()); ++f)
      if (tris[f].alive && tris[f].n.dot(p[ip]) - tris[f].d > tol) visible.push_back(f);
    if (visible.empty()) continue;
    is_visible.assign(tris.size(), 0);
    for (int f : visible) is_visible[f] = 1;
    horizon.clear();
    for (int f : visible) {
      const auto& t = tris[f];
      for (int e = 0; e < 3; ++e) {
        const int u = t.v[e], v = t.v[(e + 1) % 3];
        auto it = edge_face.find(key(v, u));
        if (it == edge_face.end() || !is_visible[it->second]) horizon.emplace_back(u, v);
      }
    }
    for (int f : visible) {
      auto& t = tris[f];
      t.alive = false;
      for (int e = 0; e < 3; ++e) {
        auto it = edge_face.find(key(t.v[e], t.v[(e + 1) % 3]));
        if (it != edge_face.end() && it->second == f) edge_face.erase(it);
      }
    }
    for (auto [u, v] : horizon) add(u, v, ip);
  }

  // Merge adjacent coplanar triangles into polygonal facets.
  std::vector<int> alive;
  for (int f = 0; f < static_cast<int>(tris.size()); ++f)
    if (tris[f].alive) alive.push_back(f);
  std::unordered_map<int, int> local;
  for (int i = 0; i < static_cast<int>(alive.size()); ++i) local[alive[i]] = i;
  UnionFind uf(static_cast<int>(alive.size()));
  for (int i = 0; i < static_cast<int>(alive.size()); ++i) {
    const auto& t = tris[alive[i]];
    for (int e = 0; e < 3; ++e) {
      const int u = t.v[e], v = t.v[(e + 1) % 3], w = t.v[(e + 2) % 3];
      auto it = edge_face.find(key(v, u));
      if (it == edge_face.end()) continue;
      const auto& s = tris[it->second];
      int opp = s.v[0];
      for (int k = 0; k < 3; ++k)
        if (s.v[k] != u && s.v[k] != v) opp = s.v[k];
      if (std::abs(t.n.dot(p[opp]) - t.d) <= tol && std::abs(s.n.dot(p[w]) - s.d) <= tol)
        uf.unite(i, local[it->second]);
    }
  }

  std::vector<int> used(np, -1);
  Hull h;
  for (int f : alive)
    for (int v : tris[f].v)
      if (used[v] < 0) {
        used[v] = static_cast<int>(h.vertices.size());
        h.vertices.push_back(points[v]);
      }

  std::unordered_map<int, Vec3> group_normal;
  std::vector<int> roots;
  for (int i = 0; i < static_cast<int>(alive.size()); ++i) {
    const auto& t = tris[alive[i]];
    const Vec3 area_normal = (p[t.v[1]] - p[t.v[0]]).cross(p[t.v[2]] - p[t.v[0]]);
    const int r = uf.find(i);
    auto [it, inserted] = group_normal.try_emplace(r, Vec3::Zero());
    if (inserted) roots.push_back(r);
    it->second += area_normal;
  }
  for (int r : roots) {
    const Vec3 n3 = group_normal[r].normalized();
    Vec n = make_vec({n3.x(), n3.y(), n3.z()});
    double off = -std::numeric_limits<double>::infinity();
    for (const auto& v : h.vertices) off = std::max(off, n.dot(v));
    h.facets.push_back({n, off, on_plane(h.vertices, n, off, tol)});
  }
  return h;
}

Hull hull_brute_force(std::span<const Vec> points, double tol) {
  const int np = static_cast<int>(points.size());
  const int n = static_cast<int>(points[0].size());
  if (np < n + 1) degenerate("too few points to span");
  std::vector<std::pair<Vec, double>> planes;
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Vec> subset(n);
  while (true) {
    for (int k = 0; k < n; ++k) subset[k] = points[idx[k]];
    Vec normal = hyperplane_normal(subset);
    if (normal.squaredNorm() > 0.0) {
      const double off = normal.dot(subset[0]);
      bool above = false, below = false;
      for (int i = 0; i < np && !(above && below); ++i) {
        const double s = normal.dot(points[i]) - off;
        above |= s > tol;
        below |= s < -tol;
      }
      if (!(above && below)) {
        if (above) normal = -normal;
        const double o = above ? -off : off;
        bool dup = false;
        for (const auto& [pn, po] : planes)
          if (pn.dot(normal) > 1.0 - 1e-9 && std::abs(po - o) <= tol) dup = true;
        if (!dup) planes.emplace_back(normal, o);
      }
    }
    int k = n - 1;
    while (k >= 0 && idx[k] == np - n + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (static_cast<int>(planes.size()) < n + 1) degenerate("point set does not span");

  std::vector<int> used(np, -1);
  Hull h;
  for (const auto& [nrm, off] : planes)
    for (int i : on_plane(points, nrm, off, tol))
      if (used[i] < 0) {
        used[i] = static_cast<int>(h.vertices.size());
        h.vertices.push_back(points[i]);
      }
  for (const auto& [nrm, off] : planes) {
    double o = -std::numeric_limits<double>::infinity();
    for (const auto& v : h.vertices) o = std::max(o, nrm.dot(v));
    h.facets.push_back({nrm, o, on_plane(h.vertices, nrm, o, tol)});
  }
  return h;
}

Hull convex_hull(std::span<const Vec> points, double tol) {
  if (points.empty()) degenerate("empty point set");
  const int n = static_cast<int>(points[0].size());
  if (n < 1 || n > kMaxDimension)
    throw Error(ErrorCode::UnsupportedDimension, "dimension must be in 1..4");
  for (const auto& p : points)
    if (p.size() != n) throw Error(ErrorCode::InvalidArgument, "mixed point dimensions");
  const std::vector<Vec> pts = dedupe(points, tol);
  switch (n) {
    case 1: return hull_1d(pts, tol);
    case 2: return hull_2d(pts, tol);
    case 3: return hull_3d(pts, tol);
    default: return hull_brute_force(pts, tol);
  }
}

}  // namespace hhv::geometry::detail
