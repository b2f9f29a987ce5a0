#include "hhv/constructions/constructions.hpp"

#include "hhv/geometry/functionals.hpp"
#include "hhv/geometry/shapes.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <optional>

namespace hhv::constructions {

using geometry::ConvexBody;

NestedPair certify_nesting(const ConvexBody& outer, const ConvexBody& inner, double tol) {
  if (outer.dimension() != inner.dimension())
    throw Error(ErrorCode::InvalidArgument, "nested bodies must share a dimension");
  const auto verts = inner.vertices();
  const auto facets = outer.facets();
  Eigen::MatrixXd slacks(static_cast<Eigen::Index>(verts.size()), static_cast<Eigen::Index>(facets.size()));
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = 0; j < facets.size(); ++j)
      slacks(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          facets[j].offset - facets[j].normal.dot(verts[i]);
  const double min_slack = slacks.minCoeff();
  if (min_slack < -tol)
    throw Error(ErrorCode::NestingViolated, fmt::format("inner vertex outside the outer body by {:.3e}", -min_slack));
  return NestedPair{outer, inner, std::move(slacks), min_slack};
}

double geometric_ratio(const NestedPair& pair) {
  return (pair.outer.surface_area() / pair.outer.volume()) * (pair.inner.volume() / pair.inner.surface_area());
}

ThinSimplexRatio thin_simplex_ratio(int n, double eta, double t, const geometry::QuermassOptions& options) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be finite and >= 0");
  const ConvexBody body = geometry::thin_simplex(n, eta);
  const auto q = geometry::mixed_volume_vector(body, options);
  const auto m = geometry::minkowski_ball_measures(q, t);

  ThinSimplexRatio out;
  out.n = n;
  out.eta = eta;
  out.t = t;
  out.exact = q.exact;
  out.ratio = n / (1.0 + t) * m.volume / m.surface_area;
  if (!q.exact) {
    const double rv = m.volume_error / m.volume, rs = m.surface_error / m.surface_area;
    out.ratio_error = std::abs(out.ratio) * std::hypot(rv, rs);
  }

  const double vol = body.volume(), area = body.surface_area();
  double tail = 0.0;
  for (int j = 1; j <= n - 1; ++j)
    tail += binomial(n - 1, j) * std::pow(2.0, n - j - 1) * std::pow(t, j) * std::pow(eta, n - j - 1);
  tail *= n * unit_ball_volume(n);
  out.surrogate = n / (1.0 + t) * (vol + t * area) / (area + tail);
  return out;
}

ThinSimplexRatio thin_simplex_ratio_alpha(int n, double eta, double alpha, const geometry::QuermassOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  return thin_simplex_ratio(n, eta, std::pow(eta, alpha), options);
}

namespace {

// Ω_r for 0 <= r < inrad, without the inradius solve inner_parallel repeats
// on every call; nullopt once the shifted facets leave no interior.
std::optional<ConvexBody> shrink(const ConvexBody& body, double r) {
  std::vector<geometry::Halfspace> hs;
  for (const auto& f : body.facets()) hs.push_back({f.normal, f.offset - r});
  try {
    return ConvexBody::from_halfspaces(hs, body, geometry::Provenance::InnerParallel);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateBody) throw;
    return std::nullopt;
  }
}

}  // namespace

CheegerResult cheeger_2d(const ConvexBody& body) {
  if (body.dimension() != 2) throw Error(ErrorCode::UnsupportedDimension, "cheeger_2d needs a polygon");
  const double inrad = geometry::inradius(body).radius;
  const double pi = std::numbers::pi;
  auto g = [&](double r) {
    const auto core = shrink(body, r);
    return (core ? core->volume() : 0.0) - pi * r * r;
  };

  double lo = 0.0, hi = inrad;
  if (!(g(lo) > 0.0 && g(hi) < 0.0)) throw Error(ErrorCode::BisectionFailed, "no sign change on (0, inrad)");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * inrad; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);

  const auto shrunk = shrink(body, r);
  if (!shrunk) throw Error(ErrorCode::BisectionFailed, "root lies at the inradius");
  const ConvexBody& core = *shrunk;
  CheegerResult out;
  out.r = r;
  out.h = 1.0 / r;
  out.area = core.volume() + r * core.surface_area() + pi * r * r;
  out.perimeter = core.surface_area() + 2.0 * pi * r;
  out.fixed_point_defect = std::abs(out.perimeter / out.area - out.h) / out.h;
  out.containment_slack = std::numeric_limits<double>::infinity();
  for (const auto& v : core.vertices())
    for (const auto& f : body.facets())
      out.containment_slack = std::min(out.containment_slack, f.offset - f.normal.dot(v) - r);

  if (out.fixed_point_defect > 1e-8)
    throw Error(ErrorCode::BisectionFailed,
                fmt::format("Cheeger set perimeter/area misses h by {:.3e}", out.fixed_point_defect));
  if (out.containment_slack < -1e-9 * body.diameter())
    throw Error(ErrorCode::BisectionFailed, "Cheeger set leaves the body");
  return out;
}

double cheeger_reformulation_ratio(const ConvexBody& body) {
  return body.surface_area() / body.volume() / cheeger_2d(body).h;
}

}  // namespace hhv::constructions
