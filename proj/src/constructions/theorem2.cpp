#include "hhv/constructions/constructions.hpp"

#include "hhv/geometry/functionals.hpp"
#include "hhv/geometry/shapes.hpp"
#include "hhv/hh/quadrature.hpp"

#include <fmt/format.h>

#include <cmath>

namespace hhv::constructions {

using geometry::ConvexBody;
using geometry::Halfspace;

namespace {

Vec lift(const Vec& x, double y) {
  Vec out(x.size() + 1);
  out.head(x.size()) = x;
  out[x.size()] = y;
  return out;
}

// Halfspaces in the coordinates (x, s) with s = y / N².  Ω_N spans N³ in y
// but O(1) in x, which the relative geometric tolerance cannot resolve; in
// (x, s) the cone facets a x + b s <= b are well conditioned.
struct ScaledDomain {
  std::vector<Halfspace> hs;
  Vec lower, upper;

  ConvexBody build(std::vector<Halfspace> extra = {}) const {
    std::vector<Halfspace> all = hs;
    all.insert(all.end(), extra.begin(), extra.end());
    return ConvexBody::from_halfspaces(all, geometry::box(lower, upper));
  }
};

// Measure in (x, y) of a facet of a body in (x, s): the map y = N² s has
// determinant N² and stretches a facet with unit normal ν by |A^{-T} ν|.
double unscaled_measure(const geometry::Facet& f, double N) {
  const auto m = f.normal.size() - 1;
  const double nx2 = f.normal.head(m).squaredNorm();
  const double ns = f.normal[m] / (N * N);
  return N * N * std::sqrt(nx2 + ns * ns) * f.measure;
}

Halfspace vertical(int n, double sign, double offset) {
  Vec e = Vec::Zero(n);
  e[n - 1] = sign;
  return {e, offset};
}

bool vertices_inside(const ConvexBody& from, const ConvexBody& to) {
  const double tol = 10.0 * std::max(from.tolerance(), to.tolerance());
  for (const auto& v : from.vertices())
    if (to.max_violation(v) > tol) return false;
  return true;
}

}  // namespace

Theorem2Construction theorem2_domain(const ConvexBody& omega1, const ConvexBody& omega2, double N) {
  const int m = omega1.dimension();
  if (m != 1 && m != 2) throw Error(ErrorCode::UnsupportedDimension, "theorem2_domain needs bases of dimension 1 or 2");
  if (!(N > 1.0) || !std::isfinite(N)) throw Error(ErrorCode::InvalidArgument, "N must be finite and > 1");
  certify_nesting(omega1, omega2);
  const double lambda = geometry::containment_scale(omega1, omega2);
  if (!(lambda - 1.0 < N))
    throw Error(ErrorCode::InvalidArgument, fmt::format("N = {} is not large against lambda = {}", N, lambda));
  const int n = m + 1;

  ScaledDomain c1{{}, lift(omega1.lower(), -N), lift(omega1.upper(), 1.0 / N)};
  for (const auto& f : omega1.facets()) c1.hs.push_back({lift(f.normal, 0.0), f.offset});
  c1.hs.push_back(vertical(n, -1.0, N));

  ScaledDomain dom = c1;
  for (const auto& f : omega2.facets()) dom.hs.push_back({lift(f.normal, f.offset), f.offset});
  dom.hs.push_back(vertical(n, 1.0, 1.0 / N));

  ScaledDomain c2{{}, lift(omega2.lower(), 0.0), lift(omega2.upper(), 1.0 / N)};
  for (const auto& f : omega2.facets()) c2.hs.push_back({lift(f.normal, f.offset), f.offset});
  c2.hs.push_back(vertical(n, 1.0, 1.0 / N));

  const ConvexBody body = dom.build();
  const ConvexBody upper = dom.build({vertical(n, -1.0, 0.0)});
  const ConvexBody c2_upper = c2.build({vertical(n, -1.0, 0.0)});

  const double N2 = N * N;
  double surface = 0.0;
  for (const auto& f : body.facets()) surface += unscaled_measure(f, N);
  // y₊ vanishes on the cut facet y = 0, so the facets of the upper part
  // carry the whole boundary integral.
  double boundary_integral = 0.0;
  for (const auto& f : upper.facets()) boundary_integral += unscaled_measure(f, N) * N2 * f.centroid[m];
  const double volume_integral = N2 * upper.volume() * N2 * upper.centroid()[m];

  const double cut = -(lambda - 1.0);  // in units of N²
  const ConvexBody lower = dom.build({vertical(n, 1.0, cut)});
  const ConvexBody c1_lower = c1.build({vertical(n, 1.0, cut)});

  Theorem2Construction out{body};
  out.N = N;
  out.lambda = lambda;
  out.volume_integral = volume_integral;
  out.boundary_integral = boundary_integral;
  out.volume = N2 * body.volume();
  out.surface_area = surface;
  out.volume_mean = volume_integral / out.volume;
  out.boundary_mean = boundary_integral / out.surface_area;
  out.ratio = out.volume_mean / out.boundary_mean;
  out.limit = (omega2.volume() / omega1.volume()) * (omega1.surface_area() / omega2.surface_area());
  out.upper_identity = vertices_inside(upper, c2_upper) && vertices_inside(c2_upper, upper);
  out.lower_identity = vertices_inside(lower, c1_lower) && vertices_inside(c1_lower, lower);
  return out;
}

VolumeFit fit_theorem2_volume(const ConvexBody& omega1, const ConvexBody& omega2, std::span<const double> Ns) {
  if (Ns.size() < 2) throw Error(ErrorCode::InsufficientPoints, "volume fit needs at least 2 values of N");
  // |Ω_N| / N³ = a + b / N
  Eigen::MatrixXd a(static_cast<Eigen::Index>(Ns.size()), 2);
  Eigen::VectorXd rhs(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double N = Ns[static_cast<std::size_t>(i)];
    a(i, 0) = 1.0;
    a(i, 1) = 1.0 / N;
    rhs[i] = theorem2_domain(omega1, omega2, N).volume / (N * N * N);
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(rhs);
  return {c[0], c[1]};
}

hh::BoundReport prism_extension(const ConvexBody& body, const hh::TestFunction& f, double z,
                                const hh::QuadratureSpec& spec) {
  const int m = body.dimension();
  if (m != 1 && m != 2) throw Error(ErrorCode::UnsupportedDimension, "prism_extension needs a base of dimension 1 or 2");
  if (!(z > 0.0) || !std::isfinite(z)) throw Error(ErrorCode::InvalidArgument, "prism height must be finite and > 0");
  hh::check_positive(f, body);

  double vol_int = 0.0, bdry_int = 0.0;
  if (m == 1) {
    const double a = body.lower()[0], b = body.upper()[0];
    vol_int = hh::integrate_interval([&](double x) { return f(make_vec({x})); }, a, b, spec).value;
    bdry_int = f(make_vec({a})) + f(make_vec({b}));
  } else {
    vol_int = hh::integrate_polygon([&](const Vec& x) { return f(x); }, body, spec).value;
    bdry_int = hh::integrate_boundary([&](const Vec& x) { return f(x); }, body, spec).value;
  }

  std::vector<Vec> pts;
  for (const auto& v : body.vertices()) {
    pts.push_back(lift(v, 0.0));
    pts.push_back(lift(v, z));
  }
  const ConvexBody prism = ConvexBody::from_points(pts, geometry::Provenance::Prism);

  const double base_vol_mean = vol_int / body.volume();
  const double base_bdry_mean = bdry_int / body.surface_area();
  // Top and bottom carry ∫_Ω f each, the lateral facets z ∫_∂Ω f.
  const double prism_vol_mean = z * vol_int / prism.volume();
  const double prism_bdry_mean = (2.0 * vol_int + z * bdry_int) / prism.surface_area();

  hh::BoundReport r;
  r.body_id = fmt::format("prism(z={})", z);
  r.function_id = f.id();
  r.vol_mean = prism_vol_mean;
  r.bdry_mean = prism_bdry_mean;
  r.lhs = prism_vol_mean / prism_bdry_mean;
  r.bound = hh::theorem1_bound(m + 1);
  r.margin = r.bound - r.lhs;
  r.params = {
      {"z", z},
      {"base_ratio", base_vol_mean / base_bdry_mean},
      {"volume_mean_defect", std::abs(prism_vol_mean - base_vol_mean) / std::abs(base_vol_mean)},
      {"base_boundary_mean", base_bdry_mean},
      {"boundary_mean_error", prism_bdry_mean - base_bdry_mean},
  };
  return r;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "slope needs matching x and y");
  if (x.size() < 2) throw Error(ErrorCode::InsufficientPoints, "slope needs at least 2 points");
  const auto k = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] != 0.0) || !std::isfinite(y[i]))
      throw Error(ErrorCode::InvalidArgument, "slope needs x > 0 and finite nonzero y");
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = k * sxx - sx * sx;
  if (!(den > 0.0)) throw Error(ErrorCode::InvalidArgument, "slope needs distinct x values");
  return (k * sxy - sx * sy) / den;
}

}  // namespace hhv::constructions
