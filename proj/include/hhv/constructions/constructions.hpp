#pragma once

#include "hhv/geometry/convex_body.hpp"
#include "hhv/geometry/quermass.hpp"
#include "hhv/hh/hh.hpp"
#include "hhv/hh/test_function.hpp"

#include <span>
#include <vector>

namespace hhv::constructions {

/// Ω₂ ⊂ Ω₁ together with the facet slacks that certify it.
struct NestedPair {
  geometry::ConvexBody outer;
  geometry::ConvexBody inner;
  Eigen::MatrixXd slacks;  // slacks(i, j) = b_j - <a_j, v_i>, inner vertex i, outer facet j
  double min_slack = 0.0;
};

/// Throws NestingViolated when some inner vertex violates an outer facet by
/// more than tol.
NestedPair certify_nesting(const geometry::ConvexBody& outer, const geometry::ConvexBody& inner,
                           double tol = 1e-9);

/// (|∂Ω₁| / |Ω₁|) (|Ω₂| / |∂Ω₂|); at most n for every nested pair.
double geometric_ratio(const NestedPair& pair);

struct ThinSimplexRatio {
  int n = 0;
  double eta = 0.0;
  double t = 0.0;
  double ratio = 0.0;      // n/(1+t) |Ω+B_t| / |∂(Ω+B_t)|
  double surrogate = 0.0;  // two-term numerator over the B_{2η} containment denominator
  double ratio_error = 0.0;  // propagated Monte-Carlo standard error, 0 when exact
  bool exact = true;
};

/// Ratio of the pair ((1+t)Ω(η), Ω(η) + B_t) from the quermass vector of
/// the thin simplex.  Exact for n <= 3, Monte-Carlo for n = 4.
ThinSimplexRatio thin_simplex_ratio(int n, double eta, double t, const geometry::QuermassOptions& options = {});

/// Same with t = eta^alpha.
ThinSimplexRatio thin_simplex_ratio_alpha(int n, double eta, double alpha = 0.5,
                                          const geometry::QuermassOptions& options = {});

struct CheegerResult {
  double h = 0.0;
  double r = 0.0;
  double area = 0.0;       // |Ω_r| + r |∂Ω_r| + π r²
  double perimeter = 0.0;  // |∂Ω_r| + 2π r
  double fixed_point_defect = 0.0;  // |perimeter/area - h| / h
  double containment_slack = 0.0;   // min over Ω_r vertices and Ω facets of (b - <a, v>) - r
};

/// Cheeger constant of a convex polygon: the root r of |Ω_r| = π r² in
/// (0, inrad), h = 1/r.  Throws BisectionFailed when no root is bracketed or
/// when the Cheeger set fails the fixed-point or containment check.
CheegerResult cheeger_2d(const geometry::ConvexBody& body);

/// (|∂Ω| / |Ω|) / h(Ω).  The pair (Ω, Cheeger set) bounds it by 2.
double cheeger_reformulation_ratio(const geometry::ConvexBody& body);

struct Theorem2Construction {
  geometry::ConvexBody scaled_body;  // Ω_N in the coordinates (x, y / N²)
  double N = 0.0;
  double volume = 0.0;  // |Ω_N|
  double surface_area = 0.0;  // |∂Ω_N|
  double lambda = 0.0;  // smallest λ with Ω₁ ⊆ λ Ω₂
  double volume_integral = 0.0;    // ∫ y₊ over Ω_N
  double boundary_integral = 0.0;  // ∫ y₊ over ∂Ω_N
  double volume_mean = 0.0;
  double boundary_mean = 0.0;
  double ratio = 0.0;  // volume_mean / boundary_mean
  double limit = 0.0;  // (|Ω₂| / |Ω₁|) (|∂Ω₁| / |∂Ω₂|)
  bool upper_identity = false;  // Ω_N ∩ {y >= 0} = C₂ ∩ {y >= 0}
  bool lower_identity = false;  // Ω_N ∩ {y <= -(λ-1)N²} = C₁ ∩ {same}
};

/// Ω_N = C₁ ∩ C₂ with C₁ = Ω₁ × [-N³, ∞) and C₂ = {(x, y): x ∈ (1 - y/N²)Ω₂,
/// y <= N}, for bases of dimension 1 or 2.  Integrals of y₊ are exact
/// (centroids of Ω_N ∩ {y >= 0} and of its facets).  Bodies are built in
/// (x, y / N²) so the O(1) cross-sections stay resolved at N³ height.  Throws
/// NestingViolated, OriginNotInterior or UnsupportedDimension.
Theorem2Construction theorem2_domain(const geometry::ConvexBody& omega1, const geometry::ConvexBody& omega2,
                                     double N);

struct VolumeFit {
  double leading = 0.0;     // a in |Ω_N| ≈ a N³ + b N²
  double subleading = 0.0;  // b
};

/// Least-squares fit of |Ω_N| over the given N values (at least 2).
VolumeFit fit_theorem2_volume(const geometry::ConvexBody& omega1, const geometry::ConvexBody& omega2,
                              std::span<const double> Ns);

/// Prism Ω × [0, z] with f extended constantly in the new coordinate, for
/// bases of dimension 1 or 2.  lhs is the prism ratio of means; params
/// carry base_ratio, volume_mean_defect (relative), base_boundary_mean,
/// boundary_mean_error (prism minus base boundary mean) and z.
hh::BoundReport prism_extension(const geometry::ConvexBody& body, const hh::TestFunction& f, double z,
                                const hh::QuadratureSpec& spec = {});

/// Least-squares slope of log|y| against log x.  Throws InsufficientPoints
/// below 2 points and InvalidArgument on nonpositive x or zero y.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace hhv::constructions
