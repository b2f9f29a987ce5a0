#pragma once

#include "hhv/geometry/convex_body.hpp"
#include "hhv/hh/quadrature.hpp"
#include "hhv/hh/test_function.hpp"
#include "hhv/torsion/torsion.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hhv::hh {

/// Outcome of one inequality check.  The margin keeps its sign; callers
/// decide what a negative margin means.
struct BoundReport {
  std::string body_id;
  std::string function_id;
  double lhs = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - lhs
  double vol_mean = 0.0;
  double bdry_mean = 0.0;
  std::vector<std::pair<std::string, double>> params;

  bool holds(double tol = 0.0) const { return margin >= -tol; }
  /// Value of a named parameter; throws InvalidArgument when absent.
  double param(const std::string& name) const;
};

struct HHConstant {
  double c = 0.0;           // max inward normal derivative of the torsion function
  double normalized = 0.0;  // c |∂Ω| / |Ω|
  double sup_norm = 0.0;
  double h = 0.0;
};

/// Optimal Hermite-Hadamard constant of a 2-D polygon from the discrete
/// torsion function at spacing h.
HHConstant hh_constant(const geometry::ConvexBody& body, double h, const torsion::TorsionOptions& options = {});

/// n^{3/2} for odd n, (n^2 + n)/sqrt(n + 2) for even n.
double theorem1_bound(int n);
/// 2 n^{3/2}, valid for every n.
double theorem1_uniform_bound(int n);
/// max(n - 1, 1).
double theorem2_lower(int n);
/// omega_n^{1/n} sqrt(n); tends to sqrt(2 pi e).
double ball_factor(int n);
/// |Ω|^{1/n} / (omega_n^{1/n} sqrt(n)).
double theorem3_bound(const geometry::ConvexBody& body);

struct VerifyOptions {
  QuadratureSpec quadrature{};
  std::optional<double> bound;  // defaults to theorem1_bound(2)
  std::string body_id = "body";
};

/// Checks (1/|Ω|) ∫_Ω f <= (C/|∂Ω|) ∫_∂Ω f on a 2-D polygon; lhs is the ratio
/// of the two means.  Throws NonPositiveFunction or NotSubharmonic.
BoundReport verify_inequality(const geometry::ConvexBody& body, const TestFunction& f,
                              const VerifyOptions& options = {});

/// Checks ∫_Ω f <= (w/2) ∫_∂Ω f for convex f (n = 1, 2, 3), integrating
/// along chords parallel to the width direction.  lhs is ∫_Ω f; params carry
/// the width, the boundary integral and the intermediate fiber bound
/// ∫ (len/2)(f(a) + f(b)) over the projection.  Piecewise kinds are split
/// at their kinks; in 3-D the shadow is cut into cells where the chord ends
/// stay on one facet pair, integrated to at most 1e-9 relative tolerance.
/// Throws NotConvexFunction.
BoundReport fiber_hh_bound(const geometry::ConvexBody& body, const TestFunction& f,
                           const QuadratureSpec& spec = {});

}  // namespace hhv::hh
