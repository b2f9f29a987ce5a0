#pragma once

#include "hhv/geometry/convex_body.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace hhv::geometry {

/// Mixed volumes w[j] = W_j(K, B_1), j = 0..n, so that
/// |K + tB| = sum_j C(n, j) t^j w[j].
struct QuermassVector {
  int dimension = 0;
  std::vector<double> w;
  std::vector<double> standard_error;  // zeros for exact entries
  Eigen::MatrixXd covariance;          // empty for exact vectors
  bool exact = true;
};

struct QuermassOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 1'000'000;  // per t-node
  /// PrecisionNotMet is thrown when some standard error exceeds this
  /// fraction of its coefficient.
  double relative_tolerance = std::numeric_limits<double>::infinity();
  /// Use the Monte-Carlo fit even where a closed form exists (n <= 3).
  bool force_monte_carlo = false;
};

/// Exact for n <= 3 (n = 3 through edge lengths and exterior dihedral angles),
/// Monte-Carlo Steiner fit otherwise.
QuermassVector mixed_volume_vector(const ConvexBody& body, const QuermassOptions& options = {});
QuermassVector mixed_volume_vector(const ConvexBody& body, std::size_t mc_samples, std::uint64_t seed);

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Monte-Carlo estimate of |K + B_t| from uniform samples in the bounding box
/// grown by t.  Deterministic in (seed, samples).
Estimate parallel_volume_mc(const ConvexBody& body, double t, std::size_t samples, std::uint64_t seed);

/// Euclidean distance from x to the body (0 inside), via Wolfe's minimum-norm
/// point algorithm on the vertex set.
double distance_to_body(const ConvexBody& body, const Vec& x);

struct MinkowskiMeasures {
  double volume = 0.0;
  double surface_area = 0.0;
  double volume_error = 0.0;  // propagated standard errors (0 when exact)
  double surface_error = 0.0;
};

/// Volume and surface area of K + B_r from the Steiner polynomial.
MinkowskiMeasures minkowski_ball_measures(const QuermassVector& q, double r);
MinkowskiMeasures minkowski_ball_measures(const ConvexBody& body, double r,
                                          const QuermassOptions& options = {});

}  // namespace hhv::geometry
