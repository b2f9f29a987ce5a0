#pragma once

#include "hhv/geometry/convex_body.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace hhv::torsion {

enum class NodeKind : unsigned char { Exterior, Interior, NearBoundary };

/// Cell-centred grid over the bounding box of a convex polygon.  Node (i, j)
/// sits at origin + ((i + 1/2) h, (j + 1/2) h).
///
/// Interior nodes have all four neighbours inside the body; near-boundary
/// nodes are inside with at least one neighbour outside, and carry the
/// distances along each axis to the boundary (east, west, north, south),
/// each in (0, h].
struct GridDiscretization {
  double h = 0.0;
  Vec2 origin = Vec2::Zero();
  int nx = 0;
  int ny = 0;
  std::vector<NodeKind> kind;
  std::vector<std::array<double, 4>> arms;  // h for regular directions
  std::vector<int> unknown;                 // unknown index per node, -1 outside

  std::size_t node(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  Vec2 position(int i, int j) const { return origin + h * Vec2(i + 0.5, j + 0.5); }
  bool inside(int i, int j) const {
    return i >= 0 && j >= 0 && i < nx && j < ny && kind[node(i, j)] != NodeKind::Exterior;
  }
  std::size_t unknowns() const;
};

/// Classifies the nodes of spacing h; throws GridTooCoarse when fewer than 100
/// nodes fall inside.
GridDiscretization discretize(const geometry::ConvexBody& body, double h);

struct BoundarySample {
  int facet = 0;
  double s = 0.0;  // arclength from the facet's first vertex
  Vec2 point = Vec2::Zero();
  double dnu = 0.0;  // inward normal derivative
};

struct TorsionOptions {
  double tolerance = 1e-10;  // relative residual |A u - 1| / |1| (2-norms)
  int samples_per_facet = 64;
  double corner_fraction = 0.05;  // excluded at each end of a facet
};

/// Discrete torsion function on a 2-D convex polygon.
struct TorsionSolution {
  GridDiscretization grid;
  std::vector<double> u;  // per node, 0 outside
  double sup_norm = 0.0;
  std::vector<BoundarySample> boundary_trace;
  double residual_norm = 0.0;  // relative residual of the linear system
  double max_defect = 0.0;     // max |A u - 1|, the discrete Laplacian defect
  int iterations = 0;

  /// Interpolated value (biquadratic where a full 3x3 stencil of inside
  /// nodes is available, bilinear otherwise); 0 outside the grid.
  double evaluate(const Vec2& x) const;
};

/// Shortley-Weller 5-point scheme for -Δu = 1, u = 0 on the boundary.
/// Inward normal derivatives are sampled along each facet (ends excluded) by
/// the one-sided difference (4u(d) - u(2d)) / (2d), d = 2h.
/// Throws GridTooCoarse or SolverDiverged.
TorsionSolution solve_torsion(const geometry::ConvexBody& body, double h,
                              const TorsionOptions& options = {});

double max_normal_derivative(const TorsionSolution& sol);
double sup_norm(const TorsionSolution& sol);

/// u = (r^2 - |x - c|^2) / 4 on the disk of radius r.
struct DiskTorsion {
  double radius = 1.0;
  double value(const Vec2& x) const;
  double sup_norm() const { return radius * radius / 4.0; }
  double normal_derivative() const { return radius / 2.0; }
};
DiskTorsion disk_torsion_oracle(double r);

/// Value with a rigorous bound on the truncation error.
struct Bounded {
  double value = 0.0;
  double tail = 0.0;
};

/// Torsion function of [0, a] x [0, b] by the single sine series, summed
/// over `terms` odd modes.  Each query picks the orientation in which the
/// hyperbolic correction decays fastest and bounds the neglected terms.
class RectangleSeries {
 public:
  RectangleSeries(double a, double b, int terms, double precision);

  Bounded value(double x, double y) const;
  /// Inward normal derivative at arclength s along the side y = 0 (side 0),
  /// x = a (1), y = b (2) or x = 0 (3), measured from that side's start in
  /// counter-clockwise order.
  Bounded normal_derivative(int side, double s) const;

  /// Centre value; throws TailBoundTooLarge above the requested precision.
  double sup_norm() const;
  /// Midpoint of the longer side; same precision contract.
  double max_normal_derivative() const;

  double a() const { return a_; }
  double b() const { return b_; }

 private:
  Bounded value_x_series(double x, double y, double a, double b) const;
  Bounded dnu_bottom(double x, double a, double b) const;
  double checked(const Bounded& v) const;

  double a_, b_;
  int terms_;
  double precision_;
};

/// Throws InvalidArgument for terms < 50 or non-positive sides.
RectangleSeries rectangle_series_oracle(double a, double b, int terms = 200, double precision = 1e-12);

}  // namespace hhv::torsion
