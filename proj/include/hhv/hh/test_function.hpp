#pragma once

#include "hhv/geometry/convex_body.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hhv::hh {

enum class FunctionKind {
  Affine,              // <g, x> + c
  ConvexPiecewise,     // max_i (<g_i, x> + c_i)
  HarmonicPolynomial,  // c + Re sum_k a_k (z - z0)^k, 2-D
  HalfPlanePoisson,    // <x - q, nu> / |x - q|^2 with pole q = p - eps nu, 2-D
  RectanglePoisson,    // Poisson extension of a heat-mollified boundary Dirac
  Custom,              // arbitrary callable, checked by sampling only
};

/// A candidate function for the Hermite-Hadamard inequality.  Affine and
/// harmonic kinds are harmonic by construction, piecewise kinds convex by
/// construction; positivity is always checked on the body.
class TestFunction {
 public:
  static TestFunction constant(double c, int dimension = 2);
  static TestFunction affine(const Vec& gradient, double offset);
  static TestFunction convex_piecewise(std::vector<std::pair<Vec, double>> pieces);
  static TestFunction harmonic_polynomial(std::vector<std::complex<double>> coefficients,
                                          std::complex<double> center = {}, double constant = 0.0);
  /// Pole at distance eps outside the boundary point p, which has inward unit
  /// normal nu.
  static TestFunction half_plane_poisson(const Vec2& p, const Vec2& inward_normal, double eps);
  /// Rectangle [lower, lower + (a, b)], source at arclength s on `side`
  /// (0 bottom, 1 right, 2 top, 3 left, counter-clockwise), boundary Dirac
  /// smoothed by the Dirichlet heat kernel at time eps^2 / 2.
  static TestFunction rectangle_poisson(const Vec2& lower, double a, double b, int side, double s, double eps);
  static TestFunction custom(std::function<double(const Vec&)> f, int dimension, std::string id,
                             bool convex = false);

  double operator()(const Vec& x) const { return eval_(x); }
  FunctionKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  const std::string& id() const { return id_; }
  bool harmonic() const;
  bool convex() const;

  TestFunction with_id(std::string id) const;

  /// Affine pieces (g_i, c_i) of affine and convex piecewise kinds, null for
  /// other kinds.
  const std::vector<std::pair<Vec, double>>* pieces() const { return pieces_.get(); }
  /// Parameters t in (t0, t1) where two pieces cross along x + t d; empty
  /// for kinds without pieces.
  std::vector<double> kinks_along(const Vec& x, const Vec& d, double t0, double t1) const;

 private:
  TestFunction(FunctionKind kind, int dimension, std::string id, std::function<double(const Vec&)> eval,
               bool convex_hint = false)
      : kind_(kind), dimension_(dimension), id_(std::move(id)), eval_(std::move(eval)), convex_hint_(convex_hint) {}

  FunctionKind kind_;
  int dimension_;
  std::string id_;
  std::function<double(const Vec&)> eval_;
  bool convex_hint_ = false;
  std::shared_ptr<const std::vector<std::pair<Vec, double>>> pieces_;
};

std::string_view to_string(FunctionKind kind);

/// Throws NonPositiveFunction when f < 0 at any of about 10^4 points of the
/// body (a grid plus boundary samples).
void check_positive(const TestFunction& f, const geometry::ConvexBody& body);

/// Harmonic and convex kinds pass by construction; other kinds are sampled
/// with a 5-point discrete Laplacian and throw NotSubharmonic below
/// -1e-8 * scale.
void check_subharmonic(const TestFunction& f, const geometry::ConvexBody& body);

}  // namespace hhv::hh
