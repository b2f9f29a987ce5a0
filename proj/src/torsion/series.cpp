#include "hhv/torsion/torsion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hhv::torsion {
namespace {

constexpr double kPi = std::numbers::pi;

// cosh(p) / cosh(q) for 0 <= |p| <= q without overflow.
double cosh_ratio(double p, double q) {
  p = std::abs(p);
  return std::exp(p - q) * (1.0 + std::exp(-2.0 * p)) / (1.0 + std::exp(-2.0 * q));
}

// Sum over odd k >= k0 of k^-power * 2 exp(-k rate), bounded geometrically.
double geometric_tail(int k0, int power, double rate) {
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::pow(k0, -power) * std::exp(-k0 * rate) / (1.0 - std::exp(-2.0 * rate));
}

}  // namespace

double DiskTorsion::value(const Vec2& x) const { return std::max(0.0, (radius * radius - x.squaredNorm()) / 4.0); }

DiskTorsion disk_torsion_oracle(double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  return DiskTorsion{r};
}

RectangleSeries::RectangleSeries(double a, double b, int terms, double precision)
    : a_(a), b_(b), terms_(terms), precision_(precision) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::InvalidArgument, "rectangle sides must be positive");
  if (terms < 50) throw Error(ErrorCode::InvalidArgument, "at least 50 series terms are required");
}

Bounded RectangleSeries::value_x_series(double x, double y, double a, double b) const {
  const int last = 2 * terms_ - 1;
  const double d = std::min(y, b - y);
  // Hyperbolic correction decays like exp(-k pi d / a); the sine series of
  // x(a - x)/2 itself only like k^-3.
  const double exp_tail = 4.0 * a * a / (kPi * kPi * kPi) * geometric_tail(last + 2, 3, kPi * d / a);
  const double poly_tail = a * a / (kPi * kPi * kPi * last * last);
  double corr = 0.0, full = 0.0;
  for (int k = 1; k <= last; k += 2) {
    const double c = 4.0 * a * a / (kPi * kPi * kPi * k * k * k) * std::sin(k * kPi * x / a);
    const double ch = cosh_ratio(k * kPi * (y - 0.5 * b) / a, k * kPi * 0.5 * b / a);
    corr += c * ch;
    full += c * (1.0 - ch);
  }
  if (exp_tail < poly_tail) return {0.5 * x * (a - x) - corr, exp_tail};
  return {full, poly_tail};
}

Bounded RectangleSeries::value(double x, double y) const {
  if (x <= 0.0 || y <= 0.0 || x >= a_ || y >= b_) return {0.0, 0.0};
  const Bounded p = value_x_series(x, y, a_, b_);
  const Bounded q = value_x_series(y, x, b_, a_);
  return p.tail <= q.tail ? p : q;
}

// d/dy u at (x, 0): the y-series gives b/2 minus an exponentially decaying
// correction; the x-series converges like k^-2 everywhere.
Bounded RectangleSeries::dnu_bottom(double x, double a, double b) const {
  const int last = 2 * terms_ - 1;
  const double d = std::min(x, a - x);
  const double exp_tail = 4.0 * b / (kPi * kPi) * geometric_tail(last + 2, 2, kPi * d / b);
  const double poly_tail = 2.0 * a / (kPi * kPi * last);
  double corr = 0.0, direct = 0.0;
  for (int m = 1; m <= last; m += 2) {
    corr += 4.0 * b / (kPi * kPi * m * m) * cosh_ratio(m * kPi * (x - 0.5 * a) / b, m * kPi * 0.5 * a / b);
    direct += 4.0 * a / (kPi * kPi * m * m) * std::sin(m * kPi * x / a) * std::tanh(m * kPi * b / (2.0 * a));
  }
  if (exp_tail < poly_tail) return {0.5 * b - corr, exp_tail};
  return {direct, poly_tail};
}

Bounded RectangleSeries::normal_derivative(int side, double s) const {
  switch (side) {
    case 0: return dnu_bottom(s, a_, b_);
    case 1: return dnu_bottom(s, b_, a_);
    case 2: return dnu_bottom(a_ - s, a_, b_);
    case 3: return dnu_bottom(b_ - s, b_, a_);
    default: throw Error(ErrorCode::InvalidArgument, "rectangle side must be 0..3");
  }
}

double RectangleSeries::checked(const Bounded& v) const {
  if (v.tail > precision_)
    throw Error(ErrorCode::TailBoundTooLarge, "series tail bound exceeds the requested precision");
  return v.value;
}

double RectangleSeries::sup_norm() const { return checked(value(0.5 * a_, 0.5 * b_)); }

double RectangleSeries::max_normal_derivative() const {
  return std::max(checked(normal_derivative(0, 0.5 * a_)), checked(normal_derivative(1, 0.5 * b_)));
}

RectangleSeries rectangle_series_oracle(double a, double b, int terms, double precision) {
  return RectangleSeries(a, b, terms, precision);
}

}  // namespace hhv::torsion
