#include <doctest.h>

#include "hhv/constructions/constructions.hpp"
#include "hhv/geometry/functionals.hpp"
#include "hhv/geometry/shapes.hpp"
#include "support/random_bodies.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hhv;
using namespace hhv::constructions;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

geometry::ConvexBody unit_square() { return geometry::box(make_vec({0, 0}), make_vec({1, 1})); }

geometry::ConvexBody interval(double a, double b) { return geometry::box(make_vec({a}), make_vec({b})); }

// Ratio of the pair ((1+t)T, T + B_t) for the isosceles triangle T with base
// b and inradius 1, from plain triangle geometry: height H = 2b²/(b² - 4).
double isosceles_ratio(double b, double t) {
  const double H = 2.0 * b * b / (b * b - 4.0);
  const double area = 0.5 * b * H;
  const double perimeter = b + 2.0 * std::hypot(H, 0.5 * b);
  return 2.0 / (1.0 + t) * (area + perimeter * t + kPi * t * t) / (perimeter + 2.0 * kPi * t);
}

// Closed forms for Ω₁ = [-1, 1], Ω₂ = [-1/2, 1/2]: width 2 below y = -N²,
// width 1 - y/N² above.
struct IntervalDomain {
  double volume, perimeter, volume_integral, boundary_integral;
};

IntervalDomain half_interval_domain(double N) {
  const double N2 = N * N, N3 = N2 * N;
  IntervalDomain d{};
  d.volume = 2.0 * (N3 - N2) + (N + 1.5 * N2 - 0.5);
  const double slant = std::hypot(N2 + N, 0.5 * (1.0 + 1.0 / N));
  d.perimeter = 2.0 + 2.0 * (N3 - N2) + 2.0 * slant + (1.0 - 1.0 / N);
  d.volume_integral = N2 / 2.0 - N / 3.0;
  d.boundary_integral = N * std::hypot(N, 0.5 / N) + N - 1.0;
  return d;
}

}  // namespace

TEST_SUITE("nested pair ratio") {
  TEST_CASE("identical bodies give ratio 1") {
    const auto pair = certify_nesting(unit_square(), unit_square());
    CHECK(pair.min_slack >= -1e-12);
    CHECK(geometric_ratio(pair) == Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("square with its inscribed disk") {
    const auto disk = geometry::ball_polytope(2, 720, 0.5, make_vec({0.5, 0.5}));
    const auto pair = certify_nesting(unit_square(), disk);
    // Inscribed 720-gon: |Ω₂| / |∂Ω₂| = r cos(π/720) / 2.
    CHECK(geometric_ratio(pair) == Approx(std::cos(kPi / 720)).epsilon(1e-12));
    CHECK(geometric_ratio(pair) == Approx(1.0).epsilon(1e-4));
  }

  TEST_CASE("certificate records every slack") {
    const auto inner = geometry::box(make_vec({0.25, 0.25}), make_vec({0.5, 0.75}));
    const auto pair = certify_nesting(unit_square(), inner);
    CHECK(pair.slacks.rows() == 4);
    CHECK(pair.slacks.cols() == 4);
    CHECK(pair.min_slack == Approx(0.25));
  }

  TEST_CASE("nesting violations are rejected") {
    const auto shifted = geometry::box(make_vec({0.5, 0.5}), make_vec({1.5, 1.5}));
    CHECK_THROWS_AS(certify_nesting(unit_square(), shifted), Error);
    try {
      certify_nesting(unit_square(), shifted);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NestingViolated);
    }
    CHECK_THROWS_AS(certify_nesting(unit_square(), interval(0, 1)), Error);
  }

  TEST_CASE("random nested pairs stay below n") {
    std::mt19937_64 rng(20240611);
    for (int n : {2, 3}) {
      double worst = 0.0;
      for (int k = 0; k < 1000; ++k) {
        const auto outer = testing::random_polytope(n, rng);
        const auto inner = testing::random_inner(outer, rng);
        const double r = geometric_ratio(certify_nesting(outer, inner));
        REQUIRE(r > 0.0);
        worst = std::max(worst, r);
      }
      CHECK(worst <= n);
    }
  }
}

TEST_SUITE("thin simplex ratio") {
  TEST_CASE("t = 0 collapses to 1") {
    for (int n : {2, 3})
      for (double eta : {20.0, 1e3}) CHECK(thin_simplex_ratio(n, eta, 0.0).ratio == Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("planar values match triangle geometry") {
    for (double eta : {1e2, 1e3, 1e4})
      for (double t : {0.5, 3.0, std::sqrt(eta)}) {
        const auto r = thin_simplex_ratio(2, eta, t);
        CHECK(r.exact);
        CHECK(r.ratio == Approx(isosceles_ratio(eta, t)).epsilon(1e-10));
      }
  }

  TEST_CASE("t = sqrt(eta) climbs toward n") {
    for (int n : {2, 3}) {
      double prev = 0.0;
      for (double eta : {1e2, 1e3, 1e4}) {
        const auto r = thin_simplex_ratio_alpha(n, eta);
        CHECK(r.t == Approx(std::sqrt(eta)));
        CHECK(r.ratio > prev);
        CHECK(r.ratio < n);
        prev = r.ratio;
      }
    }
    CHECK(thin_simplex_ratio_alpha(2, 1e4).ratio > 1.9);
    CHECK(thin_simplex_ratio_alpha(3, 1e3).ratio >= 2.5);
    CHECK(thin_simplex_ratio_alpha(3, 1e4).ratio > 2.5);
  }

  TEST_CASE("surrogate never exceeds the ratio") {
    for (int n : {2, 3})
      for (double eta : {1e2, 1e3, 1e4})
        for (double alpha : {0.25, 0.5, 0.75}) {
          const auto r = thin_simplex_ratio_alpha(n, eta, alpha);
          CHECK(r.surrogate > 0.0);
          CHECK(r.surrogate <= r.ratio);
        }
  }

  TEST_CASE("other alpha values also approach n") {
    CHECK(thin_simplex_ratio_alpha(2, 1e6, 0.25).ratio > 1.9);
    CHECK(thin_simplex_ratio_alpha(2, 1e6, 0.75).ratio > 1.9);
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(thin_simplex_ratio(2, 100.0, -1.0), Error);
    CHECK_THROWS_AS(thin_simplex_ratio_alpha(2, 100.0, 1.5), Error);
  }
}

TEST_SUITE("cheeger") {
  TEST_CASE("unit square closed form") {
    const auto c = cheeger_2d(unit_square());
    // Root of (1 - 2r)² = π r².
    CHECK(c.r == Approx(1.0 / (2.0 + std::sqrt(kPi))).epsilon(1e-12));
    CHECK(c.h == Approx(2.0 + std::sqrt(kPi)).epsilon(1e-12));
    CHECK(c.fixed_point_defect < 1e-12);
    CHECK(c.containment_slack >= -1e-12);
  }

  TEST_CASE("2 x 1 rectangle") {
    const auto c = cheeger_2d(geometry::box(make_vec({0, 0}), make_vec({2, 1})));
    // Smaller root of (2 - 2r)(1 - 2r) = π r².
    const double a = 4.0 - kPi;
    const double r = (6.0 - std::sqrt(36.0 - 8.0 * a)) / (2.0 * a);
    CHECK(c.r == Approx(r).epsilon(1e-12));
    CHECK(c.r == Approx(0.35095491257677310).epsilon(1e-12));
    CHECK(c.h == Approx(2.8493688623926731).epsilon(1e-12));
  }

  TEST_CASE("disk is its own Cheeger set") {
    const auto c = cheeger_2d(geometry::ball_polytope(2, 720));
    CHECK(c.h == Approx(2.0).epsilon(5e-3));
    CHECK(c.area == Approx(kPi).epsilon(1e-4));
  }

  TEST_CASE("random polygons: fixed point and minimality in the family") {
    std::mt19937_64 rng(77);
    for (int k = 0; k < 100; ++k) {
      const auto body = testing::random_polytope(2, rng);
      const auto c = cheeger_2d(body);
      CHECK(c.fixed_point_defect <= 1e-8);
      CHECK(c.containment_slack >= -1e-9);
      CHECK(c.h <= body.surface_area() / body.volume() * (1.0 + 1e-12));
      CHECK(c.h <= body.surface_area() / body.volume() + 2.0 * std::sqrt(kPi / body.volume()));
      // Direct scan of perimeter/area over Ω_t + B_t.
      if (k % 10 == 0) {
        const double inrad = geometry::inradius(body).radius;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 2000; ++i) {
          const double t = inrad * i / 2000.0;
          const auto m = geometry::inner_parallel_measures(body, t);
          best = std::min(best, (m.surface_area + 2 * kPi * t) / (m.volume + t * m.surface_area + kPi * t * t));
        }
        CHECK(c.h <= best * (1.0 + 1e-12));
        CHECK(c.h == Approx(best).epsilon(1e-5));
      }
    }
  }

  TEST_CASE("only polygons are accepted") {
    CHECK_THROWS_AS(cheeger_2d(geometry::box(make_vec({0, 0, 0}), make_vec({1, 1, 1}))), Error);
  }

  TEST_CASE("reformulation ratio") {
    CHECK(cheeger_reformulation_ratio(geometry::ball_polytope(2, 720)) == Approx(1.0).epsilon(5e-3));
    CHECK(cheeger_reformulation_ratio(unit_square()) == Approx(4.0 / (2.0 + std::sqrt(kPi))).epsilon(1e-12));
    CHECK(cheeger_reformulation_ratio(unit_square()) == Approx(1.0603).epsilon(1e-4));
    const auto thin = geometry::scale(geometry::thin_simplex(2, 1e3), 1e-3);
    CHECK(cheeger_reformulation_ratio(thin) > 1.8);
    CHECK(cheeger_reformulation_ratio(thin) < 2.0);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) CHECK(cheeger_reformulation_ratio(testing::random_polytope(2, rng)) <= 2.0);
  }

  TEST_CASE("thin triangles approach 2") {
    double prev = 0.0;
    for (double eta : {1e2, 1e3, 1e4}) {
      const double r = cheeger_reformulation_ratio(geometry::thin_simplex(2, eta));
      CHECK(r > prev);
      prev = r;
    }
  }
}

TEST_SUITE("intersection domain") {
  TEST_CASE("interval pair matches closed forms") {
    for (double N : {50.0, 100.0, 200.0}) {
      const auto c = theorem2_domain(interval(-1, 1), interval(-0.5, 0.5), N);
      const auto d = half_interval_domain(N);
      CHECK(c.lambda == Approx(2.0).epsilon(1e-14));
      CHECK(c.volume == Approx(d.volume).epsilon(1e-12));
      CHECK(c.surface_area == Approx(d.perimeter).epsilon(1e-12));
      CHECK(c.volume_integral == Approx(d.volume_integral).epsilon(1e-12));
      CHECK(c.boundary_integral == Approx(d.boundary_integral).epsilon(1e-12));
      CHECK(c.limit == Approx(0.5).epsilon(1e-15));
      CHECK(c.ratio == Approx(0.5).epsilon(0.03));
      CHECK(c.upper_identity);
      CHECK(c.lower_identity);
    }
  }

  TEST_CASE("identical intervals") {
    const double N = 100.0;
    const auto c = theorem2_domain(interval(-1, 1), interval(-1, 1), N);
    CHECK(c.lambda == Approx(1.0).epsilon(1e-14));
    CHECK(c.volume == Approx(2 * N * N * N + 2 * N - 1).epsilon(1e-12));
    CHECK(c.volume_integral == Approx(N * N - 2 * N / 3).epsilon(1e-12));
    CHECK(c.boundary_integral == Approx(N * N * std::sqrt(1 + std::pow(N, -4)) + 2 * N - 2).epsilon(1e-12));
    CHECK(c.ratio == Approx(1.0).epsilon(0.03));
    CHECK(c.upper_identity);
    CHECK(c.lower_identity);
  }

  TEST_CASE("ratio deficit decays at least like N^-1/2") {
    std::vector<double> Ns = {50, 100, 200}, deficits;
    for (double N : Ns) {
      const auto c = theorem2_domain(interval(-1, 1), interval(-0.5, 0.5), N);
      deficits.push_back(c.ratio - c.limit);
    }
    CHECK(loglog_slope(Ns, deficits) <= -0.5);
  }

  TEST_CASE("volume grows like N^3 |Ω₁|") {
    const std::vector<double> Ns = {50, 100, 200};
    const auto fit = fit_theorem2_volume(interval(-1, 1), interval(-0.5, 0.5), Ns);
    CHECK(fit.leading == Approx(2.0).epsilon(0.02));
    const auto sq = geometry::box(make_vec({-1, -1}), make_vec({1, 1}));
    const auto half = geometry::box(make_vec({-0.5, -0.5}), make_vec({0.5, 0.5}));
    CHECK(fit_theorem2_volume(sq, half, Ns).leading == Approx(4.0).epsilon(0.02));
  }

  TEST_CASE("square pair matches closed forms") {
    const double N = 50.0;
    const auto sq = geometry::box(make_vec({-1, -1}), make_vec({1, 1}));
    const auto half = geometry::box(make_vec({-0.5, -0.5}), make_vec({0.5, 0.5}));
    const auto c = theorem2_domain(sq, half, N);
    // Cross-section 4 below y = -N², (1 - y/N²)² above.
    const double vol = 4.0 * (N * N * N - N * N) + N * N / 3.0 * (8.0 - std::pow(1.0 - 1.0 / N, 3));
    CHECK(c.volume == Approx(vol).epsilon(1e-10));
    CHECK(c.volume_integral == Approx(N * N / 2 - 2 * N / 3 + 0.25).epsilon(1e-10));
    CHECK(c.limit == Approx(0.5).epsilon(1e-14));
    CHECK(c.ratio == Approx(0.5).epsilon(0.05));
    CHECK(c.upper_identity);
    CHECK(c.lower_identity);
  }

  TEST_CASE("random polygon pairs keep the region identities") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
      const auto outer = testing::random_polytope(2, rng);
      // Shrink about an interior point moved to the origin.
      const Vec c = outer.centroid();
      std::vector<Vec> o, i;
      for (const auto& v : outer.vertices()) {
        o.push_back(v - c);
        i.push_back(0.6 * (v - c));
      }
      const auto c1 = geometry::ConvexBody::from_points(o);
      const auto c2 = geometry::ConvexBody::from_points(i);
      const auto t = theorem2_domain(c1, c2, 100.0);
      CHECK(t.lambda == Approx(1.0 / 0.6).epsilon(1e-9));
      CHECK(t.upper_identity);
      CHECK(t.lower_identity);
      CHECK(t.limit == Approx(0.6).epsilon(1e-12));
      CHECK(t.ratio == Approx(t.limit).epsilon(0.05));
    }
  }

  TEST_CASE("errors") {
    auto code = [](auto&& fn) {
      try {
        fn();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::InvalidArgument;
    };
    CHECK(code([] { theorem2_domain(interval(-0.5, 0.5), interval(-1, 1), 100.0); }) == ErrorCode::NestingViolated);
    CHECK(code([] { theorem2_domain(interval(-1, 1), interval(0.1, 0.5), 100.0); }) == ErrorCode::OriginNotInterior);
    const auto cube = geometry::box(make_vec({-1, -1, -1}), make_vec({1, 1, 1}));
    CHECK(code([&] { theorem2_domain(cube, cube, 100.0); }) == ErrorCode::UnsupportedDimension);
  }
}

TEST_SUITE("prism extension") {
  TEST_CASE("constant function has unit means") {
    for (double z : {0.5, 10.0, 1000.0}) {
      const auto r = prism_extension(unit_square(), hh::TestFunction::constant(1.0), z);
      CHECK(r.vol_mean == Approx(1.0).epsilon(1e-13));
      CHECK(r.bdry_mean == Approx(1.0).epsilon(1e-13));
      CHECK(r.lhs == Approx(1.0).epsilon(1e-13));
    }
  }

  TEST_CASE("tent on the square: exact boundary-mean error") {
    // f = max(x, 1 - x): ∫f = 3/4, ∫_∂f = 7/2, so the prism boundary mean
    // minus the base boundary mean is -1 / (4 (2 + 4z)).
    const auto f = hh::TestFunction::convex_piecewise({{make_vec({1, 0}), 0.0}, {make_vec({-1, 0}), 1.0}});
    std::vector<double> zs = {10, 100, 1000}, errs;
    for (double z : zs) {
      const auto r = prism_extension(unit_square(), f, z);
      CHECK(r.param("volume_mean_defect") <= 1e-12);
      CHECK(r.param("boundary_mean_error") == Approx(-0.25 / (2 + 4 * z)).epsilon(1e-9));
      CHECK(r.param("base_ratio") == Approx(0.75 / 0.875).epsilon(1e-10));
      errs.push_back(r.param("boundary_mean_error"));
    }
    CHECK(loglog_slope(zs, errs) == Approx(-1.0).epsilon(0.1));
    const auto far = prism_extension(unit_square(), f, 1000.0);
    CHECK(far.lhs >= far.param("base_ratio") - 1e-2);
  }

  TEST_CASE("linear f has no boundary-mean error on the square") {
    const auto f = hh::TestFunction::affine(make_vec({1, 0}), 0.0);
    for (double z : {10.0, 100.0}) CHECK(std::abs(prism_extension(unit_square(), f, z).param("boundary_mean_error")) < 1e-12);
  }

  TEST_CASE("interval base") {
    // f = x + 1 on [0, 2]: ∫f = 4, f(0) + f(2) = 4.
    const auto f = hh::TestFunction::affine(make_vec({1}), 1.0);
    const double z = 3.0;
    const auto r = prism_extension(interval(0, 2), f, z);
    CHECK(r.vol_mean == Approx(2.0).epsilon(1e-13));
    CHECK(r.bdry_mean == Approx((8.0 + 4.0 * z) / (4.0 + 2.0 * z)).epsilon(1e-13));
    CHECK(r.param("base_ratio") == Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("prism ratios on random polygons") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 5; ++k) {
      const auto body = testing::random_polytope(2, rng);
      const auto f = hh::TestFunction::affine(make_vec({0.3, -0.2}), 5.0);
      const auto r = prism_extension(body, f, 100.0);
      CHECK(r.param("volume_mean_defect") <= 1e-12);
      CHECK(r.holds());
    }
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(prism_extension(unit_square(), hh::TestFunction::constant(1.0), 0.0), Error);
    const auto neg = hh::TestFunction::affine(make_vec({1, 0}), -0.5);
    CHECK_THROWS_AS(prism_extension(unit_square(), neg, 1.0), Error);
  }
}

TEST_CASE("loglog slope") {
  const std::vector<double> x = {1, 2, 4, 8}, y = {3, 0.75, 0.1875, 0.046875};
  CHECK(loglog_slope(x, y) == Approx(-2.0).epsilon(1e-12));
  const std::vector<double> one = {1};
  CHECK_THROWS_AS(loglog_slope(one, one), Error);
}
