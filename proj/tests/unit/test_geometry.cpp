#include <doctest.h>

#include "hhv/geometry/body_json.hpp"
#include "hhv/geometry/convex_body.hpp"
#include "hhv/geometry/functionals.hpp"
#include "hhv/geometry/quermass.hpp"
#include "hhv/geometry/shapes.hpp"
#include "support/random_bodies.hpp"

#include "geometry/hull.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hhv;
using namespace hhv::geometry;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

ConvexBody unit_square() { return box(make_vec({0, 0}), make_vec({1, 1})); }
ConvexBody unit_cube() { return box(make_vec({0, 0, 0}), make_vec({1, 1, 1})); }

double circumradius(const ConvexBody& b) {
  double r = 0.0;
  for (const auto& v : b.vertices()) r = std::max(r, (v - b.centroid()).norm());
  return r;
}

}  // namespace

TEST_SUITE("convex body") {
  TEST_CASE("volume and surface of basic shapes") {
    CHECK(unit_square().volume() == Approx(1.0).epsilon(1e-14));
    CHECK(unit_square().surface_area() == Approx(4.0).epsilon(1e-14));
    CHECK(unit_cube().volume() == Approx(1.0).epsilon(1e-14));
    CHECK(unit_cube().surface_area() == Approx(6.0).epsilon(1e-14));
    const auto disk = ball_polytope(2, 720);
    CHECK(std::abs(disk.volume() - kPi) < 1e-4);
    // Cayley-Menger determinant (tests/oracles/closed_forms.py).
    const auto tet = regular_simplex(3, 1.0);
    CHECK(tet.volume() == Approx(0.11785113019775792).epsilon(1e-12));
    CHECK(tet.surface_area() == Approx(std::sqrt(3.0)).epsilon(1e-12));
    const auto tess = box(make_vec({0, 0, 0, 0}), make_vec({1, 2, 1, 1}));
    CHECK(tess.volume() == Approx(2.0).epsilon(1e-12));
    CHECK(tess.surface_area() == Approx(2 * (2 + 1 + 2 + 2)).epsilon(1e-12));
  }

  TEST_CASE("hull of interior points keeps only extreme points") {
    std::vector<Vec> pts{make_vec({0, 0}), make_vec({1, 0}), make_vec({1, 1}), make_vec({0, 1}),
                         make_vec({0.5, 0.5}), make_vec({0.5, 0.0})};
    const auto b = ConvexBody::from_points(pts);
    CHECK(b.vertices().size() == 4);
    CHECK(b.facets().size() == 4);
  }

  TEST_CASE("degenerate input is rejected") {
    std::vector<Vec> line{make_vec({0, 0}), make_vec({1, 1}), make_vec({2, 2})};
    CHECK_THROWS_AS(ConvexBody::from_points(line), Error);
    std::vector<Vec> flat{make_vec({0, 0, 0}), make_vec({1, 0, 0}), make_vec({0, 1, 0}), make_vec({1, 1, 0})};
    try {
      ConvexBody::from_points(flat);
      FAIL("expected DegenerateBody");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateBody);
    }
  }

  TEST_CASE("facet invariants on random polytopes") {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 4; ++n)
      for (int trial = 0; trial < 20; ++trial) {
        const auto b = testing::random_polytope(n, rng);
        for (const auto& f : b.facets()) {
          CHECK(std::abs(f.normal.norm() - 1.0) < 1e-12);
          for (const auto& v : b.vertices()) CHECK(f.normal.dot(v) <= f.offset + 1e-9);
        }
        CHECK(b.volume() > 0.0);
      }
  }

  TEST_CASE("3-D incremental hull agrees with brute force") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const auto b = testing::random_polytope(3, rng);
      std::vector<Vec> pts(b.vertices().begin(), b.vertices().end());
      const auto brute = ConvexBody::from_points(pts);
      const auto hb = detail::hull_brute_force(pts, b.tolerance());
      CHECK(hb.facets.size() == b.facets().size());
      CHECK(brute.volume() == Approx(b.volume()).epsilon(1e-12));
    }
  }

  TEST_CASE("halfspace intersection") {
    std::vector<Halfspace> hs{{make_vec({1, 1}), 1.0}};
    const auto tri = ConvexBody::from_halfspaces(hs, unit_square());
    CHECK(tri.volume() == Approx(0.5).epsilon(1e-12));
    std::vector<Halfspace> hs3{{make_vec({1, 1, 1}), 1.0}};
    const auto corner = ConvexBody::from_halfspaces(hs3, unit_cube());
    CHECK(corner.volume() == Approx(1.0 / 6.0).epsilon(1e-12));
  }

  TEST_CASE("edges of the cube") {
    const auto edges = edges_3d(unit_cube());
    CHECK(edges.size() == 12);
    for (const auto& e : edges) {
      CHECK(e.length == Approx(1.0));
      CHECK(e.exterior_angle == Approx(kPi / 2));
    }
  }
}

TEST_SUITE("functionals") {
  TEST_CASE("inradius") {
    const auto sq = inradius(unit_square());
    CHECK(sq.radius == Approx(0.5).epsilon(1e-12));
    CHECK(sq.center[0] == Approx(0.5));
    CHECK(sq.center[1] == Approx(0.5));
    for (int n = 1; n <= 4; ++n)
      CHECK(inradius(regular_simplex(n, 1.0)).radius == Approx(1.0 / std::sqrt(2.0 * n * (n + 1))).epsilon(1e-12));
  }

  TEST_CASE("width") {
    CHECK(width(unit_square()).value() == Approx(1.0).epsilon(1e-12));
    CHECK(width(box(make_vec({0, 0}), make_vec({2, 1}))).value() == Approx(1.0).epsilon(1e-12));
    const auto tri = width(regular_simplex(2, 1.0));
    CHECK(tri.exact);
    CHECK(tri.value() == Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
    const auto cube = width(unit_cube());
    CHECK(cube.value() == Approx(1.0).epsilon(1e-12));
    // Regular tetrahedron: attained between opposite edges, below the facet height.
    const auto tet = width(regular_simplex(3, 1.0));
    CHECK(tet.exact);
    CHECK(tet.value() == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    const auto tess = width(box(make_vec({0, 0, 0, 0}), make_vec({1, 2, 3, 4})));
    CHECK_FALSE(tess.exact);
    CHECK(tess.lower <= 1.0 + 1e-12);
    CHECK(tess.upper == Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("equilateral triangle width matches a dense direction scan") {
    const auto tri = regular_simplex(2, 1.0);
    double best = 1e300;
    const int m = 1'000'000;
    for (int k = 0; k < m; ++k) {
      const double a = kPi * k / m;
      best = std::min(best, directional_width(tri, make_vec({std::cos(a), std::sin(a)})));
    }
    CHECK(width(tri).value() <= best + 1e-15);
    CHECK(best - width(tri).value() < 1e-9);
  }

  TEST_CASE("width bracket is consistent with direction sampling in 3-D and 4-D") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int n = 3; n <= 4; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        const auto b = testing::random_polytope(n, rng);
        const auto w = width(b);
        CHECK(w.lower <= w.upper + 1e-12);
        CHECK(directional_width(b, w.direction) == Approx(w.upper).epsilon(1e-12));
        for (int k = 0; k < 2000; ++k) {
          Vec d(n);
          for (int i = 0; i < n; ++i) d[i] = g(rng);
          CHECK(directional_width(b, d.normalized()) >= w.lower - 1e-12);
        }
      }
  }

  TEST_CASE("steinhagen multiplier") {
    CHECK(steinhagen_bound(2) == Approx(3.0));
    CHECK(steinhagen_bound(3) == Approx(2.0 * std::sqrt(3.0)));
    CHECK(steinhagen_bound(1) == Approx(2.0));
    const auto tri = regular_simplex(2, 1.0);
    CHECK(width(tri).value() / inradius(tri).radius == Approx(3.0).epsilon(1e-12));
  }

  TEST_CASE("inner parallel body") {
    const auto inner = inner_parallel(unit_square(), 0.25);
    CHECK(inner.provenance() == Provenance::InnerParallel);
    CHECK(inner.volume() == Approx(0.25).epsilon(1e-12));
    CHECK(inner.lower()[0] == Approx(0.25));
    CHECK(inner.upper()[1] == Approx(0.75));
    // Tangential body: Larson's bound holds with equality.
    CHECK(inner.surface_area() == Approx(4.0 * (1 - 0.25 / 0.5)).epsilon(1e-12));
    CHECK(inner_parallel(unit_square(), 0.0).volume() == Approx(1.0));
    try {
      inner_parallel(unit_square(), 0.5);
      FAIL("expected EmptyInnerBody");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyInnerBody);
    }
    const auto m = inner_parallel_measures(unit_square(), 0.7);
    CHECK(m.volume == 0.0);
    const auto c = inner_parallel(unit_cube(), 0.1);
    CHECK(c.volume() == Approx(0.8 * 0.8 * 0.8).epsilon(1e-12));
  }

  TEST_CASE("scale") {
    CHECK(scale(unit_square(), 2.0).volume() == Approx(4.0));
    CHECK(scale(unit_cube(), 3.0).surface_area() == Approx(54.0));
    CHECK(scale(unit_square(), 1.0).volume() == Approx(1.0));
    const auto thin = thin_simplex(2, 20.0);
    const auto big = scale(thin, 4.0);
    CHECK(big.surface_area() / big.volume() == Approx(0.5).epsilon(1e-9));
  }

  TEST_CASE("containment scale") {
    const auto outer = box(make_vec({-1, -1}), make_vec({1, 1}));
    const auto inner = box(make_vec({-0.5, -0.5}), make_vec({0.5, 0.5}));
    CHECK(containment_scale(outer, inner) == Approx(2.0));
    const auto off = box(make_vec({0.1, 0.1}), make_vec({1, 1}));
    CHECK_THROWS_AS(containment_scale(outer, off), Error);
  }
}

TEST_SUITE("shapes") {
  TEST_CASE("regular simplex") {
    for (int n = 1; n <= 4; ++n) {
      const auto s = regular_simplex(n, 1.0);
      const auto v = s.vertices();
      REQUIRE(v.size() == static_cast<std::size_t>(n + 1));
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) CHECK(std::abs((v[i] - v[j]).norm() - 1.0) < 1e-9);
      CHECK(circumradius(s) / inradius(s).radius == Approx(n).epsilon(1e-9));
    }
    CHECK(circumradius(regular_simplex(3, 1.0)) == Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-12));
  }

  TEST_CASE("thin simplex apex matches the closed form") {
    // h = (rho^2 + 1)/(rho^2 - 1), rho = eta r_{n-1} (tests/oracles/closed_forms.py).
    CHECK(thin_simplex_apex(2, 20.0) == Approx(1.0202020202020202).epsilon(1e-10));
    CHECK(thin_simplex_apex(2, 1e4) == Approx(1.0000000800000032).epsilon(1e-10));
    CHECK(thin_simplex_apex(3, 50.0) == Approx(1.0096463022508039).epsilon(1e-10));
    CHECK(thin_simplex_apex(3, 1e4) == Approx(1.0000002400000288).epsilon(1e-10));
  }

  TEST_CASE("thin simplex invariants") {
    const auto t = thin_simplex(2, 20.0);
    CHECK(t.vertices().size() == 3);
    CHECK(inradius(t).radius == Approx(1.0).epsilon(1e-10));
    CHECK(t.surface_area() / t.volume() == Approx(2.0).epsilon(1e-8));
    const double r = thin_simplex(3, 100.0).volume() / thin_simplex(3, 50.0).volume();
    CHECK(r >= 3.5);
    CHECK(r <= 4.5);
    const auto q = mixed_volume_vector(thin_simplex(3, 50.0));
    const auto t3 = thin_simplex(3, 50.0);
    CHECK(3 * q.w[1] == Approx(t3.surface_area()).epsilon(1e-12));
    CHECK(q.w[0] == Approx(t3.surface_area() / 3).epsilon(1e-8));
    try {
      thin_simplex(2, 1.5);
      FAIL("expected InfeasibleSimplex");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InfeasibleSimplex);
    }
  }

  TEST_CASE("apex height tends to 1") {
    double prev = 1e300;
    for (double eta : {10.0, 100.0, 1000.0}) {
      const double h = thin_simplex_apex(3, eta);
      CHECK(h > 1.0);
      CHECK(h < prev);
      prev = h;
    }
    CHECK(prev - 1.0 < 1e-4);
  }
}

TEST_SUITE("quermass") {
  TEST_CASE("planar and cube vectors are exact") {
    const auto q = mixed_volume_vector(unit_square());
    REQUIRE(q.w.size() == 3);
    CHECK(q.w[0] == Approx(1.0));
    CHECK(q.w[1] == Approx(2.0));
    CHECK(q.w[2] == Approx(kPi));
    const auto c = mixed_volume_vector(unit_cube());
    CHECK(c.w[2] == Approx(kPi).epsilon(1e-12));
    CHECK(c.w[3] == Approx(4 * kPi / 3));
  }

  TEST_CASE("Minkowski ball measures") {
    const auto m = minkowski_ball_measures(unit_square(), 1.0);
    CHECK(m.volume == Approx(5.0 + kPi));
    CHECK(m.surface_area == Approx(4.0 + 2 * kPi));
    const auto z = minkowski_ball_measures(unit_cube(), 0.0);
    CHECK(z.volume == Approx(1.0));
    CHECK(z.surface_area == Approx(6.0));
    const auto h = minkowski_ball_measures(unit_cube(), 0.5);
    CHECK(h.volume == Approx(1 + 3 + 3 * kPi / 4 + kPi / 6).epsilon(1e-12));
  }

  TEST_CASE("polytopal balls bracket the ball quermass") {
    // Monotonicity of mixed volumes: B_{r_in} <= P <= B_1.
    for (int n : {2, 3}) {
      const auto p = ball_polytope(n, n == 2 ? 720 : 2000);
      const double rin = inradius(p).radius;
      const auto q = mixed_volume_vector(p);
      const double omega = unit_ball_volume(n);
      for (int j = 0; j <= n; ++j) {
        CHECK(q.w[j] <= omega * (1 + 1e-12));
        CHECK(q.w[j] >= omega * std::pow(rin, n - j) * (1 - 1e-12));
      }
    }
  }

  TEST_CASE("distance to body") {
    const auto sq = unit_square();
    CHECK(distance_to_body(sq, make_vec({0.5, 0.5})) == 0.0);
    CHECK(distance_to_body(sq, make_vec({2.0, 0.5})) == Approx(1.0).epsilon(1e-12));
    CHECK(distance_to_body(sq, make_vec({2.0, 2.0})) == Approx(std::sqrt(2.0)).epsilon(1e-12));
    const auto cube = unit_cube();
    CHECK(distance_to_body(cube, make_vec({2.0, 2.0, 0.5})) == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(distance_to_body(cube, make_vec({-1.0, 0.3, 0.7})) == Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("Monte-Carlo parallel volume agrees with the Steiner polynomial") {
    std::mt19937_64 rng(21);
    for (int n : {2, 3})
      for (int trial = 0; trial < 3; ++trial) {
        const auto b = testing::random_polytope(n, rng);
        for (double r : {0.1, 1.0, 10.0}) {
          const auto exact = minkowski_ball_measures(b, r);
          const auto mc = parallel_volume_mc(b, r, 200'000, 1000 * n + 10 * trial);
          CHECK(std::abs(mc.value - exact.volume) <= 3.0 * mc.standard_error + 1e-12);
        }
      }
  }

  TEST_CASE("Monte-Carlo quermass is deterministic in the seed") {
    QuermassOptions opt;
    opt.samples = 20'000;
    opt.seed = 9;
    opt.force_monte_carlo = true;
    const auto a = mixed_volume_vector(unit_cube(), opt);
    const auto b = mixed_volume_vector(unit_cube(), opt);
    CHECK(a.w == b.w);
    CHECK_FALSE(a.exact);
    opt.relative_tolerance = 1e-6;
    try {
      mixed_volume_vector(unit_cube(), opt);
      FAIL("expected PrecisionNotMet");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PrecisionNotMet);
    }
  }
}

TEST_SUITE("body json") {
  TEST_CASE("all body types") {
    using nlohmann::json;
    CHECK(body_from_json(json::parse(R"({"type":"polygon","vertices":[[0,0],[1,0],[0,1]]})")).volume() ==
          Approx(0.5));
    CHECK(body_from_json(json::parse(R"({"type":"simplex","n":3,"side":1})")).volume() ==
          Approx(0.11785113019775792));
    CHECK(body_from_json(json::parse(R"({"type":"box","sides":[2,1]})")).surface_area() == Approx(6.0));
    CHECK(body_from_json(json::parse(R"({"type":"box","n":3,"side":2})")).volume() == Approx(8.0));
    CHECK(body_from_json(json::parse(R"({"type":"thin_simplex","n":2,"eta":20})")).provenance() ==
          Provenance::ThinSimplex);
    CHECK(body_from_json(json::parse(R"({"type":"ball_polygon","segments":720,"radius":2})")).volume() ==
          Approx(4 * kPi).epsilon(1e-4));
    CHECK(body_id(json::parse(R"({"type":"box","sides":[2,1],"id":"rect"})")) == "rect");
    for (const char* bad : {R"({"type":"blob"})", R"({"type":"polygon"})", R"({"type":"simplex"})", R"([1,2])"}) {
      try {
        body_from_json(json::parse(bad));
        FAIL("expected ConfigInvalid");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigInvalid);
      }
    }
  }
}
