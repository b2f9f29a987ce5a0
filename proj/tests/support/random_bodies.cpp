#include "random_bodies.hpp"

#include <vector>

namespace hhv::testing {

geometry::ConvexBody random_polytope(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(n + 2, 24);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> stretch(0.3, 2.0);
  for (;;) {
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    const Mat q = Eigen::HouseholderQR<Mat>(a).householderQ();
    Vec s(n), shift(n);
    for (int i = 0; i < n; ++i) s[i] = stretch(rng), shift[i] = 0.5 * gauss(rng);
    const int m = count(rng);
    std::vector<Vec> pts;
    for (int k = 0; k < m; ++k) {
      Vec g(n);
      for (int i = 0; i < n; ++i) g[i] = gauss(rng);
      pts.push_back(q * (s.asDiagonal() * g.normalized()) + shift);
    }
    try {
      return geometry::ConvexBody::from_points(pts);
    } catch (const Error&) {
    }
  }
}

geometry::ConvexBody random_inner(const geometry::ConvexBody& outer, std::mt19937_64& rng) {
  const int n = outer.dimension();
  const Vec lo = outer.lower(), hi = outer.upper();
  std::uniform_int_distribution<int> count(n + 1, 16);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const int m = count(rng);
    std::vector<Vec> pts;
    while (static_cast<int>(pts.size()) < m) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * u(rng);
      if (outer.contains(x, -outer.tolerance())) pts.push_back(x);
    }
    try {
      return geometry::ConvexBody::from_points(pts);
    } catch (const Error&) {
    }
  }
}

}  // namespace hhv::testing
