#include "hhv/geometry/quermass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace hhv::geometry {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Minimum-norm point of conv(points) (Wolfe 1976).
double min_norm(const std::vector<Vec>& p) {
  const int m = static_cast<int>(p.size());
  double scale = 0.0;
  int start = 0;
  for (int i = 0; i < m; ++i) {
    scale = std::max(scale, p[i].squaredNorm());
    if (p[i].squaredNorm() < p[start].squaredNorm()) start = i;
  }
  const double eps = 1e-12 * scale;
  std::vector<int> s{start};
  std::vector<double> lambda{1.0};
  Vec y = p[start];
  for (int outer = 0; outer < 100 * (m + 1); ++outer) {
    int j = 0;
    double best = p[0].dot(y);
    for (int i = 1; i < m; ++i)
      if (const double v = p[i].dot(y); v < best) best = v, j = i;
    if (y.squaredNorm() - best <= eps) break;
    if (std::find(s.begin(), s.end(), j) != s.end()) break;
    s.push_back(j);
    lambda.push_back(0.0);
    for (int inner = 0; inner < 100; ++inner) {
      // Affine minimiser over the corral: [P^T P 1; 1^T 0] [a; mu] = [0; 1].
      const int k = static_cast<int>(s.size());
      Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 1, k + 1);
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) sys(a, b) = p[s[a]].dot(p[s[b]]);
        sys(a, k) = sys(k, a) = 1.0;
      }
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
      rhs[k] = 1.0;
      const Eigen::VectorXd alpha = sys.fullPivLu().solve(rhs);
      bool positive = true;
      for (int a = 0; a < k; ++a) positive = positive && alpha[a] > 1e-14;
      if (positive) {
        for (int a = 0; a < k; ++a) lambda[a] = alpha[a];
        break;
      }
      double theta = 1.0;
      for (int a = 0; a < k; ++a)
        if (alpha[a] <= 1e-14) theta = std::min(theta, lambda[a] / (lambda[a] - alpha[a]));
      std::vector<int> s2;
      std::vector<double> l2;
      for (int a = 0; a < k; ++a) {
        const double l = theta * alpha[a] + (1.0 - theta) * lambda[a];
        if (l > 1e-14) s2.push_back(s[a]), l2.push_back(l);
      }
      s = std::move(s2);
      lambda = std::move(l2);
      double total = 0.0;
      for (double l : lambda) total += l;
      for (double& l : lambda) l /= total;
    }
    y = Vec::Zero(p[0].size());
    for (std::size_t a = 0; a < s.size(); ++a) y += lambda[a] * p[s[a]];
  }
  return y.norm();
}

// Is d(x, K) <= t?  Cheap facet and vertex bounds settle most points.
bool within(const ConvexBody& body, const Vec& x, double t) {
  const double s = body.max_violation(x);
  if (s <= 0.0) return true;
  if (s > t) return false;
  const double t2 = t * t;
  for (const auto& v : body.vertices())
    if ((v - x).squaredNorm() <= t2) return true;
  return distance_to_body(body, x) <= t;
}

QuermassVector exact_vector(const ConvexBody& body) {
  const int n = body.dimension();
  QuermassVector q;
  q.dimension = n;
  q.exact = true;
  if (n == 1) {
    q.w = {body.volume(), 2.0};
  } else if (n == 2) {
    q.w = {body.volume(), body.surface_area() / 2.0, std::numbers::pi};
  } else {
    double mean_curvature = 0.0;
    for (const auto& e : edges_3d(body)) mean_curvature += 0.5 * e.length * e.exterior_angle;
    q.w = {body.volume(), body.surface_area() / 3.0, mean_curvature / 3.0, 4.0 * std::numbers::pi / 3.0};
  }
  q.standard_error.assign(q.w.size(), 0.0);
  return q;
}

}  // namespace

double distance_to_body(const ConvexBody& body, const Vec& x) {
  if (body.max_violation(x) <= 0.0) return 0.0;
  std::vector<Vec> shifted;
  shifted.reserve(body.vertices().size());
  for (const auto& v : body.vertices()) shifted.push_back(v - x);
  return min_norm(shifted);
}

Estimate parallel_volume_mc(const ConvexBody& body, double t, std::size_t samples, std::uint64_t seed) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  const int n = body.dimension();
  const Vec lo = body.lower().array() - t;
  const Vec hi = body.upper().array() + t;
  const Vec span = hi - lo;
  const double box_volume = span.prod();

  constexpr std::size_t kChunk = 1 << 16;
  std::size_t hits = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec x(n);
  for (std::size_t start = 0, chunk = 0; start < samples; start += kChunk, ++chunk) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(chunk)));
    const std::size_t end = std::min(samples, start + kChunk);
    for (std::size_t i = start; i < end; ++i) {
      for (int k = 0; k < n; ++k) x[k] = lo[k] + span[k] * unit(rng);
      hits += within(body, x, t);
    }
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {box_volume * p, box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

QuermassVector mixed_volume_vector(const ConvexBody& body, const QuermassOptions& options) {
  const int n = body.dimension();
  if (n <= 3 && !options.force_monte_carlo) return exact_vector(body);

  // Steiner fit at n+1 geometrically spaced radii in [0.5 diam, 4 diam].
  Eigen::MatrixXd vand(n + 1, n + 1);
  Eigen::VectorXd vols(n + 1), var(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = 0.5 * body.diameter() * std::pow(8.0, static_cast<double>(k) / n);
    const Estimate e = parallel_volume_mc(body, t, options.samples, splitmix64(options.seed + 0x51ed27 * (k + 1)));
    vols[k] = e.value;
    var[k] = e.standard_error * e.standard_error;
    for (int j = 0; j <= n; ++j) vand(k, j) = binomial(n, j) * std::pow(t, j);
  }
  const Eigen::MatrixXd inv = vand.fullPivLu().inverse();
  const Eigen::VectorXd w = inv * vols;
  QuermassVector q;
  q.dimension = n;
  q.exact = false;
  q.covariance = inv * var.asDiagonal() * inv.transpose();
  for (int j = 0; j <= n; ++j) {
    q.w.push_back(w[j]);
    q.standard_error.push_back(std::sqrt(q.covariance(j, j)));
    if (q.standard_error.back() > options.relative_tolerance * std::abs(w[j]))
      throw Error(ErrorCode::PrecisionNotMet, "Monte-Carlo standard error exceeds the requested tolerance");
  }
  return q;
}

QuermassVector mixed_volume_vector(const ConvexBody& body, std::size_t mc_samples, std::uint64_t seed) {
  QuermassOptions options;
  options.samples = mc_samples;
  options.seed = seed;
  return mixed_volume_vector(body, options);
}

MinkowskiMeasures minkowski_ball_measures(const QuermassVector& q, double r) {
  if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be nonnegative");
  const int n = q.dimension;
  Eigen::VectorXd gv = Eigen::VectorXd::Zero(n + 1), ga = Eigen::VectorXd::Zero(n + 1);
  for (int j = 0; j <= n; ++j) gv[j] = binomial(n, j) * std::pow(r, j);
  for (int j = 0; j < n; ++j) ga[j + 1] = n * binomial(n - 1, j) * std::pow(r, j);
  const Eigen::Map<const Eigen::VectorXd> w(q.w.data(), n + 1);
  MinkowskiMeasures out;
  out.volume = gv.dot(w);
  out.surface_area = ga.dot(w);
  if (q.covariance.size() > 0) {
    out.volume_error = std::sqrt(std::max(0.0, gv.dot(q.covariance * gv)));
    out.surface_error = std::sqrt(std::max(0.0, ga.dot(q.covariance * ga)));
  }
  return out;
}

MinkowskiMeasures minkowski_ball_measures(const ConvexBody& body, double r, const QuermassOptions& options) {
  return minkowski_ball_measures(mixed_volume_vector(body, options), r);
}

}  // namespace hhv::geometry
