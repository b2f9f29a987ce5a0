#pragma once

// Shared vocabulary for the hhv toolkit: small fixed-capacity vectors and the
// single exception type every module throws.

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hhv {

/// Largest ambient dimension a ConvexBody may live in.
inline constexpr int kMaxDimension = 4;

/// Dynamic-size vector with inline storage for up to kMaxDimension entries.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDimension, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxDimension, kMaxDimension>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

enum class ErrorCode {
  InvalidArgument,
  UnsupportedDimension,
  DegenerateBody,
  EmptyInnerBody,
  PrecisionNotMet,
  InfeasibleSimplex,
  GridTooCoarse,
  SolverDiverged,
  TailBoundTooLarge,
  NonPositiveFunction,
  NotSubharmonic,
  NotConvexFunction,
  NestingViolated,
  BisectionFailed,
  OriginNotInterior,
  ConfigInvalid,
  InsufficientPoints,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Binomial coefficient as a double.
double binomial(int n, int k);

}  // namespace hhv
