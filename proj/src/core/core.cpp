#include "hhv/core.hpp"

#include <cmath>
#include <numbers>

namespace hhv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::DegenerateBody: return "DegenerateBody";
    case ErrorCode::EmptyInnerBody: return "EmptyInnerBody";
    case ErrorCode::PrecisionNotMet: return "PrecisionNotMet";
    case ErrorCode::InfeasibleSimplex: return "InfeasibleSimplex";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::TailBoundTooLarge: return "TailBoundTooLarge";
    case ErrorCode::NonPositiveFunction: return "NonPositiveFunction";
    case ErrorCode::NotSubharmonic: return "NotSubharmonic";
    case ErrorCode::NotConvexFunction: return "NotConvexFunction";
    case ErrorCode::NestingViolated: return "NestingViolated";
    case ErrorCode::BisectionFailed: return "BisectionFailed";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

double unit_ball_volume(int n) {
  switch (n) {
    case 0: return 1.0;
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    case 4: return 0.5 * std::numbers::pi * std::numbers::pi;
    default: break;
  }
  const double half = 0.5 * n;
  return std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace hhv
