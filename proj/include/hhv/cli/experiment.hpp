#pragma once

#include "hhv/core.hpp"
#include "hhv/hh/test_function.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace hhv::cli {

enum class ExperimentKind {
  Torsion,
  HHConstant,
  Verify,
  LemmaRatio,
  Cheeger,
  ConstructLowerBound,
  Prism,
  ConvergenceSweep,
};

std::string_view to_string(ExperimentKind kind);
/// Accepts the subcommand spellings ("hh-constant", "sweep", ...); throws
/// ConfigInvalid otherwise.
ExperimentKind kind_from_string(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Torsion;
  /// Body specs in the body JSON schema.  Pair experiments read
  /// bodies[0] as the outer and bodies[1] as the inner body.
  std::vector<nlohmann::json> bodies;
  nlohmann::json function;  // test function spec; null means f = 1
  double h = 1.0 / 128;
  double tol = 1e-10;
  int n = 2;
  double eta = 1e4;
  double alpha = 0.5;
  std::optional<double> t;  // overrides eta^alpha
  double N = 100.0;
  double z = 100.0;
  std::size_t samples = 1'000'000;
  std::optional<std::uint64_t> seed;
  std::optional<double> slack;  // relative violation slack, per-provenance default otherwise
  ExperimentKind sweep_kind = ExperimentKind::Torsion;
  std::vector<double> values;  // swept parameter values
};

/// Throws ConfigInvalid on out-of-range parameters or missing bodies.
void validate(const ExperimentConfig& config);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);

/// Builds a test function from {"type": "constant" | "affine" |
/// "convex_piecewise" | "harmonic_polynomial" | "half_plane_poisson" |
/// "rectangle_poisson", ...}; null gives the constant 1 in `dimension`.
hh::TestFunction function_from_json(const nlohmann::json& spec, int dimension);

/// Body argument of the command line: a preset ("unit-square", "disk-720"
/// or any "disk-<segments>"), inline JSON, or a path to a JSON file.
nlohmann::json body_argument(const std::string& text);

/// Decimal or fraction ("1/128"); throws ConfigInvalid.
double parse_number(const std::string& text);
/// Comma-separated numbers or fractions.
std::vector<double> parse_list(const std::string& text);

struct Row {
  std::string experiment;
  std::string body_id;
  std::vector<std::pair<std::string, double>> params;
  std::optional<double> value;
  std::optional<double> bound;  // the row asserts value <= bound
  std::optional<double> standard_error;
  std::string provenance;  // exact | series-oracle | fd-solver | quadrature | monte-carlo | fit | error
  std::string error;       // reason, for error rows
  bool violation = false;

  std::optional<double> margin() const;
};

struct ExperimentReport {
  nlohmann::json config;
  std::vector<Row> rows;
  std::optional<double> fitted_exponent;
  double wall_time = 0.0;  // seconds; not part of the CSV

  bool violated() const;
  bool has_errors() const;
};

/// Dispatches one experiment.  Module errors become error rows; invalid
/// configurations throw ConfigInvalid.
ExperimentReport run(const ExperimentConfig& config);

/// Runs config.sweep_kind at each of config.values (h, N, z or eta) and fits
/// the convergence exponent on log-log rows: against the known limit where
/// there is one, by consecutive differences otherwise.  Throws
/// InsufficientPoints below 3 values.
ExperimentReport convergence_sweep(const ExperimentConfig& config);

/// Header: experiment, body_id, parameter names (first-appearance order),
/// value, bound, margin, stderr, provenance.  Numbers use 17 significant
/// digits; absent values are empty cells.
void write_csv(const ExperimentReport& report, std::ostream& out);

/// 0 when every row holds, 1 on a bound violation, 3 when only error rows
/// are present.
int exit_status(const ExperimentReport& report);

}  // namespace hhv::cli
