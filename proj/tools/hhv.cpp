#include "hhv/cli/experiment.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace hhv;
using namespace hhv::cli;

namespace {

struct Options {
  std::string body, outer, inner, function;
  std::string h = "1/128";
  std::string eta = "1e4";
  std::string t;
  std::string N = "100";
  std::string z = "100";
  std::string values;
  std::string experiment;
  std::string config;
  int n = 2;
  double alpha = 0.5;
  std::size_t samples = 1'000'000;
};

void add_body(CLI::App* cmd, Options& o, bool required = true) {
  cmd->add_option("--body", o.body, "preset (unit-square, disk-720), inline JSON or JSON file")->required(required);
}

void add_pair(CLI::App* cmd, Options& o, bool required) {
  cmd->add_option("--outer", o.outer, "outer body Ω₁")->required(required);
  cmd->add_option("--inner", o.inner, "inner body Ω₂")->required(required);
}

ExperimentConfig build(const std::string& name, const Options& o) {
  ExperimentConfig c;
  c.kind = kind_from_string(name);
  if (!o.body.empty()) c.bodies.push_back(body_argument(o.body));
  if (!o.outer.empty()) c.bodies.push_back(body_argument(o.outer));
  if (!o.inner.empty()) c.bodies.push_back(body_argument(o.inner));
  if (!o.function.empty()) c.function = body_argument(o.function);
  c.h = parse_number(o.h);
  c.eta = parse_number(o.eta);
  if (!o.t.empty() && o.t != "sqrt") c.t = parse_number(o.t);
  c.alpha = o.t == "sqrt" ? 0.5 : o.alpha;
  c.N = parse_number(o.N);
  c.z = parse_number(o.z);
  c.n = o.n;
  c.samples = o.samples;
  if (c.kind == ExperimentKind::ConvergenceSweep) {
    c.sweep_kind = kind_from_string(o.experiment);
    c.values = parse_list(o.values);
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite-Hadamard inequality verification on convex domains"};
  app.require_subcommand(1);
  app.fallthrough();
  // -h is the grid spacing, so help is --help only.
  app.set_help_flag("--help", "Print this help message and exit");

  std::optional<std::uint64_t> seed;
  std::optional<double> slack;
  std::string out = "-";
  std::string tol = "1e-10";
  app.add_option("--seed", seed, "seed for Monte-Carlo experiments");
  app.add_option("--out", out, "CSV output path, - for stdout");
  app.add_option("--tol", tol, "solver and quadrature tolerance");
  app.add_option("--slack", slack, "relative slack before a bound counts as violated");

  Options o;
  auto* torsion = app.add_subcommand("torsion", "torsion function and the gradient/width chain");
  torsion->set_help_flag("--help", "Print this help message and exit");
  add_body(torsion, o);
  torsion->add_option("--h", o.h, "grid spacing");

  auto* hh = app.add_subcommand("hh-constant", "optimal constant c(Ω) |∂Ω| / |Ω| of a polygon");
  hh->set_help_flag("--help", "Print this help message and exit");
  add_body(hh, o);
  hh->add_option("--h", o.h, "grid spacing");

  auto* verify = app.add_subcommand("verify", "ratio of boundary and volume means of a test function");
  verify->set_help_flag("--help", "Print this help message and exit");
  add_body(verify, o);
  verify->add_option("--function", o.function, "test function as inline JSON or JSON file (default f = 1)");

  auto* lemma = app.add_subcommand("lemma-ratio", "thin-simplex ratio, or the ratio of a nested pair");
  lemma->set_help_flag("--help", "Print this help message and exit");
  lemma->add_option("--n", o.n, "dimension");
  lemma->add_option("--eta", o.eta, "thin simplex base side");
  lemma->add_option("--t", o.t, "Minkowski radius, or sqrt for t = sqrt(eta)");
  lemma->add_option("--alpha", o.alpha, "t = eta^alpha when --t is absent");
  lemma->add_option("--samples", o.samples, "Monte-Carlo samples per node (n = 4)");
  add_pair(lemma, o, false);

  auto* cheeger = app.add_subcommand("cheeger", "Cheeger constant of a polygon");
  cheeger->set_help_flag("--help", "Print this help message and exit");
  add_body(cheeger, o);

  auto* construct = app.add_subcommand("construct-lower-bound", "intersection domain Ω_N and the ratio of y₊");
  construct->set_help_flag("--help", "Print this help message and exit");
  add_pair(construct, o, true);
  construct->add_option("--N", o.N, "construction parameter");

  auto* prism = app.add_subcommand("prism", "prism extension Ω × [0, z]");
  prism->set_help_flag("--help", "Print this help message and exit");
  add_body(prism, o);
  prism->add_option("--function", o.function, "test function as inline JSON or JSON file (default f = 1)");
  prism->add_option("--z", o.z, "prism height");

  auto* sweep = app.add_subcommand("sweep", "convergence sweep with a fitted log-log exponent");
  sweep->set_help_flag("--help", "Print this help message and exit");
  sweep->add_option("--experiment", o.experiment, "torsion, hh-constant, construct-lower-bound, prism or lemma-ratio")
      ->required();
  sweep->add_option("--values", o.values, "comma-separated h, N, z or eta values")->required();
  add_body(sweep, o, false);
  add_pair(sweep, o, false);
  sweep->add_option("--function", o.function, "test function for prism sweeps");
  sweep->add_option("--n", o.n, "dimension for lemma-ratio sweeps");
  sweep->add_option("--alpha", o.alpha, "t = eta^alpha for lemma-ratio sweeps");
  sweep->add_option("--h", o.h, "grid spacing for non-h sweeps");
  sweep->add_option("--N", o.N);
  sweep->add_option("--z", o.z);

  auto* batch = app.add_subcommand("run", "run a JSON config (object or array of objects)");
  batch->set_help_flag("--help", "Print this help message and exit");
  batch->add_option("--config", o.config, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  ExperimentReport report;
  try {
    const double tolerance = parse_number(tol);
    auto finish = [&](ExperimentConfig c) {
      c.tol = tolerance;
      if (seed) c.seed = seed;
      if (slack) c.slack = slack;
      return c.kind == ExperimentKind::ConvergenceSweep ? convergence_sweep(c) : run(c);
    };
    if (name == "run") {
      nlohmann::json j = body_argument(o.config);
      if (!j.is_array()) j = nlohmann::json::array({j});
      for (const auto& item : j) {
        auto r = finish(config_from_json(item));
        report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
        report.wall_time += r.wall_time;
      }
    } else {
      report = finish(build(name, o));
    }
  } catch (const Error& e) {
    std::cerr << "hhv: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hhv: unexpected failure: " << e.what() << '\n';
    return 2;
  }

  if (out == "-") {
    write_csv(report, std::cout);
  } else {
    std::ofstream file(out);
    if (!file) {
      std::cerr << "hhv: cannot write " << out << '\n';
      return 2;
    }
    write_csv(report, file);
  }
  std::cerr << fmt::format("hhv: {} rows in {:.2f} s\n", report.rows.size(), report.wall_time);
  return exit_status(report);
}
