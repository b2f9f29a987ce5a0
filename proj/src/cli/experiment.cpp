#include "hhv/cli/experiment.hpp"

#include "hhv/constructions/constructions.hpp"
#include "hhv/geometry/body_json.hpp"
#include "hhv/geometry/functionals.hpp"
#include "hhv/hh/hh.hpp"
#include "hhv/torsion/torsion.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hhv::cli {

using geometry::ConvexBody;
using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

constexpr std::pair<ExperimentKind, std::string_view> kNames[] = {
    {ExperimentKind::Torsion, "torsion"},
    {ExperimentKind::HHConstant, "hh-constant"},
    {ExperimentKind::Verify, "verify"},
    {ExperimentKind::LemmaRatio, "lemma-ratio"},
    {ExperimentKind::Cheeger, "cheeger"},
    {ExperimentKind::ConstructLowerBound, "construct-lower-bound"},
    {ExperimentKind::Prism, "prism"},
    {ExperimentKind::ConvergenceSweep, "sweep"},
};

using Params = std::vector<std::pair<std::string, double>>;

// Default relative slack before value > bound counts as a violation.
double default_slack(const std::string& provenance, double tol) {
  if (provenance == "fd-solver") return 0.02;
  if (provenance == "quadrature") return std::max(1e-8, 100.0 * tol);
  if (provenance == "monte-carlo") return 0.0;
  return 1e-9;
}

struct Context {
  const ExperimentConfig& config;
  ExperimentReport& report;

  double slack(const std::string& provenance) const {
    return config.slack.value_or(default_slack(provenance, config.tol));
  }

  Row& add(std::string experiment, std::string body, Params params, double value, std::optional<double> bound,
           std::string provenance, std::optional<double> stderr_value = {}) {
    Row row;
    row.experiment = std::move(experiment);
    row.body_id = std::move(body);
    row.params = std::move(params);
    const bool finite = std::isfinite(value) && (!bound || std::isfinite(*bound)) &&
                        std::all_of(row.params.begin(), row.params.end(),
                                    [](const auto& p) { return std::isfinite(p.second); });
    if (!finite) {
      row.params.clear();
      row.provenance = "error";
      row.error = "non-finite result";
      report.rows.push_back(std::move(row));
      return report.rows.back();
    }
    row.value = value;
    row.bound = bound;
    row.standard_error = stderr_value;
    if (bound) {
      const double allowed = slack(provenance) * std::max(1.0, std::abs(*bound)) + 3.0 * stderr_value.value_or(0.0);
      row.violation = value - *bound > allowed;
    }
    row.provenance = std::move(provenance);
    report.rows.push_back(std::move(row));
    return report.rows.back();
  }

  void add_error(std::string experiment, std::string body, const std::string& reason) {
    Row row;
    row.experiment = std::move(experiment);
    row.body_id = std::move(body);
    row.provenance = "error";
    row.error = reason;
    report.rows.push_back(std::move(row));
  }
};

const json& body_spec(const ExperimentConfig& c, std::size_t i) {
  if (c.bodies.size() <= i) invalid(fmt::format("{} needs {} body spec(s)", to_string(c.kind), i + 1));
  return c.bodies[i];
}

Params with(Params p, std::initializer_list<std::pair<std::string, double>> more) {
  p.insert(p.end(), more.begin(), more.end());
  return p;
}

void run_torsion(Context& ctx) {
  const auto& spec = body_spec(ctx.config, 0);
  const std::string id = geometry::body_id(spec);
  const ConvexBody body = geometry::body_from_json(spec);
  torsion::TorsionOptions opts;
  opts.tolerance = ctx.config.tol;
  const auto sol = torsion::solve_torsion(body, ctx.config.h, opts);
  const double w = geometry::width(body).value();
  const double sup = sol.sup_norm, dnu = torsion::max_normal_derivative(sol);
  const Params base = {{"h", ctx.config.h}, {"residual", sol.residual_norm}, {"iterations", sol.iterations}};
  // Chain dnu <= sqrt(2 sup) <= w/2 <= 3|Ω|/|∂Ω|, and the strip bound on sup.
  ctx.add("torsion.sup_norm", id, base, sup, w * w / 8.0, "fd-solver");
  ctx.add("torsion.dnu_vs_sup", id, base, dnu, std::sqrt(2.0 * sup), "fd-solver");
  ctx.add("torsion.sqrt_sup_vs_width", id, base, std::sqrt(2.0 * sup), w / 2.0, "fd-solver");
  ctx.add("torsion.width_vs_ratio", id, with(base, {{"width", w}}), w / 2.0,
          hh::theorem1_bound(2) * body.volume() / body.surface_area(), "exact");
}

void run_hh_constant(Context& ctx) {
  const auto& spec = body_spec(ctx.config, 0);
  const std::string id = geometry::body_id(spec);
  const ConvexBody body = geometry::body_from_json(spec);
  torsion::TorsionOptions opts;
  opts.tolerance = ctx.config.tol;
  const auto c = hh::hh_constant(body, ctx.config.h, opts);
  const double lower = hh::theorem2_lower(2);
  Row& row = ctx.add("hh-constant", id,
                     {{"h", ctx.config.h}, {"c", c.c}, {"sup_norm", c.sup_norm}, {"lower", lower}}, c.normalized,
                     hh::theorem1_bound(2), "fd-solver");
  if (row.value && *row.value < lower * (1.0 - ctx.slack("fd-solver"))) row.violation = true;
  ctx.add("hh-constant.theorem3", id, {{"h", ctx.config.h}}, c.c, hh::theorem3_bound(body), "fd-solver");
}

void run_verify(Context& ctx) {
  const auto& spec = body_spec(ctx.config, 0);
  const std::string id = geometry::body_id(spec);
  const ConvexBody body = geometry::body_from_json(spec);
  const auto f = function_from_json(ctx.config.function, body.dimension());
  hh::QuadratureSpec q;
  q.relative_tolerance = ctx.config.tol;
  hh::VerifyOptions opts;
  opts.quadrature = q;
  opts.body_id = id;
  const auto r = hh::verify_inequality(body, f, opts);
  ctx.add("verify", id, r.params, r.lhs, r.bound, "quadrature");
  if (f.convex()) {
    const auto fb = hh::fiber_hh_bound(body, f, q);
    ctx.add("verify.fiber", id, fb.params, fb.lhs, fb.bound, "quadrature");
  }
}

void run_lemma(Context& ctx) {
  const auto& c = ctx.config;
  if (c.bodies.size() >= 2) {
    const auto outer = geometry::body_from_json(c.bodies[0]);
    const auto inner = geometry::body_from_json(c.bodies[1]);
    const auto pair = constructions::certify_nesting(outer, inner);
    const std::string id = geometry::body_id(c.bodies[0]) + "/" + geometry::body_id(c.bodies[1]);
    ctx.add("geometric-ratio", id, {{"n", outer.dimension()}, {"min_slack", pair.min_slack}},
            constructions::geometric_ratio(pair), outer.dimension(), "exact");
    return;
  }
  geometry::QuermassOptions q;
  q.samples = c.samples;
  q.seed = c.seed.value_or(0);
  const auto r = c.t ? constructions::thin_simplex_ratio(c.n, c.eta, *c.t, q)
                     : constructions::thin_simplex_ratio_alpha(c.n, c.eta, c.alpha, q);
  const std::string id = fmt::format("thin_simplex_n{}_eta{}", c.n, c.eta);
  const std::string prov = r.exact ? "exact" : "monte-carlo";
  Row& row = ctx.add("lemma-ratio", id,
                     {{"n", c.n}, {"eta", c.eta}, {"t", r.t}, {"surrogate", r.surrogate}, {"deficit", c.n - r.ratio}},
                     r.ratio, c.n, prov, r.exact ? std::nullopt : std::optional<double>(r.ratio_error));
  // Monte-Carlo quermass vectors (n = 4) are reported, never asserted.
  if (!r.exact) row.violation = false;
  if (r.exact) ctx.add("lemma-ratio.surrogate", id, {{"n", c.n}, {"eta", c.eta}, {"t", r.t}}, r.surrogate, r.ratio, "exact");
}

void run_cheeger(Context& ctx) {
  const auto& spec = body_spec(ctx.config, 0);
  const std::string id = geometry::body_id(spec);
  const ConvexBody body = geometry::body_from_json(spec);
  const auto c = constructions::cheeger_2d(body);
  ctx.add("cheeger", id,
          {{"r", c.r},
           {"area", c.area},
           {"perimeter", c.perimeter},
           {"fixed_point_defect", c.fixed_point_defect},
           {"containment_slack", c.containment_slack}},
          c.h, body.surface_area() / body.volume(), "exact");
  ctx.add("cheeger.reformulation", id, {{"h", c.h}}, body.surface_area() / body.volume() / c.h, 2.0, "exact");
}

void run_construct(Context& ctx) {
  const auto& c = ctx.config;
  const auto outer = geometry::body_from_json(body_spec(c, 0));
  const auto inner = geometry::body_from_json(body_spec(c, 1));
  const std::string id = geometry::body_id(c.bodies[0]) + "/" + geometry::body_id(c.bodies[1]);
  const auto t = constructions::theorem2_domain(outer, inner, c.N);
  const int n = outer.dimension() + 1;
  // y₊ is convex and positive on Ω_N, so its ratio of means obeys the
  // dimension-n constant.
  Row& row = ctx.add("construct-lower-bound", id,
                     {{"N", c.N},
                      {"lambda", t.lambda},
                      {"limit", t.limit},
                      {"deficit", t.limit - t.ratio},
                      {"volume", t.volume},
                      {"surface_area", t.surface_area},
                      {"upper_identity", t.upper_identity ? 1.0 : 0.0},
                      {"lower_identity", t.lower_identity ? 1.0 : 0.0}},
                     t.ratio, hh::theorem1_bound(n), "exact");
  if (!t.upper_identity || !t.lower_identity) row.violation = true;
}

void run_prism(Context& ctx) {
  const auto& spec = body_spec(ctx.config, 0);
  const std::string id = geometry::body_id(spec);
  const ConvexBody body = geometry::body_from_json(spec);
  const auto f = function_from_json(ctx.config.function, body.dimension());
  hh::QuadratureSpec q;
  q.relative_tolerance = ctx.config.tol;
  const auto r = constructions::prism_extension(body, f, ctx.config.z, q);
  Row& row = ctx.add("prism", id, r.params, r.lhs, r.bound, "quadrature");
  if (r.param("volume_mean_defect") > 1e-12 + 10.0 * ctx.config.tol) row.violation = true;
}

void dispatch(Context& ctx) {
  switch (ctx.config.kind) {
    case ExperimentKind::Torsion: return run_torsion(ctx);
    case ExperimentKind::HHConstant: return run_hh_constant(ctx);
    case ExperimentKind::Verify: return run_verify(ctx);
    case ExperimentKind::LemmaRatio: return run_lemma(ctx);
    case ExperimentKind::Cheeger: return run_cheeger(ctx);
    case ExperimentKind::ConstructLowerBound: return run_construct(ctx);
    case ExperimentKind::Prism: return run_prism(ctx);
    case ExperimentKind::ConvergenceSweep: invalid("sweeps run through convergence_sweep");
  }
}

std::string first_body_id(const ExperimentConfig& c) {
  if (c.bodies.empty()) return c.kind == ExperimentKind::LemmaRatio ? fmt::format("thin_simplex_n{}", c.n) : "";
  try {
    return geometry::body_id(c.bodies.front());
  } catch (const std::exception&) {
    return "body";
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string number(const std::optional<double>& v) { return v ? fmt::format("{:.17g}", *v) : std::string(); }

Vec point(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) invalid(fmt::format("function is missing the array \"{}\"", key));
  const auto& a = j.at(key);
  if (a.empty() || a.size() > static_cast<std::size_t>(kMaxDimension)) invalid(fmt::format("\"{}\" has a bad size", key));
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) invalid(fmt::format("\"{}\" must hold numbers", key));
    v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  }
  return v;
}

double scalar(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) invalid(fmt::format("function is missing the number \"{}\"", key));
  return j.at(key).get<double>();
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

ExperimentKind kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  if (name == "convergence-sweep") return ExperimentKind::ConvergenceSweep;
  invalid(fmt::format("unknown experiment \"{}\"", name));
}

void validate(const ExperimentConfig& c) {
  auto need = [](bool ok, const char* what) {
    if (!ok) invalid(what);
  };
  need(c.h > 0.0 && c.h <= 1.0 && std::isfinite(c.h), "h must lie in (0, 1]");
  need(c.tol > 0.0 && c.tol <= 1e-2, "tol must lie in (0, 1e-2]");
  need(c.n >= 2 && c.n <= kMaxDimension, "n must lie in 2..4");
  need(c.eta > 2.0 && std::isfinite(c.eta), "eta must be finite and > 2");
  need(c.alpha > 0.0 && c.alpha < 1.0, "alpha must lie in (0, 1)");
  need(!c.t || (*c.t >= 0.0 && std::isfinite(*c.t)), "t must be finite and >= 0");
  need(c.N > 1.0 && std::isfinite(c.N), "N must be finite and > 1");
  need(c.z > 0.0 && std::isfinite(c.z), "z must be finite and > 0");
  need(c.samples >= 1000, "samples must be at least 1000");
  need(!c.slack || (*c.slack >= 0.0 && std::isfinite(*c.slack)), "slack must be finite and >= 0");
  const auto kind = c.kind == ExperimentKind::ConvergenceSweep ? c.sweep_kind : c.kind;
  switch (kind) {
    case ExperimentKind::LemmaRatio:
      need(c.bodies.empty() || c.bodies.size() == 2, "lemma-ratio takes no bodies or an outer/inner pair");
      if (c.bodies.empty() && c.n == 4) need(c.seed.has_value(), "Monte-Carlo lemma-ratio (n = 4) needs a seed");
      break;
    case ExperimentKind::ConstructLowerBound: need(c.bodies.size() == 2, "construct-lower-bound needs outer and inner bodies"); break;
    case ExperimentKind::ConvergenceSweep: invalid("sweeps cannot be nested");
    default: need(c.bodies.size() == 1, "this experiment needs exactly one body"); break;
  }
  if (c.kind == ExperimentKind::ConvergenceSweep) {
    need(c.sweep_kind != ExperimentKind::Verify && c.sweep_kind != ExperimentKind::Cheeger,
         "sweeps run over torsion, hh-constant, construct-lower-bound, prism or lemma-ratio");
    for (double v : c.values) need(v > 0.0 && std::isfinite(v), "sweep values must be finite and > 0");
  }
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) invalid("config must be a JSON object");
  ExperimentConfig c;
  // Strings name a preset or a JSON file, as on the command line.
  auto resolve = [](const json& b) { return b.is_string() ? body_argument(b.get<std::string>()) : b; };
  try {
    c.kind = kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("body")) c.bodies.push_back(resolve(j.at("body")));
    if (j.contains("bodies"))
      for (const auto& b : j.at("bodies")) c.bodies.push_back(resolve(b));
    if (j.contains("outer")) c.bodies.push_back(resolve(j.at("outer")));
    if (j.contains("inner")) c.bodies.push_back(resolve(j.at("inner")));
    for (const auto& b : c.bodies)
      if (!b.is_object()) invalid("bodies must be JSON objects, presets or file paths");
    if (j.contains("function")) c.function = resolve(j.at("function"));
    c.h = j.value("h", c.h);
    c.tol = j.value("tol", c.tol);
    c.n = j.value("n", c.n);
    c.eta = j.value("eta", c.eta);
    c.alpha = j.value("alpha", c.alpha);
    if (j.contains("t")) c.t = j.at("t").get<double>();
    c.N = j.value("N", c.N);
    c.z = j.value("z", c.z);
    c.samples = j.value("samples", c.samples);
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("slack")) c.slack = j.at("slack").get<double>();
    if (j.contains("experiment")) c.sweep_kind = kind_from_string(j.at("experiment").get<std::string>());
    if (j.contains("values")) c.values = j.at("values").get<std::vector<double>>();
  } catch (const json::exception& e) {
    invalid(fmt::format("malformed config: {}", e.what()));
  }
  validate(c);
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j = {{"kind", to_string(c.kind)}, {"h", c.h},         {"tol", c.tol}, {"n", c.n},
            {"eta", c.eta},              {"alpha", c.alpha}, {"N", c.N},     {"z", c.z},
            {"samples", c.samples}};
  j["bodies"] = c.bodies;
  if (!c.function.is_null()) j["function"] = c.function;
  if (c.t) j["t"] = *c.t;
  if (c.seed) j["seed"] = *c.seed;
  if (c.slack) j["slack"] = *c.slack;
  if (c.kind == ExperimentKind::ConvergenceSweep) {
    j["experiment"] = to_string(c.sweep_kind);
    j["values"] = c.values;
  }
  return j;
}

hh::TestFunction function_from_json(const json& spec, int dimension) {
  if (spec.is_null()) return hh::TestFunction::constant(1.0, dimension);
  if (!spec.is_object() || !spec.contains("type") || !spec.at("type").is_string())
    invalid("function must be an object with a \"type\"");
  const auto type = spec.at("type").get<std::string>();
  auto check_dim = [&](const Vec& v) {
    if (v.size() != dimension) invalid("function dimension does not match the body");
    return v;
  };
  try {
    if (type == "constant") return hh::TestFunction::constant(spec.value("value", 1.0), dimension);
    if (type == "affine") return hh::TestFunction::affine(check_dim(point(spec, "gradient")), spec.value("offset", 0.0));
    if (type == "convex_piecewise") {
      if (!spec.contains("pieces") || !spec.at("pieces").is_array() || spec.at("pieces").empty())
        invalid("convex_piecewise needs a non-empty \"pieces\" array");
      std::vector<std::pair<Vec, double>> pieces;
      for (const auto& p : spec.at("pieces")) pieces.emplace_back(check_dim(point(p, "gradient")), p.value("offset", 0.0));
      return hh::TestFunction::convex_piecewise(std::move(pieces));
    }
    if (dimension != 2) invalid(fmt::format("function type \"{}\" is 2-D only", type));
    if (type == "harmonic_polynomial") {
      std::vector<std::complex<double>> coeffs;
      for (const auto& c : spec.at("coefficients")) {
        const auto pair = c.get<std::vector<double>>();
        if (pair.size() != 2) invalid("coefficients are [re, im] pairs");
        coeffs.emplace_back(pair[0], pair[1]);
      }
      std::complex<double> center;
      if (spec.contains("center")) {
        const Vec c = point(spec, "center");
        center = {c[0], c[1]};
      }
      return hh::TestFunction::harmonic_polynomial(std::move(coeffs), center, spec.value("constant", 0.0));
    }
    if (type == "half_plane_poisson")
      return hh::TestFunction::half_plane_poisson(point(spec, "point"), point(spec, "normal"), scalar(spec, "eps"));
    if (type == "rectangle_poisson")
      return hh::TestFunction::rectangle_poisson(point(spec, "lower"), scalar(spec, "a"), scalar(spec, "b"),
                                                 static_cast<int>(scalar(spec, "side")), scalar(spec, "s"),
                                                 scalar(spec, "eps"));
  } catch (const json::exception& e) {
    invalid(fmt::format("malformed function: {}", e.what()));
  }
  invalid(fmt::format("unknown function type \"{}\"", type));
}

json body_argument(const std::string& text) {
  if (text == "unit-square") return {{"type", "box"}, {"n", 2}, {"side", 1.0}, {"id", text}};
  if (text.rfind("disk-", 0) == 0) {
    std::size_t segments = 0;
    try {
      segments = std::stoul(text.substr(5));
    } catch (const std::exception&) {
      invalid(fmt::format("bad disk preset \"{}\"", text));
    }
    return {{"type", "ball_polygon"}, {"segments", segments}, {"id", text}};
  }
  std::string content = text;
  if (text.empty() || (text.front() != '{' && text.front() != '[')) {
    std::ifstream in(text);
    if (!in) invalid(fmt::format("\"{}\" is neither a preset, inline JSON nor a readable file", text));
    std::stringstream ss;
    ss << in.rdbuf();
    content = ss.str();
  }
  try {
    return json::parse(content);
  } catch (const json::exception& e) {
    invalid(fmt::format("cannot parse \"{}\": {}", text, e.what()));
  }
}

double parse_number(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    std::size_t ua = 0, ub = 0;
    const double num = std::stod(a, &ua), den = std::stod(b, &ub);
    if (ua != a.size() || ub != b.size() || den == 0.0) throw std::invalid_argument(text);
    return num / den;
  } catch (const std::exception&) {
    invalid(fmt::format("\"{}\" is not a number or fraction", text));
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  return out;
}

std::optional<double> Row::margin() const {
  if (!value || !bound) return std::nullopt;
  return *bound - *value;
}

bool ExperimentReport::violated() const {
  return std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.violation; });
}

bool ExperimentReport::has_errors() const {
  return std::any_of(rows.begin(), rows.end(), [](const Row& r) { return !r.error.empty(); });
}

ExperimentReport run(const ExperimentConfig& config) {
  if (config.kind == ExperimentKind::ConvergenceSweep) return convergence_sweep(config);
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = to_json(config);
  Context ctx{config, report};
  try {
    dispatch(ctx);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    ctx.add_error(std::string(to_string(config.kind)), first_body_id(config), e.what());
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ExperimentReport convergence_sweep(const ExperimentConfig& config) {
  if (config.kind != ExperimentKind::ConvergenceSweep) invalid("convergence_sweep needs a sweep config");
  validate(config);
  if (config.values.size() < 3) throw Error(ErrorCode::InsufficientPoints, "a sweep needs at least 3 values");
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = to_json(config);

  // Refinement order: h decreasing, N, z and eta increasing.
  std::vector<double> values = config.values;
  const bool spacing = config.sweep_kind == ExperimentKind::Torsion || config.sweep_kind == ExperimentKind::HHConstant;
  std::sort(values.begin(), values.end(), [&](double a, double b) { return spacing ? a > b : a < b; });

  std::vector<double> tracked;
  bool failed = false;
  for (double v : values) {
    ExperimentConfig sub = config;
    sub.kind = config.sweep_kind;
    switch (sub.kind) {
      case ExperimentKind::Torsion:
      case ExperimentKind::HHConstant: sub.h = v; break;
      case ExperimentKind::ConstructLowerBound: sub.N = v; break;
      case ExperimentKind::Prism: sub.z = v; break;
      case ExperimentKind::LemmaRatio: sub.eta = v; break;
      default: invalid("unsupported sweep experiment");
    }
    const auto r = run(sub);
    report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
    if (r.has_errors() || r.rows.empty()) {
      failed = true;
      continue;
    }
    const Row& primary = r.rows.front();
    switch (sub.kind) {
      case ExperimentKind::Torsion:
      case ExperimentKind::HHConstant: tracked.push_back(*primary.value); break;
      case ExperimentKind::ConstructLowerBound:
      case ExperimentKind::LemmaRatio: {
        const auto it = std::find_if(primary.params.begin(), primary.params.end(),
                                     [](const auto& p) { return p.first == "deficit"; });
        tracked.push_back(it->second);
        break;
      }
      case ExperimentKind::Prism: {
        const auto it = std::find_if(primary.params.begin(), primary.params.end(),
                                     [](const auto& p) { return p.first == "boundary_mean_error"; });
        tracked.push_back(it->second);
        break;
      }
      default: break;
    }
  }

  Context ctx{config, report};
  const std::string experiment = fmt::format("sweep:{}", to_string(config.sweep_kind));
  const std::string body = first_body_id(config);
  if (failed) {
    ctx.add_error(experiment, body, "a sweep point failed; no exponent fitted");
  } else {
    std::vector<double> x, y;
    if (spacing) {
      // Self-convergence: successive differences against the coarser h.
      for (std::size_t i = 0; i + 1 < tracked.size(); ++i) {
        x.push_back(values[i]);
        y.push_back(tracked[i] - tracked[i + 1]);
      }
    } else {
      x = values;
      y = tracked;
    }
    try {
      const double slope = constructions::loglog_slope(x, y);
      report.fitted_exponent = slope;
      ctx.add(experiment, body, {{"points", static_cast<double>(values.size())}}, slope, std::nullopt, "fit");
    } catch (const Error& e) {
      ctx.add_error(experiment, body, e.what());
    }
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
  std::vector<std::string> names;
  for (const auto& row : report.rows)
    for (const auto& [name, _] : row.params)
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);

  out << "experiment,body_id";
  for (const auto& n : names) out << ',' << csv_field(n);
  out << ",value,bound,margin,stderr,provenance\n";
  for (const auto& row : report.rows) {
    out << csv_field(row.experiment) << ',' << csv_field(row.body_id);
    for (const auto& n : names) {
      const auto it = std::find_if(row.params.begin(), row.params.end(), [&](const auto& p) { return p.first == n; });
      out << ',' << (it == row.params.end() ? std::string() : number(it->second));
    }
    const std::string prov = row.error.empty() ? row.provenance : "error: " + row.error;
    out << ',' << number(row.value) << ',' << number(row.bound) << ',' << number(row.margin()) << ','
        << number(row.standard_error) << ',' << csv_field(prov) << '\n';
  }
}

int exit_status(const ExperimentReport& report) {
  if (report.violated()) return 1;
  if (report.has_errors()) return 3;
  return 0;
}

}  // namespace hhv::cli
