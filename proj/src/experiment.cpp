#include "catq/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "catq/matrix_io.hpp"
#include "catq/observables.hpp"
#include "catq/probability.hpp"

namespace catq {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::ConfigParse, what); }

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) config_error(where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) config_error("unknown key '" + key + "' in " + where);
}

double get_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) config_error(std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

template <typename Int>
Int get_integer(const json& j, const char* key, Int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) config_error(std::string("'") + key + "' must be an integer");
  return j[key].get<Int>();
}

Complex get_complex(const json& j, const char* key, Complex fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j[key];
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    config_error(std::string("'") + key + "' must be a number or [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

const std::map<std::string, ExperimentKind> kKinds = {
    {"reality_sweep", ExperimentKind::reality_sweep},
    {"max_bound", ExperimentKind::max_bound},
    {"oracle_compare", ExperimentKind::oracle_compare},
    {"oscillator", ExperimentKind::oscillator},
    {"continuity", ExperimentKind::continuity},
    {"demo", ExperimentKind::demo},
};

const std::map<std::string, HamiltonianSource> kSources = {
    {"random", HamiltonianSource::random},
    {"file", HamiltonianSource::file},
    {"oscillator", HamiltonianSource::oscillator},
    {"triangular", HamiltonianSource::triangular},
};

std::string source_name(HamiltonianSource source) {
  for (const auto& [name, value] : kSources)
    if (value == source) return name;
  return "unknown";
}

HamiltonianConfig parse_hamiltonian(const json& j) {
  reject_unknown_keys(j,
                      {"source", "dim", "seed", "im_upper", "im_spread", "cond_target", "pinned",
                       "path", "mass", "omega", "hbar", "grid_min", "grid_max", "n_points"},
                      "hamiltonian");
  HamiltonianConfig h;
  if (!j.contains("source") || !j["source"].is_string()) config_error("hamiltonian.source is required");
  const auto it = kSources.find(j["source"].get<std::string>());
  if (it == kSources.end()) config_error("unknown hamiltonian.source '" + j["source"].get<std::string>() + "'");
  h.source = it->second;

  h.random.dim = get_integer<Index>(j, "dim", h.random.dim);
  if (j.contains("seed")) h.random_seed = get_integer<std::uint64_t>(j, "seed", 0);
  h.random.im_upper = get_number(j, "im_upper", 0.5);
  h.random.im_spread = get_number(j, "im_spread", h.random.im_spread);
  h.random.cond_target = get_number(j, "cond_target", h.random.cond_target);
  h.random.pinned = get_integer<Index>(j, "pinned", h.random.pinned);
  if (h.random.dim < 1) config_error("hamiltonian.dim must be positive");
  if (!(h.random.im_spread > 0.0)) config_error("hamiltonian.im_spread must be positive");
  if (!(h.random.cond_target >= 1.0 && h.random.cond_target <= 1e4))
    config_error("hamiltonian.cond_target must lie in [1, 1e4]");

  if (j.contains("path")) {
    if (!j["path"].is_string()) config_error("hamiltonian.path must be a string");
    h.path = j["path"].get<std::string>();
  }
  if (h.source == HamiltonianSource::file && !std::filesystem::exists(h.path))
    config_error("hamiltonian file '" + h.path + "' does not exist");

  OscillatorSpec& osc = h.oscillator;
  osc.mass = get_complex(j, "mass", osc.mass);
  osc.omega = get_complex(j, "omega", osc.omega);
  osc.hbar = get_number(j, "hbar", osc.hbar);
  osc.grid_max = get_number(j, "grid_max", osc.grid_max);
  osc.grid_min = get_number(j, "grid_min", -osc.grid_max);
  osc.n_points = get_integer<Index>(j, "n_points", osc.n_points);
  if (h.source == HamiltonianSource::oscillator) {
    if (osc.grid_min != -osc.grid_max) config_error("oscillator grid must be symmetric about 0");
    if (!(osc.grid_max > 0.0)) config_error("oscillator grid_max must be positive");
    if (!(osc.hbar > 0.0)) config_error("oscillator hbar must be positive");
  }
  return h;
}

SuiteParams parse_params(const json& j) {
  reject_unknown_keys(j, {"n_observables", "n_times", "restarts", "iters", "n_check", "dt", "steps", "q0", "p0"},
                      "params");
  SuiteParams p;
  p.n_observables = get_integer<int>(j, "n_observables", p.n_observables);
  p.n_times = get_integer<int>(j, "n_times", p.n_times);
  p.restarts = get_integer<int>(j, "restarts", p.restarts);
  p.iters = get_integer<int>(j, "iters", p.iters);
  p.n_check = get_integer<Index>(j, "n_check", p.n_check);
  p.dt = get_number(j, "dt", p.dt);
  p.steps = get_integer<int>(j, "steps", p.steps);
  p.q0 = get_number(j, "q0", p.q0);
  p.p0 = get_number(j, "p0", p.p0);
  if (p.n_observables < 1 || p.n_times < 1 || p.restarts < 1 || p.iters < 1 || p.steps < 1 ||
      p.n_check < 1 || !(p.dt > 0.0))
    config_error("params must be positive");
  return p;
}

// ---------------------------------------------------------------------------

class Checks {
 public:
  void at_most(const std::string& name, double value, double tolerance) {
    add(name, value, tolerance, "<=", value <= tolerance);
  }
  void at_least(const std::string& name, double value, double tolerance) {
    add(name, value, tolerance, ">=", value >= tolerance);
  }
  void holds(const std::string& name, bool ok) {
    items_.push_back(json{{"name", name}, {"pass", ok}});
    all_ = all_ && ok;
  }
  bool all() const { return all_; }
  const json& items() const { return items_; }

 private:
  void add(const std::string& name, double value, double tolerance, const char* cmp, bool ok) {
    items_.push_back(json{{"name", name}, {"value", value}, {"tolerance", tolerance}, {"comparison", cmp}, {"pass", ok}});
    all_ = all_ && ok;
  }

  json items_ = json::array();
  bool all_ = true;
};

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::string csv_number(double x) { return format_double(x); }

CMatrix build_hamiltonian(const ExperimentConfig& cfg) {
  const HamiltonianConfig& h = cfg.hamiltonian;
  switch (h.source) {
    case HamiltonianSource::random: {
      RandomSpec spec = h.random;
      spec.seed = h.random_seed.value_or(cfg.seed);
      return random_nonnormal(spec);
    }
    case HamiltonianSource::file: return load_hamiltonian(h.path);
    case HamiltonianSource::oscillator: return oscillator_hamiltonian(h.oscillator);
    case HamiltonianSource::triangular: return triangular_demo().h;
  }
  return {};
}

struct SuiteOutput {
  json results = json::object();
  Checks checks;
  std::string csv;
  std::string report;
  json warnings = json::array();
};

double tol(const ExperimentConfig& cfg, const std::string& name) { return cfg.tolerances.at(name); }

SuiteOutput suite_reality(const ExperimentConfig& cfg) {
  SuiteOutput out;
  const CMatrix h = build_hamiltonian(cfg);
  const Spectrum s = eigendecompose(h);
  const QMetric m = build_q(s);
  RealitySweepOptions options;
  options.t_a = cfg.t_a;
  options.t_b = cfg.t_b;
  options.hbar = cfg.hbar;
  const auto samples = reality_samples(s, m, cfg.params.n_observables, cfg.params.n_times, cfg.seed, options);

  double worst = 0.0;
  std::ostringstream csv;
  csv << "observable,t,value_re,value_im,imag_residual\n";
  for (const auto& r : samples) {
    worst = std::max(worst, r.imag_residual);
    csv << r.observable << ',' << csv_number(r.t) << ',' << csv_number(r.value.real()) << ','
        << csv_number(r.value.imag()) << ',' << csv_number(r.imag_residual) << '\n';
  }
  const DominantSet dom = dominant_set(s.eigenvalues);
  out.results["dim"] = s.dim();
  out.results["bound_b"] = dom.bound;
  out.results["dominant_set_size"] = dom.indices.size();
  out.results["n_samples"] = samples.size();
  out.results["max_imag_residual"] = worst;
  out.checks.at_most("max_imag_residual", worst, tol(cfg, "max_imag_residual"));
  out.csv = csv.str();
  out.report = "reality_sweep: max_imag_residual=" + format_double(worst) + "\n";
  return out;
}

SuiteOutput suite_max_bound(const ExperimentConfig& cfg) {
  SuiteOutput out;
  const CMatrix h = build_hamiltonian(cfg);
  const Spectrum s = eigendecompose(h);
  const QMetric m = build_q(s);
  const MaxPair pair = build_max_pair(s, m, cfg.t_a, cfg.t_b, cfg.hbar);
  const double bound = std::exp(pair.solution.bound_b * (cfg.t_b - cfg.t_a) / cfg.hbar);

  std::ostringstream csv;
  csv << "t,overlap_re,overlap_im,attained,bound\n";
  double worst = 0.0;
  const int n = std::max(cfg.params.n_times, 2);
  for (int k = 0; k < n; ++k) {
    const double t = k + 1 == n ? cfg.t_b : cfg.t_a + (cfg.t_b - cfg.t_a) * k / (n - 1);
    const Complex overlap = transition_amplitude(m, evolve_b(s, m, pair.boundary, t), evolve_a(s, pair.boundary, t));
    worst = std::max(worst, std::abs(std::abs(overlap) - bound) / bound);
    csv << csv_number(t) << ',' << csv_number(overlap.real()) << ',' << csv_number(overlap.imag()) << ','
        << csv_number(std::abs(overlap)) << ',' << csv_number(bound) << '\n';
  }
  out.results["dim"] = s.dim();
  out.results["bound_b"] = pair.solution.bound_b;
  out.results["dominant_set"] = pair.solution.dominant_set;
  out.results["attained"] = pair.solution.attained;
  out.results["bound"] = bound;
  out.results["max_relative_deviation"] = worst;
  out.checks.at_most("saturation", worst, tol(cfg, "saturation"));
  out.csv = csv.str();
  out.report = "max_bound: attained=" + fixed(pair.solution.attained) + " bound=" + fixed(bound) + "\n";
  return out;
}

SuiteOutput suite_oracle(const ExperimentConfig& cfg) {
  SuiteOutput out;
  const CMatrix h = build_hamiltonian(cfg);
  const Spectrum s = eigendecompose(h);
  const QMetric m = build_q(s);
  const DominantSet dom = dominant_set(s.eigenvalues);
  const double analytic = maximal_amplitude(dom, cfg.t_a, cfg.t_b, cfg.hbar);
  const OracleResult oracle =
      oracle_maximize(h, m, cfg.t_a, cfg.t_b, cfg.hbar, cfg.params.restarts, cfg.params.iters, cfg.seed);

  const CVector coeffs = s.inverse_diagonalizer * oracle.best_a;
  double dominant_weight = 0.0;
  for (Index i : dom.indices) dominant_weight += std::norm(coeffs(i));

  const double ratio = oracle.best_value / analytic;
  out.results["dim"] = s.dim();
  out.results["analytic"] = analytic;
  out.results["oracle"] = oracle.best_value;
  out.results["converged"] = oracle.converged;
  out.results["dominant_overlap"] = std::sqrt(dominant_weight);
  out.checks.at_most("oracle_excess", ratio - 1.0, tol(cfg, "oracle_excess"));
  out.checks.at_most("oracle_gap", 1.0 - ratio, tol(cfg, "oracle_gap"));
  out.report = "oracle_compare: oracle=" + fixed(oracle.best_value, 9) + " analytic=" + fixed(analytic, 9) + "\n";
  return out;
}

SuiteOutput suite_oscillator(const ExperimentConfig& cfg) {
  SuiteOutput out;
  const OscillatorSpec& spec = cfg.hamiltonian.oscillator;
  if (!spec.bounded_above())
    out.warnings.push_back("Im omega > 0: Im lambda_n grows with n; the continuum spectrum is not bounded above, "
                           "maximization results reflect the grid truncation only");
  if (!spec.grid_wide_enough()) out.warnings.push_back("grid_max < 6 sqrt(hbar/|m omega|)");

  const CMatrix h = oscillator_hamiltonian(spec);
  const Spectrum s = eigendecompose(h);
  const QMetric m = oscillator_metric(s);
  const OscillatorRelations rel = oscillator_qq_relations(spec, s, m, cfg.params.n_check);
  const DominantSet dom = dominant_set(s.eigenvalues);

  Index ground = 0;
  for (Index i = 1; i < s.dim(); ++i)
    if (s.eigenvalues(i).real() < s.eigenvalues(ground).real()) ground = i;

  std::vector<Index> order(static_cast<std::size_t>(s.dim()));
  for (Index i = 0; i < s.dim(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return s.eigenvalues(a).real() < s.eigenvalues(b).real(); });
  std::ostringstream csv;
  csv << "n,lambda_re,lambda_im,analytic_re,analytic_im\n";
  const Index n_levels = std::min<Index>(2 * cfg.params.n_check, s.dim());
  for (Index n = 0; n < n_levels; ++n) {
    const Complex lambda = s.eigenvalues(order[n]);
    const Complex exact = spec.level(n);
    csv << n << ',' << csv_number(lambda.real()) << ',' << csv_number(lambda.imag()) << ','
        << csv_number(exact.real()) << ',' << csv_number(exact.imag()) << '\n';
  }

  out.results["theta"] = spec.theta();
  out.results["effective_mass"] = complex_json(spec.effective_mass());
  out.results["residual_q"] = rel.residual_q;
  out.results["residual_p"] = rel.residual_p;
  out.results["residual_h"] = rel.residual_h;
  out.results["hermiticity_q"] = rel.hermiticity_q;
  out.results["hermiticity_p"] = rel.hermiticity_p;
  out.results["residual_h_scaled"] = rel.residual_h_scaled;
  out.results["dominant_set"] = dom.indices;
  out.results["ground_index"] = ground;
  for (const char* name : {"residual_q", "residual_p", "residual_h", "hermiticity_q", "hermiticity_p", "residual_h_scaled"})
    out.checks.at_most(name, out.results[name].get<double>(), tol(cfg, name));
  out.checks.holds("dominant_set_is_ground_state", dom.indices.size() == 1 && dom.indices[0] == ground);
  out.csv = csv.str();
  out.report = "oscillator: residual_q=" + format_double(rel.residual_q) + " residual_p=" +
               format_double(rel.residual_p) + " residual_h=" + format_double(rel.residual_h) + "\n";
  return out;
}

double continuity_on(const OscillatorSpec& spec, const SuiteParams& params, double dt, double t0) {
  const CMatrix h = oscillator_hamiltonian(spec);
  const Propagator prop(h, spec.hbar);
  GridWavefunction before = coherent_state(spec.grid_min, spec.spacing(), spec.n_points, params.q0, params.p0,
                                           spec.mass.real(), spec.omega.real(), spec.hbar);
  before.t = t0;
  GridWavefunction after = before;
  after.samples = prop.apply(before.samples, dt);
  after.t = t0 + dt;
  return continuity_residual(before, after);
}

SuiteOutput suite_continuity(const ExperimentConfig& cfg) {
  SuiteOutput out;
  const OscillatorSpec& spec = cfg.hamiltonian.oscillator;
  const double dt = cfg.params.dt;

  const double coarse = continuity_on(spec, cfg.params, dt, cfg.t_a);
  OscillatorSpec fine_spec = spec;
  fine_spec.n_points = 2 * (spec.n_points - 1) + 1;
  const double fine = continuity_on(fine_spec, cfg.params, dt / 2.0, cfg.t_a);

  const CMatrix h = oscillator_hamiltonian(spec);
  const Propagator prop(h, spec.hbar);
  GridWavefunction psi = coherent_state(spec.grid_min, spec.spacing(), spec.n_points, cfg.params.q0,
                                        cfg.params.p0, spec.mass.real(), spec.omega.real(), spec.hbar);
  const double p_start = total_probability(psi);
  double drift = 0.0;
  std::ostringstream csv;
  csv << "step,t,total_probability\n";
  csv << 0 << ',' << csv_number(cfg.t_a) << ',' << csv_number(p_start) << '\n';
  for (int k = 1; k <= cfg.params.steps; ++k) {
    psi.samples = prop.apply(psi.samples, dt);
    const double p = total_probability(psi);
    drift = std::max(drift, std::abs(p - p_start));
    csv << k << ',' << csv_number(cfg.t_a + k * dt) << ',' << csv_number(p) << '\n';
  }

  out.results["dq"] = spec.spacing();
  out.results["dt"] = dt;
  out.results["continuity_residual"] = coarse;
  out.results["continuity_residual_refined"] = fine;
  out.results["refinement_ratio"] = coarse / fine;
  out.results["probability_drift"] = drift;
  out.checks.at_most("continuity_residual", coarse, tol(cfg, "continuity_residual"));
  out.checks.at_least("refinement_ratio", coarse / fine, tol(cfg, "refinement_ratio"));
  out.checks.at_most("probability_drift", drift, tol(cfg, "probability_drift"));
  out.csv = csv.str();
  out.report = "continuity: residual=" + format_double(coarse) + " refined=" + format_double(fine) +
               " drift=" + format_double(drift) + "\n";
  return out;
}

std::string matrix_literal(const CMatrix& m) {
  auto entry = [](Complex z) {
    char buf[64];
    if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real())))
      std::snprintf(buf, sizeof(buf), "%.6g", z.real() == 0.0 ? 0.0 : z.real());
    else
      std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z.real(), z.imag());
    return std::string(buf);
  };
  std::string s = "[";
  for (Index i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (Index j = 0; j < m.cols(); ++j) s += (j ? "," : "") + entry(m(i, j));
    s += "]";
  }
  return s + "]";
}

SuiteOutput suite_demo(const ExperimentConfig& cfg) {
  SuiteOutput out;
  const TriangularDemo demo = triangular_demo();
  const CMatrix h = cfg.hamiltonian.source == HamiltonianSource::triangular ? demo.h : build_hamiltonian(cfg);
  const Spectrum s = eigendecompose(h);
  const QMetric m = build_q(s);
  const HamiltonianSplit split = decompose_h(m, h);
  const double adjoint_error = (q_adjoint(m, h) - h).norm();
  const double h_qa_norm = split.q_antihermitian.norm();

  out.results["eigenvalues"] = json::array();
  for (Index i = 0; i < s.dim(); ++i) out.results["eigenvalues"].push_back(complex_json(s.eigenvalues(i)));
  out.results["q"] = matrix_literal(m.q);
  out.results["h_qa_norm"] = h_qa_norm;
  out.results["q_adjoint_error"] = adjoint_error;
  out.results["q_normality_residual"] = q_normality_residual(m, h);
  if (cfg.hamiltonian.source == HamiltonianSource::triangular) {
    const double q_error = (m.q - demo.expected_q).norm();
    out.results["q_error"] = q_error;
    out.checks.at_most("q_error", q_error, tol(cfg, "q_error"));
    out.checks.at_most("q_adjoint_error", adjoint_error, tol(cfg, "q_adjoint_error"));
    out.checks.at_most("h_qa_norm", h_qa_norm, tol(cfg, "h_qa_norm"));
  } else {
    out.checks.at_most("q_normality_residual", out.results["q_normality_residual"].get<double>(),
                       tol(cfg, "q_normality_residual"));
  }
  out.report = "H = " + matrix_literal(h) + "\nQ = " + matrix_literal(m.q) + "\nh_qa norm " +
               fixed(h_qa_norm, 12) + "\nH^dagQ - H norm " + fixed(adjoint_error, 12) + "\n";
  return out;
}

json metadata_json() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return json{{"tool", "catq"}, {"generated_at", buf}};
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [name, value] : kKinds)
    if (value == kind) return name;
  return "unknown";
}

std::map<std::string, double> default_tolerances(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::reality_sweep: return {{"max_imag_residual", 1e-9}};
    case ExperimentKind::max_bound: return {{"saturation", 1e-10}};
    case ExperimentKind::oracle_compare: return {{"oracle_excess", 1e-9}, {"oracle_gap", 1e-3}};
    case ExperimentKind::oscillator:
      return {{"residual_q", 1e-3},    {"residual_p", 1e-3},    {"residual_h", 1e-3},
              {"hermiticity_q", 1e-3}, {"hermiticity_p", 1e-3}, {"residual_h_scaled", 1e-3}};
    case ExperimentKind::continuity:
      return {{"continuity_residual", 1e-3}, {"refinement_ratio", 3.0}, {"probability_drift", 1e-8}};
    case ExperimentKind::demo:
      return {{"q_error", 1e-12}, {"q_adjoint_error", 1e-12}, {"h_qa_norm", 1e-12}, {"q_normality_residual", 1e-9}};
  }
  return {};
}

ExperimentConfig parse_config(const json& j) {
  reject_unknown_keys(j, {"kind", "hamiltonian", "t_a", "t_b", "hbar", "seed", "tolerances", "output_path", "params"},
                      "config");
  ExperimentConfig cfg;
  if (!j.contains("kind") || !j["kind"].is_string()) config_error("config.kind is required");
  const auto kind = kKinds.find(j["kind"].get<std::string>());
  if (kind == kKinds.end()) config_error("unknown kind '" + j["kind"].get<std::string>() + "'");
  cfg.kind = kind->second;

  if (j.contains("hamiltonian")) {
    cfg.hamiltonian = parse_hamiltonian(j["hamiltonian"]);
  } else if (cfg.kind == ExperimentKind::demo) {
    cfg.hamiltonian.source = HamiltonianSource::triangular;
  } else {
    config_error("config.hamiltonian is required for kind '" + to_string(cfg.kind) + "'");
  }

  cfg.t_a = get_number(j, "t_a", cfg.t_a);
  cfg.t_b = get_number(j, "t_b", cfg.t_b);
  cfg.hbar = get_number(j, "hbar", cfg.hbar);
  cfg.seed = get_integer<std::uint64_t>(j, "seed", cfg.seed);
  if (!(cfg.t_b > cfg.t_a)) config_error("t_b must exceed t_a");
  if (!(cfg.hbar > 0.0)) config_error("hbar must be positive");

  if (j.contains("output_path")) {
    if (!j["output_path"].is_string()) config_error("output_path must be a string");
    cfg.output_path = j["output_path"].get<std::string>();
  }
  if (j.contains("params")) cfg.params = parse_params(j["params"]);

  cfg.tolerances = default_tolerances(cfg.kind);
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) config_error("tolerances must be an object");
    for (const auto& [name, value] : j["tolerances"].items()) {
      if (!cfg.tolerances.count(name))
        config_error("unknown tolerance '" + name + "' for kind '" + to_string(cfg.kind) + "'");
      if (!value.is_number()) config_error("tolerance '" + name + "' must be a number");
      cfg.tolerances[name] = value.get<double>();
    }
  }

  const bool needs_oscillator = cfg.kind == ExperimentKind::oscillator || cfg.kind == ExperimentKind::continuity;
  if (needs_oscillator && cfg.hamiltonian.source != HamiltonianSource::oscillator)
    config_error("kind '" + to_string(cfg.kind) + "' needs hamiltonian.source = oscillator");
  if (cfg.kind == ExperimentKind::continuity) {
    const OscillatorSpec& osc = cfg.hamiltonian.oscillator;
    if (osc.mass.imag() != 0.0 || osc.omega.imag() != 0.0 || !(osc.mass.real() > 0.0))
      config_error("continuity needs a Hermitian oscillator (real positive mass, real omega)");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

void apply_seed_override(ExperimentConfig& cfg) {
  const char* env = std::getenv("CATQ_SEED");
  if (!env || !*env) return;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (*end != '\0') config_error(std::string("CATQ_SEED is not an unsigned integer: '") + env + "'");
  cfg.seed = value;
}

json to_json(const ExperimentConfig& cfg) {
  json h;
  const HamiltonianConfig& hc = cfg.hamiltonian;
  h["source"] = source_name(hc.source);
  switch (hc.source) {
    case HamiltonianSource::random:
      h["dim"] = hc.random.dim;
      h["seed"] = hc.random_seed.value_or(cfg.seed);
      h["im_upper"] = hc.random.im_upper;
      h["im_spread"] = hc.random.im_spread;
      h["cond_target"] = hc.random.cond_target;
      h["pinned"] = hc.random.pinned;
      break;
    case HamiltonianSource::file: h["path"] = hc.path; break;
    case HamiltonianSource::oscillator:
      h["mass"] = complex_json(hc.oscillator.mass);
      h["omega"] = complex_json(hc.oscillator.omega);
      h["hbar"] = hc.oscillator.hbar;
      h["grid_min"] = hc.oscillator.grid_min;
      h["grid_max"] = hc.oscillator.grid_max;
      h["n_points"] = hc.oscillator.n_points;
      break;
    case HamiltonianSource::triangular: break;
  }
  json params{{"n_observables", cfg.params.n_observables}, {"n_times", cfg.params.n_times},
              {"restarts", cfg.params.restarts},           {"iters", cfg.params.iters},
              {"n_check", cfg.params.n_check},             {"dt", cfg.params.dt},
              {"steps", cfg.params.steps},                 {"q0", cfg.params.q0},
              {"p0", cfg.params.p0}};
  json tolerances = json::object();
  for (const auto& [name, value] : cfg.tolerances) tolerances[name] = value;
  return json{{"kind", to_string(cfg.kind)}, {"hamiltonian", h},         {"t_a", cfg.t_a},
              {"t_b", cfg.t_b},              {"hbar", cfg.hbar},          {"seed", cfg.seed},
              {"tolerances", tolerances},    {"output_path", cfg.output_path}, {"params", params}};
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult result;
  json summary;
  summary["config"] = to_json(cfg);
  try {
    SuiteOutput out;
    switch (cfg.kind) {
      case ExperimentKind::reality_sweep: out = suite_reality(cfg); break;
      case ExperimentKind::max_bound: out = suite_max_bound(cfg); break;
      case ExperimentKind::oracle_compare: out = suite_oracle(cfg); break;
      case ExperimentKind::oscillator: out = suite_oscillator(cfg); break;
      case ExperimentKind::continuity: out = suite_continuity(cfg); break;
      case ExperimentKind::demo: out = suite_demo(cfg); break;
    }
    summary["results"] = out.results;
    summary["checks"] = out.checks.items();
    if (!out.warnings.empty()) summary["warnings"] = out.warnings;
    summary["pass"] = out.checks.all();
    result.exit_code = out.checks.all() ? 0 : 1;
    result.csv = std::move(out.csv);
    result.report = std::move(out.report);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigParse || e.kind() == ErrorKind::ParseError) throw;
    summary["error"] = e.what();
    summary["pass"] = false;
    result.exit_code = 1;
    result.report = std::string("numerical failure: ") + e.what() + "\n";
  }
  result.summary = std::move(summary);
  return result;
}

void write_artifacts(const std::string& output_dir, const ExperimentResult& result) {
  if (output_dir.empty()) return;
  const std::filesystem::path dir(output_dir);
  write_file_atomic((dir / "summary.json").string(), result.summary.dump(2) + "\n");
  if (!result.csv.empty()) write_file_atomic((dir / "series.csv").string(), result.csv);
  write_file_atomic((dir / "metadata.json").string(), metadata_json().dump(2) + "\n");
}

ExperimentResult run_verify(Index dim, std::uint64_t seed, double duration) {
  if (dim < 1) config_error("--dim must be positive");
  if (!(duration > 0.0)) config_error("--t must be positive");

  ExperimentResult combined;
  json suites = json::object();
  bool pass = true;
  for (ExperimentKind kind : {ExperimentKind::reality_sweep, ExperimentKind::max_bound, ExperimentKind::oracle_compare}) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.seed = seed;
    cfg.t_a = 0.0;
    cfg.t_b = duration;
    cfg.hamiltonian.source = HamiltonianSource::random;
    cfg.hamiltonian.random.dim = dim;
    cfg.hamiltonian.random.im_upper = 0.5;
    cfg.tolerances = default_tolerances(kind);
    ExperimentResult r = run_experiment(cfg);
    pass = pass && r.exit_code == 0;
    combined.report += r.report;
    r.summary.erase("config");
    suites[to_string(kind)] = std::move(r.summary);
  }
  combined.summary = json{{"command", "verify"}, {"dim", dim}, {"seed", seed}, {"t", duration},
                          {"suites", suites},    {"pass", pass}};
  combined.exit_code = pass ? 0 : 1;
  return combined;
}

}  // namespace catq
