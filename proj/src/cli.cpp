#include "losdof/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "losdof/error.hpp"
#include "losdof/fredholm.hpp"
#include "losdof/montecarlo.hpp"
#include "losdof/output.hpp"
#include "losdof/rng.hpp"

namespace losdof::cli {

namespace fs = std::filesystem;

namespace {

class Context {
 public:
  Context(const RunConfig& config, std::ostream& out, std::ostream& err)
      : config(config),
        meta{config.experiment, config.seed, config_to_json(config)},
        dir(config.out),
        unit(config.bits ? 1.0 / std::numbers::ln2 : 1.0),
        out(out),
        err(err)
  {
    ensure_directory(dir);
    write_text(dir / "effective_config.yaml", emit_config(config));
  }

  void csv(const std::string& name, const CsvTable& table)
  {
    write_csv(dir / name, table, meta);
    csv_files.push_back(name);
    out << "wrote " << (dir / name).string() << "\n";
  }

  void json_file(const std::string& name, json body)
  {
    body["log_unit"] = config.bits ? "bits" : "nats";
    body["warnings"] = warnings;
    body["csv_files"] = csv_files;
    write_json(dir / name, with_metadata(meta, body));
    out << "wrote " << (dir / name).string() << "\n";
  }

  void warn(const std::string& msg)
  {
    warnings.push_back(msg);
    err << "losdof: warning: " << msg << "\n";
  }

  const RunConfig& config;
  RunMetadata meta;
  fs::path dir;
  double unit;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> csv_files;
  std::vector<std::string> warnings;
};

json derived_json(const DerivedParams& d) { return {{"m", d.m}, {"P", d.P}}; }

json estimate_json(const McEstimate& e)
{
  return {{"mean", e.mean}, {"std_error", e.std_error}, {"trials", e.trials}, {"seed", e.seed}};
}

std::string bool_cell(bool v) { return v ? "true" : "false"; }

int run_spectrum(Context& ctx)
{
  const auto& c = ctx.config;
  const auto report = claim_sim_experiment(c.scenario, c.trials, c.seed, c.threshold);
  if (!report.in_regime) ctx.warn("scenario is outside sqrt(A) <= d <= A/lambda");

  const auto& first = report.trials.front();
  CsvTable table({"index", "eig_H", "eig_G"});
  for (std::size_t i = 0; i < first.eig_h.size(); ++i)
    table.add_row({csv_number(std::uint64_t{i + 1}), csv_number(first.eig_h[i]), csv_number(first.eig_g[i])});
  ctx.csv("spectrum.csv", table);

  json trials = json::array();
  for (const auto& t : report.trials)
    trials.push_back({{"seed", t.seed},
                      {"logdet_h", t.logdet_h * ctx.unit},
                      {"logdet_g", t.logdet_g * ctx.unit},
                      {"ratio", t.ratio},
                      {"dof_h", t.dof_h},
                      {"dof_g", t.dof_g}});
  ctx.json_file("spectrum.json", {{"params", params_to_json(c.scenario)},
                                  {"derived", derived_json(report.derived)},
                                  {"in_regime", report.in_regime},
                                  {"threshold", c.threshold},
                                  {"eigenvalue_count", first.eig_h.size()},
                                  {"trials", trials},
                                  {"ratio", estimate_json(report.ratio)}});
  ctx.out << "m = " << report.derived.m << ", dof(H) = " << first.dof_h << ", dof(G) = " << first.dof_g
          << ", logdet ratio = " << report.ratio.mean << "\n";
  return exit_ok;
}

int run_fredholm(Context& ctx)
{
  const auto& c = ctx.config;
  const auto& f = c.fredholm;
  const auto t = build_fredholm_table(f.m, c.quadrature_n, f.p_max, f.k_max);

  CsvTable mu({"k", "mu"});
  for (std::size_t k = 0; k < t.mu.size(); ++k) mu.add_row({csv_number(std::uint64_t{k + 1}), csv_number(t.mu[k])});
  ctx.csv("fredholm_mu.csv", mu);

  CsvTable traces({"p", "A_p"});
  for (std::size_t p = 0; p < t.traces.size(); ++p) traces.add_row({csv_number(std::uint64_t{p}), csv_number(t.traces[p])});
  ctx.csv("fredholm_traces.csv", traces);

  CsvTable dk({"k", "d_k", "d_k_trace"});
  for (std::size_t k = 0; k < t.dk.size(); ++k)
    dk.add_row({csv_number(std::uint64_t{k}), csv_number(t.dk[k]), csv_number(t.dk_trace[k])});
  ctx.csv("fredholm_dk.csv", dk);

  const double trace_error = std::abs(t.traces[1] - f.m);
  const bool trace_ok = trace_error <= 1e-6;
  ctx.json_file("fredholm.json", {{"m", t.m},
                                  {"quadrature_n", t.quadrature_n},
                                  {"A_1", t.traces[1]},
                                  {"trace_error", trace_error},
                                  {"trace_ok", trace_ok},
                                  {"mu_max", t.mu.front()},
                                  {"mu_min", t.mu.back()},
                                  {"traces", t.traces},
                                  {"dk", t.dk},
                                  {"fit",
                                   {{"c", t.fit.c},
                                    {"delta", t.fit.delta},
                                    {"first_k", t.fit.first_k},
                                    {"last_k", t.fit.last_k}}},
                                  {"tail_constant", t.tail_constant}});
  ctx.out << "A_1 = " << t.traces[1] << ", fitted c = " << t.fit.c << ", delta = " << t.fit.delta << "\n";
  if (!trace_ok) {
    ctx.err << "losdof: FAIL trace identity: |A_1 - m| = " << trace_error << "\n";
    return exit_check_failed;
  }
  return exit_ok;
}

json sweep_record_json(const SweepRecord& r, double unit)
{
  return {{"params", params_to_json(r.params)},
          {"derived", derived_json(r.derived)},
          {"in_regime", r.in_regime},
          {"seed", r.seed},
          {"logdet_ph", r.logdet_ph * unit},
          {"logdet_h", r.logdet_h * unit},
          {"logdet_g", r.logdet_g * unit},
          {"dof_h", r.dof_h},
          {"dof_g", r.dof_g},
          {"envelope_lower", r.envelope_lower},
          {"envelope_upper", r.envelope_upper},
          {"k1", r.k1},
          {"k2", r.k2}};
}

struct Range {
  double min = INFINITY;
  double max = -INFINITY;
  void add(double v)
  {
    min = std::min(min, v);
    max = std::max(max, v);
  }
  double spread() const { return max / min; }
};

int run_sweep(Context& ctx)
{
  const auto& c = ctx.config;
  const auto result = bound_sweep(c.sweep.expand(), c.threshold, c.trials, c.seed);

  CsvTable table({"n", "area_A", "dist_d", "lambda", "m", "P", "in_regime", "seed", "logdet_ph", "logdet_h",
                  "logdet_g", "dof_h", "dof_g", "envelope_lower", "envelope_upper", "k1", "k2"});
  json records = json::array();
  Range k1, k2;
  std::size_t outside = 0;
  for (const auto& r : result.records) {
    table.add_row({csv_number(std::uint64_t{r.params.n}), csv_number(r.params.area_A), csv_number(r.params.dist_d),
                   csv_number(r.params.lambda), csv_number(r.derived.m), csv_number(r.derived.P),
                   bool_cell(r.in_regime), csv_number(r.seed), csv_number(r.logdet_ph * ctx.unit),
                   csv_number(r.logdet_h * ctx.unit), csv_number(r.logdet_g * ctx.unit), csv_number(r.dof_h),
                   csv_number(r.dof_g), csv_number(r.envelope_lower), csv_number(r.envelope_upper),
                   csv_number(r.k1), csv_number(r.k2)});
    records.push_back(sweep_record_json(r, ctx.unit));
    k1.add(r.k1);
    k2.add(r.k2);
    if (!r.in_regime) ++outside;
  }
  if (outside) ctx.warn(std::to_string(outside) + " sweep point(s) are outside sqrt(A) <= d <= A/lambda");
  ctx.csv("sweep.csv", table);
  ctx.json_file("sweep.json", {{"threshold", c.threshold},
                               {"trials", c.trials},
                               {"records", records},
                               {"k1_min", k1.min},
                               {"k1_max", k1.max},
                               {"k2_min", k2.min},
                               {"k2_max", k2.max}});
  ctx.out << result.records.size() << " sweep points, K1 in [" << k1.min << ", " << k1.max << "], K2 in ["
          << k2.min << ", " << k2.max << "]\n";
  return exit_ok;
}

struct Check {
  std::string name;
  std::string experiment;
  bool passed = false;
  std::string reason;
};

class Verifier {
 public:
  explicit Verifier(Context& ctx) : ctx_(ctx) {}

  void run(const std::string& experiment, std::uint64_t seed)
  {
    try {
      if (experiment == "fredholm_identity") identity(seed);
      else if (experiment == "claim_sim") claim(seed);
      else if (experiment == "bound_sweep") sweep(seed);
      else if (experiment == "concentration") concentration(seed);
    } catch (const NumericalError& e) {
      add(experiment, experiment, false, std::string("numerical error: ") + e.what());
    }
  }

  json checks_json() const
  {
    json list = json::array();
    for (const auto& c : checks_)
      list.push_back({{"name", c.name}, {"experiment", c.experiment}, {"passed", c.passed}, {"reason", c.reason}});
    return list;
  }

  bool all_passed() const
  {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
  }

  json results = json::object();

 private:
  void add(const std::string& name, const std::string& experiment, bool passed, const std::string& reason)
  {
    checks_.push_back({name, experiment, passed, reason});
    ctx_.out << (passed ? "PASS " : "FAIL ") << name << ": " << reason << "\n";
    if (!passed) ctx_.err << "losdof: FAIL " << name << ": " << reason << "\n";
  }

  void identity(std::uint64_t seed)
  {
    const auto& v = ctx_.config.verify;
    std::map<double, std::size_t> max_k;
    for (const auto& ic : v.identity_cases) max_k[ic.m] = std::max(max_k[ic.m], ic.k);
    std::map<double, FredholmTable> tables;
    for (const auto& [m, k] : max_k) {
      auto table = build_fredholm_table(m, ctx_.config.quadrature_n, k, k);
      for (double& d : table.dk) d *= v.corrupt_dk_factor;
      tables.emplace(m, std::move(table));
    }
    if (v.corrupt_dk_factor != 1.0)
      ctx_.warn("d_k multiplied by " + csv_number(v.corrupt_dk_factor) + " (corrupt_dk_factor test hook)");

    json list = json::array();
    for (std::size_t i = 0; i < v.identity_cases.size(); ++i) {
      const auto& ic = v.identity_cases[i];
      const auto chk = fredholm_identity_check(ic.k, ic.m, v.identity_trials, derive_seed(seed, i), tables.at(ic.m));
      list.push_back({{"k", ic.k},
                      {"m", ic.m},
                      {"mc", estimate_json(chk.mc)},
                      {"analytic", chk.analytic},
                      {"z_score", chk.z_score},
                      {"violated", chk.violated}});
      std::ostringstream reason;
      reason << "MC " << chk.mc.mean << " +- " << chk.mc.std_error << " vs analytic " << chk.analytic
             << ", z = " << chk.z_score;
      add("fredholm_identity[k=" + std::to_string(ic.k) + ",m=" + csv_number(ic.m) + "]", "fredholm_identity",
          !chk.violated, reason.str());
    }
    results["fredholm_identity"] = list;
  }

  void claim(std::uint64_t seed)
  {
    const auto& c = ctx_.config;
    const auto report = claim_sim_experiment(c.scenario, c.verify.claim_trials, seed, c.threshold);
    if (!report.in_regime) ctx_.warn("claim_sim scenario is outside sqrt(A) <= d <= A/lambda");
    const double m = report.derived.m;
    bool near_m = true;
    bool agree = true;
    json trials = json::array();
    for (const auto& t : report.trials) {
      for (double dof : {double(t.dof_h), double(t.dof_g)}) near_m = near_m && dof >= m / 4.0 && dof <= 4.0 * m;
      const double lo = double(std::min(t.dof_h, t.dof_g));
      const double hi = double(std::max(t.dof_h, t.dof_g));
      agree = agree && hi <= 2.0 * lo;
      trials.push_back({{"seed", t.seed},
                        {"logdet_h", t.logdet_h * ctx_.unit},
                        {"logdet_g", t.logdet_g * ctx_.unit},
                        {"ratio", t.ratio},
                        {"dof_h", t.dof_h},
                        {"dof_g", t.dof_g}});
    }
    results["claim_sim"] = {{"params", params_to_json(c.scenario)},
                            {"derived", derived_json(report.derived)},
                            {"in_regime", report.in_regime},
                            {"trials", trials},
                            {"ratio", estimate_json(report.ratio)}};
    add("claim_sim.dof_near_m", "claim_sim", near_m, "every dof count within a factor 4 of m = " + csv_number(m));
    add("claim_sim.dof_agreement", "claim_sim", agree, "dof(H) and dof(G) within a factor 2 in every trial");
    const double r = report.ratio.mean;
    add("claim_sim.ratio_band", "claim_sim", r >= 0.5 && r <= 2.0, "mean logdet ratio " + csv_number(r) + " in [0.5, 2]");
  }

  void sweep(std::uint64_t seed)
  {
    const auto& c = ctx_.config;
    const auto result = bound_sweep(c.sweep.expand(), c.threshold, c.verify.sweep_trials, seed);
    Range k1, k2;
    bool positive = true;
    json records = json::array();
    for (const auto& r : result.records) {
      k1.add(r.k1);
      k2.add(r.k2);
      positive = positive && std::isfinite(r.k1) && std::isfinite(r.k2) && r.k1 > 0.0 && r.k2 > 0.0;
      records.push_back(sweep_record_json(r, ctx_.unit));
    }
    results["bound_sweep"] = {{"records", records}, {"k1_min", k1.min}, {"k1_max", k1.max},
                              {"k2_min", k2.min}, {"k2_max", k2.max}};
    add("bound_sweep.k2_bounded", "bound_sweep", positive && k2.spread() <= 3.0,
        "K2 max/min = " + csv_number(k2.spread()) + " <= 3");
    add("bound_sweep.k1_bounded_below", "bound_sweep", positive && k1.min > 0.0 && k1.spread() <= 5.0,
        "K1 min = " + csv_number(k1.min) + " > 0, max/min = " + csv_number(k1.spread()) + " <= 5");
  }

  void concentration(std::uint64_t seed)
  {
    const auto& v = ctx_.config.verify;
    const auto grid = v.concentration_grid.expand();
    const auto rep = concentration_experiment(grid, v.concentration_trials, seed);
    json points = json::array();
    for (const auto& p : rep.points)
      points.push_back({{"params", params_to_json(p.params)},
                        {"m", p.m},
                        {"in_regime", p.in_regime},
                        {"seed", p.seed},
                        {"mean", p.mean * ctx_.unit},
                        {"std_dev", p.std_dev * ctx_.unit}});
    results["concentration"] = {{"points", points},
                                {"trials", rep.trials},
                                {"growth_exponent", rep.growth_exponent ? json(*rep.growth_exponent) : json(nullptr)}};
    if (rep.growth_exponent)
      add("concentration.growth_exponent", "concentration", *rep.growth_exponent <= 0.7,
          "fitted exponent " + csv_number(*rep.growth_exponent) + " <= 0.7");
    else
      add("concentration.growth_exponent", "concentration", false,
          "fewer than two grid points with non-zero spread; no exponent fitted");
  }

  Context& ctx_;
  std::vector<Check> checks_;
};

int run_verify(Context& ctx)
{
  const auto& experiments = ctx.config.verify.experiments;
  if (experiments.empty()) ctx.warn("no verify experiments configured");
  Verifier verifier(ctx);
  const auto& order = known_verify_experiments();
  for (const auto& name : experiments) {
    const auto idx = static_cast<std::uint64_t>(std::find(order.begin(), order.end(), name) - order.begin());
    verifier.run(name, derive_seed(ctx.config.seed, idx));
  }
  const bool passed = verifier.all_passed();
  ctx.json_file("verify.json", {{"experiments", experiments},
                                {"passed", passed},
                                {"checks", verifier.checks_json()},
                                {"results", verifier.results}});
  return passed ? exit_ok : exit_check_failed;
}

struct CommonOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double threshold = 0.0;
  std::size_t quadrature_n = 0;
  std::string out;
  std::map<std::string, CLI::Option*> options;
  CLI::Option* bits = nullptr;

  void attach(CLI::App* sub)
  {
    options["config"] = sub->add_option("--config", config_path, "YAML run configuration");
    options["seed"] = sub->add_option("--seed", seed, "Base random seed");
    options["trials"] = sub->add_option("--trials", trials, "Independent trials per point");
    options["threshold"] = sub->add_option("--threshold", threshold, "Effective-dof eigenvalue threshold");
    options["quadrature_n"] = sub->add_option("--quadrature-n", quadrature_n, "Nystrom nodes (0 = automatic)");
    options["out"] = sub->add_option("--out", out, "Output directory");
    bits = sub->add_flag("--bits", "Report capacities in bits instead of nats");
  }
};

}  // namespace

int run_experiment(const RunConfig& config, std::ostream& out, std::ostream& err)
{
  Context ctx(config, out, err);
  if (config.experiment == "spectrum") return run_spectrum(ctx);
  if (config.experiment == "fredholm") return run_fredholm(ctx);
  if (config.experiment == "sweep") return run_sweep(ctx);
  if (config.experiment == "verify") return run_verify(ctx);
  throw ConfigError("experiment: unknown experiment '" + config.experiment + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Degrees-of-freedom experiments for line-of-sight MIMO between two clusters", "losdof"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  std::map<std::string, CommonOptions> common;
  for (const auto* name : {"spectrum", "fredholm", "verify", "sweep"}) {
    static const std::map<std::string, std::string> help{
        {"spectrum", "Eigenvalues of the LOS and G Gram matrices for one scenario"},
        {"fredholm", "Sinc-kernel eigenvalues, traces, d_k and tail fit"},
        {"verify", "Run the identity and bound checks; exit 2 on any failure"},
        {"sweep", "Log-det capacities and implied constants over a parameter grid"}};
    common[name].attach(app.add_subcommand(name, help.at(name)));
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid_config;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    auto& opts = common.at(sub->get_name());
    LoadedConfig loaded;
    if (opts.options["config"]->count() > 0) loaded = load_config(opts.config_path);
    RunConfig& c = loaded.config;
    auto overridden = [&](const std::string& key) {
      const bool set = opts.options[key]->count() > 0;
      if (set) loaded.sources.locations.erase(key);
      return set;
    };
    c.experiment = sub->get_name();
    if (overridden("seed")) c.seed = opts.seed;
    if (overridden("trials")) c.trials = opts.trials;
    if (overridden("threshold")) c.threshold = opts.threshold;
    if (overridden("quadrature_n")) c.quadrature_n = opts.quadrature_n;
    if (overridden("out")) c.out = opts.out;
    if (opts.bits->count() > 0) c.bits = true;
    validate_config(c, &loaded.sources);
    return run_experiment(c, out, err);
  } catch (const ConfigError& e) {
    err << "losdof: invalid config: " << e.what() << "\n";
    return exit_invalid_config;
  } catch (const IoError& e) {
    err << "losdof: I/O error: " << e.what() << "\n";
    return exit_io_failure;
  } catch (const NumericalError& e) {
    err << "losdof: numerical check failed: " << e.what() << "\n";
    return exit_check_failed;
  } catch (const std::invalid_argument& e) {
    err << "losdof: invalid parameters: " << e.what() << "\n";
    return exit_invalid_config;
  } catch (const std::out_of_range& e) {
    err << "losdof: invalid parameters: " << e.what() << "\n";
    return exit_invalid_config;
  } catch (const std::exception& e) {
    err << "losdof: error: " << e.what() << "\n";
    return exit_check_failed;
  }
}

int run_cli(int argc, const char* const* argv)
{
  return run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace losdof::cli
