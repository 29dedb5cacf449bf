#include "losdof/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace losdof::cli {

std::vector<ClusterParams> GridConfig::expand() const
{
  std::vector<ClusterParams> grid = points;
  for (const auto& e : exponents)
    for (std::size_t count : n) grid.push_back(power_law_params(count, e.beta, e.gamma, lambda));
  return grid;
}

namespace {

std::string join(const std::string& prefix, const std::string& key)
{
  return prefix.empty() ? key : prefix + "." + key;
}

std::string indexed(const std::string& path, std::size_t i)
{
  return path + "[" + std::to_string(i) + "]";
}

class Reader {
 public:
  explicit Reader(SourceMap& sources) : sources_(sources) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& path, const std::string& msg) const
  {
    const auto mark = node.Mark();
    std::ostringstream os;
    os << sources_.source;
    if (!mark.is_null()) os << ":" << mark.line + 1 << ":" << mark.column + 1;
    os << ": " << (path.empty() ? "<root>" : path) << ": " << msg;
    throw ConfigError(os.str());
  }

  void map_keys(const YAML::Node& node, const std::string& path, std::initializer_list<const char*> allowed) const
  {
    if (!node.IsMap()) fail(node, path, "expected a mapping");
    std::set<std::string> seen;
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end())
        fail(kv.first, join(path, key), "unknown key");
      if (!seen.insert(key).second) fail(kv.first, join(path, key), "duplicate key");
    }
  }

  template <class Fn>
  void field(const YAML::Node& map, const std::string& prefix, const char* key, Fn&& fn)
  {
    const YAML::Node value = map[key];
    if (!value) return;
    const auto path = join(prefix, key);
    record(value, path);
    fn(value, path);
  }

  template <class Fn>
  void sequence(const YAML::Node& node, const std::string& path, Fn&& fn)
  {
    if (!node.IsSequence()) fail(node, path, "expected a list");
    for (std::size_t i = 0; i < node.size(); ++i) {
      record(node[i], indexed(path, i));
      fn(node[i], indexed(path, i));
    }
  }

  std::string scalar(const YAML::Node& node, const std::string& path) const
  {
    if (!node.IsScalar()) fail(node, path, "expected a scalar value");
    return node.Scalar();
  }

  double real(const YAML::Node& node, const std::string& path) const
  {
    const auto text = scalar(node, path);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc() || res.ptr != end) fail(node, path, "expected a number, got '" + text + "'");
    return value;
  }

  std::uint64_t u64(const YAML::Node& node, const std::string& path) const
  {
    const auto text = scalar(node, path);
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec == std::errc::result_out_of_range) fail(node, path, "integer out of range");
    if (res.ec != std::errc() || res.ptr != end)
      fail(node, path, "expected a non-negative integer, got '" + text + "'");
    return value;
  }

  std::size_t count(const YAML::Node& node, const std::string& path) const
  {
    return static_cast<std::size_t>(u64(node, path));
  }

  bool boolean(const YAML::Node& node, const std::string& path) const
  {
    const auto text = scalar(node, path);
    if (text == "true") return true;
    if (text == "false") return false;
    fail(node, path, "expected true or false, got '" + text + "'");
  }

  void record(const YAML::Node& node, const std::string& path)
  {
    const auto mark = node.Mark();
    if (!mark.is_null())
      sources_.locations[path] = {static_cast<std::size_t>(mark.line) + 1,
                                  static_cast<std::size_t>(mark.column) + 1};
  }

 private:
  SourceMap& sources_;
};

void read_params(Reader& r, const YAML::Node& node, const std::string& path, ClusterParams& p)
{
  r.map_keys(node, path, {"n", "area_A", "dist_d", "lambda"});
  r.field(node, path, "n", [&](const YAML::Node& v, const std::string& at) { p.n = r.count(v, at); });
  r.field(node, path, "area_A", [&](const YAML::Node& v, const std::string& at) { p.area_A = r.real(v, at); });
  r.field(node, path, "dist_d", [&](const YAML::Node& v, const std::string& at) { p.dist_d = r.real(v, at); });
  r.field(node, path, "lambda", [&](const YAML::Node& v, const std::string& at) { p.lambda = r.real(v, at); });
}

void read_grid(Reader& r, const YAML::Node& node, const std::string& path, GridConfig& g)
{
  r.map_keys(node, path, {"points", "n", "exponents", "lambda"});
  r.field(node, path, "points", [&](const YAML::Node& v, const std::string& at) {
    g.points.clear();
    r.sequence(v, at, [&](const YAML::Node& item, const std::string& item_at) {
      ClusterParams p;
      read_params(r, item, item_at, p);
      g.points.push_back(p);
    });
  });
  r.field(node, path, "n", [&](const YAML::Node& v, const std::string& at) {
    g.n.clear();
    r.sequence(v, at, [&](const YAML::Node& item, const std::string& item_at) { g.n.push_back(r.count(item, item_at)); });
  });
  r.field(node, path, "exponents", [&](const YAML::Node& v, const std::string& at) {
    g.exponents.clear();
    r.sequence(v, at, [&](const YAML::Node& item, const std::string& item_at) {
      PowerLawExponents e;
      r.map_keys(item, item_at, {"beta", "gamma"});
      r.field(item, item_at, "beta", [&](const YAML::Node& x, const std::string& x_at) { e.beta = r.real(x, x_at); });
      r.field(item, item_at, "gamma", [&](const YAML::Node& x, const std::string& x_at) { e.gamma = r.real(x, x_at); });
      g.exponents.push_back(e);
    });
  });
  r.field(node, path, "lambda", [&](const YAML::Node& v, const std::string& at) { g.lambda = r.real(v, at); });
}

void read_verify(Reader& r, const YAML::Node& node, const std::string& path, VerifyConfig& c)
{
  r.map_keys(node, path,
             {"experiments", "identity_cases", "identity_trials", "claim_trials", "sweep_trials",
              "concentration_trials", "concentration_grid", "corrupt_dk_factor"});
  r.field(node, path, "experiments", [&](const YAML::Node& v, const std::string& at) {
    c.experiments.clear();
    r.sequence(v, at, [&](const YAML::Node& item, const std::string& item_at) {
      c.experiments.push_back(r.scalar(item, item_at));
    });
  });
  r.field(node, path, "identity_cases", [&](const YAML::Node& v, const std::string& at) {
    c.identity_cases.clear();
    r.sequence(v, at, [&](const YAML::Node& item, const std::string& item_at) {
      IdentityCase ic;
      r.map_keys(item, item_at, {"k", "m"});
      r.field(item, item_at, "k", [&](const YAML::Node& x, const std::string& x_at) { ic.k = r.count(x, x_at); });
      r.field(item, item_at, "m", [&](const YAML::Node& x, const std::string& x_at) { ic.m = r.real(x, x_at); });
      c.identity_cases.push_back(ic);
    });
  });
  r.field(node, path, "identity_trials", [&](const YAML::Node& v, const std::string& at) { c.identity_trials = r.count(v, at); });
  r.field(node, path, "claim_trials", [&](const YAML::Node& v, const std::string& at) { c.claim_trials = r.count(v, at); });
  r.field(node, path, "sweep_trials", [&](const YAML::Node& v, const std::string& at) { c.sweep_trials = r.count(v, at); });
  r.field(node, path, "concentration_trials",
          [&](const YAML::Node& v, const std::string& at) { c.concentration_trials = r.count(v, at); });
  r.field(node, path, "concentration_grid",
          [&](const YAML::Node& v, const std::string& at) { read_grid(r, v, at, c.concentration_grid); });
  r.field(node, path, "corrupt_dk_factor",
          [&](const YAML::Node& v, const std::string& at) { c.corrupt_dk_factor = r.real(v, at); });
}

class Validator {
 public:
  explicit Validator(const SourceMap* sources) : sources_(sources) {}

  void require(bool ok, const std::string& path, const std::string& msg) const
  {
    if (ok) return;
    std::ostringstream os;
    if (sources_) {
      const auto it = sources_->locations.find(path);
      if (it != sources_->locations.end())
        os << sources_->source << ":" << it->second.line << ":" << it->second.column << ": ";
    }
    os << path << ": " << msg;
    throw ConfigError(os.str());
  }

  void positive(double v, const std::string& path) const
  {
    require(std::isfinite(v) && v > 0.0, path, "must be a finite number > 0");
  }

  void params(const ClusterParams& p, const std::string& path, std::size_t min_n) const
  {
    require(p.n >= min_n, join(path, "n"), "must be >= " + std::to_string(min_n));
    positive(p.area_A, join(path, "area_A"));
    positive(p.dist_d, join(path, "dist_d"));
    positive(p.lambda, join(path, "lambda"));
  }

  void grid(const GridConfig& g, const std::string& path, std::size_t min_n) const
  {
    for (std::size_t i = 0; i < g.points.size(); ++i) params(g.points[i], indexed(join(path, "points"), i), min_n);
    for (std::size_t i = 0; i < g.n.size(); ++i)
      require(g.n[i] >= min_n, indexed(join(path, "n"), i), "must be >= " + std::to_string(min_n));
    for (std::size_t i = 0; i < g.exponents.size(); ++i) {
      const auto at = indexed(join(path, "exponents"), i);
      require(std::isfinite(g.exponents[i].beta), join(at, "beta"), "must be finite");
      require(std::isfinite(g.exponents[i].gamma), join(at, "gamma"), "must be finite");
    }
    positive(g.lambda, join(path, "lambda"));
    require(g.n.empty() == g.exponents.empty(), join(path, g.n.empty() ? "n" : "exponents"),
            "power-law grids need both n and exponents");
    require(!g.expand().empty(), path, "grid has no points");
  }

 private:
  const SourceMap* sources_;
};

std::string format_real(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string yaml_scalar(const nlohmann::ordered_json& j)
{
  if (j.is_number_float()) return format_real(j.get<double>());
  return j.dump();
}

std::string flow(const nlohmann::ordered_json& j)
{
  if (j.is_object()) {
    std::string s = "{";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      s += (first ? "" : ", ") + k + ": " + flow(v);
      first = false;
    }
    return s + "}";
  }
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + flow(j[i]);
    return s + "]";
  }
  return yaml_scalar(j);
}

void emit_block(std::ostringstream& os, const nlohmann::ordered_json& obj, int indent)
{
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      os << pad << key << ":\n";
      emit_block(os, value, indent + 2);
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
      os << pad << key << ":\n";
      for (const auto& item : value) os << pad << "  - " << flow(item) << "\n";
    } else {
      os << pad << key << ": " << flow(value) << "\n";
    }
  }
}

nlohmann::ordered_json grid_json(const GridConfig& g)
{
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& p : g.points) points.push_back(params_to_json(p));
  nlohmann::ordered_json exps = nlohmann::ordered_json::array();
  for (const auto& e : g.exponents) exps.push_back({{"beta", e.beta}, {"gamma", e.gamma}});
  return {{"points", points}, {"n", g.n}, {"exponents", exps}, {"lambda", g.lambda}};
}

}  // namespace

nlohmann::ordered_json params_to_json(const ClusterParams& p)
{
  return {{"n", p.n}, {"area_A", p.area_A}, {"dist_d", p.dist_d}, {"lambda", p.lambda}};
}

LoadedConfig parse_config(const std::string& text, const std::string& source_name)
{
  LoadedConfig loaded;
  loaded.sources.source = source_name;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source_name + ":" + std::to_string(e.mark.line + 1) + ":" +
                      std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  if (root.IsNull()) {
    validate_config(loaded.config, &loaded.sources);
    return loaded;
  }

  Reader r(loaded.sources);
  RunConfig& c = loaded.config;
  try {
    r.map_keys(root, "",
               {"experiment", "scenario", "seed", "trials", "threshold", "quadrature_n", "bits", "out",
                "fredholm", "sweep", "verify"});
    r.field(root, "", "experiment", [&](const YAML::Node& v, const std::string& at) { c.experiment = r.scalar(v, at); });
    r.field(root, "", "scenario", [&](const YAML::Node& v, const std::string& at) { read_params(r, v, at, c.scenario); });
    r.field(root, "", "seed", [&](const YAML::Node& v, const std::string& at) { c.seed = r.u64(v, at); });
    r.field(root, "", "trials", [&](const YAML::Node& v, const std::string& at) { c.trials = r.count(v, at); });
    r.field(root, "", "threshold", [&](const YAML::Node& v, const std::string& at) { c.threshold = r.real(v, at); });
    r.field(root, "", "quadrature_n", [&](const YAML::Node& v, const std::string& at) { c.quadrature_n = r.count(v, at); });
    r.field(root, "", "bits", [&](const YAML::Node& v, const std::string& at) { c.bits = r.boolean(v, at); });
    r.field(root, "", "out", [&](const YAML::Node& v, const std::string& at) { c.out = r.scalar(v, at); });
    r.field(root, "", "fredholm", [&](const YAML::Node& v, const std::string& at) {
      r.map_keys(v, at, {"m", "p_max", "k_max"});
      r.field(v, at, "m", [&](const YAML::Node& x, const std::string& x_at) { c.fredholm.m = r.real(x, x_at); });
      r.field(v, at, "p_max", [&](const YAML::Node& x, const std::string& x_at) { c.fredholm.p_max = r.count(x, x_at); });
      r.field(v, at, "k_max", [&](const YAML::Node& x, const std::string& x_at) { c.fredholm.k_max = r.count(x, x_at); });
    });
    r.field(root, "", "sweep", [&](const YAML::Node& v, const std::string& at) { read_grid(r, v, at, c.sweep); });
    r.field(root, "", "verify", [&](const YAML::Node& v, const std::string& at) { read_verify(r, v, at, c.verify); });
  } catch (const YAML::Exception& e) {
    throw ConfigError(source_name + ":" + std::to_string(e.mark.line + 1) + ":" +
                      std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  validate_config(c, &loaded.sources);
  return loaded;
}

LoadedConfig load_config(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file '" + path + "'");
  return parse_config(text.str(), path);
}

void validate_config(const RunConfig& c, const SourceMap* sources)
{
  const Validator v(sources);
  const auto& names = known_experiments();
  v.require(std::find(names.begin(), names.end(), c.experiment) != names.end(), "experiment",
            "unknown experiment '" + c.experiment + "' (expected spectrum, fredholm, verify or sweep)");
  v.params(c.scenario, "scenario", 1);
  v.require(c.trials >= 1, "trials", "must be >= 1");
  v.positive(c.threshold, "threshold");
  v.require(c.quadrature_n == 0 || c.quadrature_n >= 2, "quadrature_n", "must be 0 (automatic) or >= 2");
  v.require(!c.out.empty(), "out", "must not be empty");

  v.positive(c.fredholm.m, "fredholm.m");
  v.require(c.fredholm.p_max >= 1, "fredholm.p_max", "must be >= 1");

  v.grid(c.sweep, "sweep", 2);

  const auto& vnames = known_verify_experiments();
  std::set<std::string> seen;
  for (std::size_t i = 0; i < c.verify.experiments.size(); ++i) {
    const auto& name = c.verify.experiments[i];
    const auto at = indexed("verify.experiments", i);
    v.require(std::find(vnames.begin(), vnames.end(), name) != vnames.end(), at,
              "unknown verify experiment '" + name +
                  "' (expected fredholm_identity, claim_sim, bound_sweep or concentration)");
    v.require(seen.insert(name).second, at, "listed twice");
  }
  for (std::size_t i = 0; i < c.verify.identity_cases.size(); ++i) {
    const auto at = indexed("verify.identity_cases", i);
    v.require(c.verify.identity_cases[i].k >= 1, join(at, "k"), "must be >= 1");
    v.positive(c.verify.identity_cases[i].m, join(at, "m"));
  }
  v.require(c.verify.identity_trials >= 1, "verify.identity_trials", "must be >= 1");
  v.require(c.verify.claim_trials >= 1, "verify.claim_trials", "must be >= 1");
  v.require(c.verify.sweep_trials >= 1, "verify.sweep_trials", "must be >= 1");
  v.require(c.verify.concentration_trials >= 10, "verify.concentration_trials", "must be >= 10");
  v.grid(c.verify.concentration_grid, "verify.concentration_grid", 1);
  v.positive(c.verify.corrupt_dk_factor, "verify.corrupt_dk_factor");
}

nlohmann::ordered_json config_to_json(const RunConfig& c)
{
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const auto& ic : c.verify.identity_cases) cases.push_back({{"k", ic.k}, {"m", ic.m}});
  return {
      {"experiment", c.experiment},
      {"scenario", params_to_json(c.scenario)},
      {"seed", c.seed},
      {"trials", c.trials},
      {"threshold", c.threshold},
      {"quadrature_n", c.quadrature_n},
      {"bits", c.bits},
      {"out", c.out},
      {"fredholm", {{"m", c.fredholm.m}, {"p_max", c.fredholm.p_max}, {"k_max", c.fredholm.k_max}}},
      {"sweep", grid_json(c.sweep)},
      {"verify",
       {{"experiments", c.verify.experiments},
        {"identity_cases", cases},
        {"identity_trials", c.verify.identity_trials},
        {"claim_trials", c.verify.claim_trials},
        {"sweep_trials", c.verify.sweep_trials},
        {"concentration_trials", c.verify.concentration_trials},
        {"concentration_grid", grid_json(c.verify.concentration_grid)},
        {"corrupt_dk_factor", c.verify.corrupt_dk_factor}}},
  };
}

std::string emit_config(const RunConfig& config)
{
  std::ostringstream os;
  os << "# losdof " << LOSDOF_VERSION << " effective configuration\n";
  emit_block(os, config_to_json(config), 0);
  return os.str();
}

}  // namespace losdof::cli
