#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "losdof/cli.hpp"
#include "losdof/config.hpp"
#include "losdof/output.hpp"

using namespace losdof;
using namespace losdof::cli;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args)
{
  args.insert(args.begin(), "losdof");
  std::ostringstream out, err;
  RunResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name)
{
  const auto dir = fs::temp_directory_path() / ("losdof_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const fs::path& dir, const std::string& text)
{
  const auto path = dir / "config.yaml";
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

// Data lines of a CSV file: everything after the `#` metadata block.
std::vector<std::string> csv_lines(const fs::path& path)
{
  std::istringstream in(slurp(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.starts_with("#")) lines.push_back(line);
  return lines;
}

nlohmann::json load_json(const fs::path& path) { return nlohmann::json::parse(slurp(path)); }

std::string error_for(const std::string& text)
{
  try {
    parse_config(text, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("default configuration round-trips")
{
  const RunConfig defaults;
  CHECK(parse_config(emit_config(defaults)).config == defaults);
  CHECK(parse_config("").config == defaults);
  CHECK(parse_config("# only a comment\n").config == defaults);
}

TEST_CASE("non-default configuration round-trips")
{
  RunConfig c;
  c.experiment = "sweep";
  c.scenario = {7, 0.1, 1.0 / 3.0, 1e-300};
  c.seed = 18446744073709551615ull;
  c.trials = 3;
  c.threshold = 0.30000000000000004;
  c.quadrature_n = 64;
  c.bits = true;
  c.out = "dir with spaces/\"quoted\"";
  c.fredholm = {2.5, 3, 0};
  c.sweep.points = {{10, 100.0, 20.0, 0.5}, {12, 144.0, 30.0, 0.25}};
  c.sweep.n = {};
  c.sweep.exponents = {};
  c.verify.experiments = {};
  c.verify.identity_cases = {{4, std::numbers::pi}};
  c.verify.corrupt_dk_factor = 1.5;
  const auto text = emit_config(c);
  CHECK(parse_config(text).config == c);
  CHECK(emit_config(parse_config(text).config) == text);
}

TEST_CASE("config diagnostics carry line numbers")
{
  SUBCASE("unknown key")
  {
    const auto msg = error_for("seed: 1\nscenario:\n  n: 5\n  bogus: 2\n");
    CHECK(msg.find("cfg.yaml:4:") != std::string::npos);
    CHECK(msg.find("scenario.bogus") != std::string::npos);
  }
  SUBCASE("malformed number")
  {
    const auto msg = error_for("scenario:\n  area_A: big\n");
    CHECK(msg.find("cfg.yaml:2:") != std::string::npos);
    CHECK(msg.find("expected a number") != std::string::npos);
  }
  SUBCASE("negative count")
  {
    CHECK(error_for("trials: -4\n").find("cfg.yaml:1:") != std::string::npos);
  }
  SUBCASE("semantic error")
  {
    const auto msg = error_for("seed: 3\n\ntrials: 0\n");
    CHECK(msg.find("cfg.yaml:3:") != std::string::npos);
    CHECK(msg.find("trials") != std::string::npos);
  }
  SUBCASE("nested list entry")
  {
    const auto msg = error_for("verify:\n  identity_cases:\n    - {k: 1, m: 2}\n    - {k: 0, m: 2}\n");
    CHECK(msg.find("cfg.yaml:4:") != std::string::npos);
    CHECK(msg.find("verify.identity_cases[1].k") != std::string::npos);
  }
  SUBCASE("unknown verify experiment")
  {
    const auto msg = error_for("verify:\n  experiments: [claim_sim, nonsense]\n");
    CHECK(msg.find("cfg.yaml:2:") != std::string::npos);
  }
  SUBCASE("duplicate key")
  {
    CHECK(error_for("seed: 1\nseed: 2\n").find("duplicate") != std::string::npos);
  }
  SUBCASE("syntax error")
  {
    CHECK(error_for("scenario: [1, 2\n").find("cfg.yaml:") != std::string::npos);
  }
  SUBCASE("sweep needs n >= 2")
  {
    CHECK(error_for("sweep:\n  n: [1, 4]\n").find("sweep.n[0]") != std::string::npos);
  }
}

TEST_CASE("power-law grid expansion")
{
  GridConfig g{{{9, 1.0, 2.0, 3.0}}, {10, 20}, {{1.5, 1.0}, {2.0, 1.0}}, 0.5};
  const auto grid = g.expand();
  REQUIRE(grid.size() == 5);
  CHECK(grid[0].n == 9);
  CHECK(grid[1] == power_law_params(10, 1.5, 1.0, 0.5));
  CHECK(grid[4] == power_law_params(20, 2.0, 1.0, 0.5));
}

TEST_CASE("CSV formatting")
{
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(csv_number(1.0) == "1");
  CHECK(std::stod(csv_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(csv_number(std::uint64_t{42}) == "42");
  CHECK(csv_number(-INFINITY) == "-inf");
  CsvTable t({"a", "b"});
  CHECK_THROWS_AS(t.add_row({"1"}), DimensionMismatch);
  t.add_row({"1", "2"});
  const auto text = t.render({"spectrum", 5, nlohmann::ordered_json{{"x", 1}}});
  CHECK(text == "# tool: losdof " + tool_version() + "\n# command: spectrum\n# seed: 5\n# config: {\"x\":1}\na,b\n1,2\n");
}

TEST_CASE("argument handling and exit codes")
{
  const auto dir = scratch("exit");
  CHECK(run({}).code == exit_invalid_config);
  CHECK(run({"bogus"}).code == exit_invalid_config);
  CHECK(run({"spectrum", "--seed", "abc"}).code == exit_invalid_config);
  CHECK(run({"--help"}).code == exit_ok);
  CHECK(run({"spectrum", "--config", (dir / "missing.yaml").string()}).code == exit_io_failure);

  const auto bad = write_config(dir, "scenario:\n  n: 0\n");
  const auto r = run({"spectrum", "--config", bad.string(), "--out", (dir / "o").string()});
  CHECK(r.code == exit_invalid_config);
  CHECK(r.err.find("config.yaml:2:") != std::string::npos);

  const auto flag = run({"spectrum", "--trials", "0", "--out", (dir / "o").string()});
  CHECK(flag.code == exit_invalid_config);
  CHECK(flag.err.find("trials") != std::string::npos);

  std::ofstream(dir / "plainfile") << "x";
  CHECK(run({"spectrum", "--out", (dir / "plainfile" / "sub").string()}).code == exit_io_failure);
}

TEST_CASE("spectrum output")
{
  const auto dir = scratch("spectrum");
  const auto cfg = write_config(dir, "scenario: {n: 60, area_A: 900, dist_d: 60, lambda: 0.5}\nseed: 9\n");
  const auto a = dir / "a";
  REQUIRE(run({"spectrum", "--config", cfg.string(), "--out", a.string()}).code == exit_ok);

  const auto text = slurp(a / "spectrum.csv");
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.starts_with("# tool: losdof " + tool_version() + "\n"));
  CHECK(text.find("# seed: 9\n") != std::string::npos);
  const auto lines = csv_lines(a / "spectrum.csv");
  REQUIRE(lines.size() == 61);
  CHECK(lines[0] == "index,eig_H,eig_G");
  CHECK(lines[1].starts_with("1,"));

  const auto doc = load_json(a / "spectrum.json");
  CHECK(doc["version"] == tool_version());
  CHECK(doc["seed"] == 9);
  CHECK(doc["config"]["scenario"]["n"] == 60);
  CHECK(doc["derived"]["m"].get<double>() == doctest::Approx(30.0));
  CHECK(doc["log_unit"] == "nats");

  SUBCASE("rerun is byte-identical")
  {
    const auto b = dir / "b";
    REQUIRE(run({"spectrum", "--config", cfg.string(), "--out", b.string()}).code == exit_ok);
    // The output directory is part of the echoed config, so compare against a
    // rerun into the same directory.
    const auto first = slurp(a / "spectrum.csv");
    const auto first_json = slurp(a / "spectrum.json");
    REQUIRE(run({"spectrum", "--config", cfg.string(), "--out", a.string()}).code == exit_ok);
    CHECK(slurp(a / "spectrum.csv") == first);
    CHECK(slurp(a / "spectrum.json") == first_json);
    CHECK(csv_lines(b / "spectrum.csv") == csv_lines(a / "spectrum.csv"));
  }

  SUBCASE("effective config reproduces the run")
  {
    const auto c = dir / "c";
    REQUIRE(run({"spectrum", "--config", (a / "effective_config.yaml").string(), "--out", c.string()}).code == exit_ok);
    CHECK(csv_lines(c / "spectrum.csv") == csv_lines(a / "spectrum.csv"));
  }

  SUBCASE("bits scales capacities")
  {
    const auto d = dir / "d";
    REQUIRE(run({"spectrum", "--config", cfg.string(), "--out", d.string(), "--bits"}).code == exit_ok);
    const auto bits = load_json(d / "spectrum.json");
    CHECK(bits["log_unit"] == "bits");
    CHECK(bits["trials"][0]["logdet_g"].get<double>() ==
          doctest::Approx(doc["trials"][0]["logdet_g"].get<double>() / std::numbers::ln2).epsilon(1e-14));
  }
}

TEST_CASE("spectrum with a single node pair")
{
  const auto dir = scratch("single");
  const auto cfg = write_config(dir, "scenario: {n: 1, area_A: 4, dist_d: 10, lambda: 0.1}\n");
  REQUIRE(run({"spectrum", "--config", cfg.string(), "--out", dir.string()}).code == exit_ok);
  CHECK(csv_lines(dir / "spectrum.csv").size() == 2);
  const auto doc = load_json(dir / "spectrum.json");
  const auto dof = doc["trials"][0]["dof_h"].get<int>();
  CHECK((dof == 0 || dof == 1));
}

TEST_CASE("fredholm output")
{
  const auto dir = scratch("fredholm");
  SUBCASE("trace identity at m = 10")
  {
    REQUIRE(run({"fredholm", "--out", dir.string()}).code == exit_ok);
    const auto doc = load_json(dir / "fredholm.json");
    CHECK(std::abs(doc["A_1"].get<double>() - 10.0) < 1e-6);
    CHECK(doc["fit"]["delta"].get<double>() > 0.0);
    CHECK(csv_lines(dir / "fredholm_dk.csv").size() == 42);
  }
  SUBCASE("sub-unit bandwidth")
  {
    const auto cfg = write_config(dir, "fredholm: {m: 0.5, p_max: 4, k_max: 6}\n");
    REQUIRE(run({"fredholm", "--config", cfg.string(), "--out", dir.string()}).code == exit_ok);
    const auto doc = load_json(dir / "fredholm.json");
    CHECK(doc["mu_max"].get<double>() < 1.0);
    const auto dk = doc["dk"].get<std::vector<double>>();
    for (std::size_t k = 1; k + 1 < dk.size(); ++k) CHECK(dk[k + 1] <= dk[k]);
  }
  SUBCASE("k_max = 0")
  {
    const auto cfg = write_config(dir, "fredholm: {m: 3, p_max: 2, k_max: 0}\n");
    REQUIRE(run({"fredholm", "--config", cfg.string(), "--out", dir.string()}).code == exit_ok);
    const auto lines = csv_lines(dir / "fredholm_dk.csv");
    CHECK(lines == std::vector<std::string>{"k,d_k,d_k_trace", "0,1,1"});
  }
  SUBCASE("coarse quadrature is a numerical failure")
  {
    const auto cfg = write_config(dir, "fredholm: {m: 50}\nquadrature_n: 8\n");
    CHECK(run({"fredholm", "--config", cfg.string(), "--out", dir.string()}).code == exit_check_failed);
  }
}

TEST_CASE("sweep output")
{
  const auto dir = scratch("sweep");
  const auto cfg = write_config(dir,
                                "sweep:\n  points:\n    - {n: 20, area_A: 400, dist_d: 40, lambda: 1}\n"
                                "  n: []\n  exponents: []\n");
  REQUIRE(run({"sweep", "--config", cfg.string(), "--out", dir.string()}).code == exit_ok);
  const auto lines = csv_lines(dir / "sweep.csv");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].starts_with("n,area_A,dist_d,lambda,m,P,in_regime,seed,"));
  const auto first = slurp(dir / "sweep.csv");
  REQUIRE(run({"sweep", "--config", cfg.string(), "--out", dir.string()}).code == exit_ok);
  CHECK(slurp(dir / "sweep.csv") == first);
  CHECK(load_json(dir / "sweep.json")["records"].size() == 1);
}

TEST_CASE("verify")
{
  const auto dir = scratch("verify");
  const std::string small =
      "scenario: {n: 80, area_A: 1600, dist_d: 40, lambda: 1}\n"
      "sweep:\n  n: [20, 40]\n  exponents: [{beta: 1.6, gamma: 1.0}]\n"
      "verify:\n"
      "  identity_cases: [{k: 1, m: 2}, {k: 2, m: 5}]\n"
      "  identity_trials: 4000\n"
      "  claim_trials: 2\n"
      "  sweep_trials: 1\n"
      "  concentration_trials: 10\n"
      "  concentration_grid: {n: [20, 40], exponents: [{beta: 1.6, gamma: 1.0}]}\n";

  SUBCASE("small suite passes")
  {
    const auto cfg = write_config(dir, small);
    const auto r = run({"verify", "--config", cfg.string(), "--out", dir.string()});
    INFO(r.out, r.err);
    CHECK(r.code == exit_ok);
    const auto doc = load_json(dir / "verify.json");
    CHECK(doc["passed"] == true);
    CHECK(doc["checks"].size() == 2 + 3 + 2 + 1);
  }
  SUBCASE("corrupted d_k names the failing check")
  {
    const auto cfg = write_config(dir, small + "  corrupt_dk_factor: 1.5\n  experiments: [fredholm_identity]\n");
    const auto r = run({"verify", "--config", cfg.string(), "--out", dir.string()});
    CHECK(r.code == exit_check_failed);
    CHECK(r.err.find("FAIL fredholm_identity[k=2,m=5]") != std::string::npos);
    const auto doc = load_json(dir / "verify.json");
    CHECK(doc["passed"] == false);
    CHECK(doc["warnings"].size() == 1);
  }
  SUBCASE("empty experiment list")
  {
    const auto cfg = write_config(dir, "verify:\n  experiments: []\n");
    const auto r = run({"verify", "--config", cfg.string(), "--out", dir.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.err.find("warning") != std::string::npos);
    const auto doc = load_json(dir / "verify.json");
    CHECK(doc["checks"].empty());
    CHECK(doc["passed"] == true);
  }
}

TEST_CASE("JSON outputs carry every required top-level field")
{
  const auto dir = scratch("schema");
  REQUIRE(run({"fredholm", "--out", dir.string()}).code == exit_ok);
  const auto schema = load_json(fs::path(LOSDOF_SCHEMA_DIR) / "fredholm.schema.json");
  const auto doc = load_json(dir / "fredholm.json");
  for (const auto& key : schema["required"]) CHECK(doc.contains(key.get<std::string>()));
}

TEST_CASE("shipped example configs are valid")
{
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(LOSDOF_CONFIG_DIR)) {
    if (entry.path().extension() != ".yaml") continue;
    INFO(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path().string()));
    ++count;
  }
  CHECK(count >= 1);
}
