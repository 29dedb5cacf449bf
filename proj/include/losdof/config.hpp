#pragma once

// Run configuration for the losdof driver. The file format is YAML with keys
// mirroring the field names below; every field has an explicit default and
// the effective configuration is echoed into each output file.

#include <cstddef>
#include <cstdint>
#include <map>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "losdof/error.hpp"
#include "losdof/model.hpp"

namespace losdof::cli {

/// Invalid configuration. The message carries `source:line:column` when the
/// offending value came from a file.
class ConfigError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

struct PowerLawExponents {
  double beta = 1.0;
  double gamma = 1.0;
  friend bool operator==(const PowerLawExponents&, const PowerLawExponents&) = default;
};

/// Explicit points followed by the power-law family A = n^beta, d = n^gamma
/// for every (exponent pair, n) combination, exponent pairs outermost.
struct GridConfig {
  std::vector<ClusterParams> points;
  std::vector<std::size_t> n;
  std::vector<PowerLawExponents> exponents;
  double lambda = 1.0;

  std::vector<ClusterParams> expand() const;
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct FredholmConfig {
  double m = 10.0;
  std::size_t p_max = 20;
  std::size_t k_max = 40;
  friend bool operator==(const FredholmConfig&, const FredholmConfig&) = default;
};

struct IdentityCase {
  std::size_t k = 1;
  double m = 1.0;
  friend bool operator==(const IdentityCase&, const IdentityCase&) = default;
};

struct VerifyConfig {
  std::vector<std::string> experiments{"fredholm_identity", "claim_sim", "bound_sweep", "concentration"};
  std::vector<IdentityCase> identity_cases{{1, 2.0}, {2, 2.0}, {3, 2.0}, {1, 5.0}, {2, 5.0}, {3, 5.0}};
  std::size_t identity_trials = 100000;
  std::size_t claim_trials = 5;
  std::size_t sweep_trials = 2;
  std::size_t concentration_trials = 30;
  GridConfig concentration_grid{{}, {100, 200, 400, 800}, {{1.6, 1.0}}, 1.0};
  /// Test hook: multiplies every d_k before the identity check. 1 disables it.
  double corrupt_dk_factor = 1.0;
  friend bool operator==(const VerifyConfig&, const VerifyConfig&) = default;
};

struct RunConfig {
  std::string experiment = "spectrum";
  ClusterParams scenario{500, 10000.0, 300.0, 0.1};
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  double threshold = 1.0;
  std::size_t quadrature_n = 0;  ///< 0 selects the default for each m
  bool bits = false;
  std::string out = "losdof-out";
  FredholmConfig fredholm;
  GridConfig sweep{{}, {100, 200, 400, 800}, {{1.6, 1.0}, {2.0, 1.2}}, 1.0};
  VerifyConfig verify;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline const std::vector<std::string>& known_experiments()
{
  static const std::vector<std::string> names{"spectrum", "fredholm", "verify", "sweep"};
  return names;
}

inline const std::vector<std::string>& known_verify_experiments()
{
  static const std::vector<std::string> names{"fredholm_identity", "claim_sim", "bound_sweep", "concentration"};
  return names;
}

struct SourceLocation {
  std::size_t line = 0;  ///< 1-based
  std::size_t column = 0;
};

/// Where each key path (e.g. "scenario.n", "verify.identity_cases[1].k") was
/// read from, so semantic errors can point at the file.
struct SourceMap {
  std::string source;
  std::map<std::string, SourceLocation> locations;
};

struct LoadedConfig {
  RunConfig config;
  SourceMap sources;
};

/// Keys absent from the text keep their defaults. Unknown keys, malformed
/// values and out-of-range values throw ConfigError.
LoadedConfig parse_config(const std::string& text, const std::string& source_name = "<config>");

/// Throws IoError if the file cannot be read.
LoadedConfig load_config(const std::string& path);

/// Semantic checks. `sources` (optional) turns key paths into file positions.
void validate_config(const RunConfig& config, const SourceMap* sources = nullptr);

nlohmann::ordered_json params_to_json(const ClusterParams& params);
nlohmann::ordered_json config_to_json(const RunConfig& config);

/// YAML text that parses back to an equal RunConfig.
std::string emit_config(const RunConfig& config);

}  // namespace losdof::cli
