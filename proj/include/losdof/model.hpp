#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace losdof {

/// Two square clusters of area `area_A`, `dist_d` apart, `n` nodes each,
/// communicating at carrier wavelength `lambda`. SI units (meters).
struct ClusterParams {
  std::size_t n = 1;
  double area_A = 1.0;
  double dist_d = 1.0;
  double lambda = 1.0;

  /// Throws InvalidParameter unless n >= 1 and A, d, lambda are finite and > 0.
  void validate() const;

  /// sqrt(A) <= d <= A/lambda: the distant-cluster regime the bounds assume.
  /// Out-of-regime parameters are allowed; results carry this flag instead.
  bool in_regime() const;

  friend bool operator==(const ClusterParams&, const ClusterParams&) = default;
};

struct DerivedParams {
  double m = 0.0;  ///< spectral parameter A/(lambda d)
  double P = 0.0;  ///< per-node power (d + sqrt(A))^2 / n
};

DerivedParams derive(const ClusterParams& params);

/// Scenario growing with n as A = n^beta, d = n^gamma.
ClusterParams power_law_params(std::size_t n, double beta, double gamma, double lambda);

/// Normalized node coordinates in [0,1]: receivers (x, y), transmitters (w, z).
struct NodePositions {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> y;
  std::vector<double> z;
  std::uint64_t seed = 0;

  std::size_t size() const { return x.size(); }
};

/// Draws the four coordinate lists i.i.d. uniform, in the order x, w, y, z,
/// from a single Rng seeded with `seed`.
NodePositions sample_network(std::size_t n, std::uint64_t seed);
NodePositions sample_network(const ClusterParams& params, std::uint64_t seed);

/// Distance r_jk between receiver j and transmitter k.
double pairwise_distance(const NodePositions& pos, const ClusterParams& params, std::size_t j,
                         std::size_t k);

}  // namespace losdof
