#pragma once

// Randomized experiments. Trial t of a run seeded with s uses positions drawn
// from derive_seed(s, t); multi-point experiments first derive a per-point
// seed derive_seed(s, point) and then per-trial seeds from that.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "losdof/fredholm.hpp"
#include "losdof/kernels.hpp"
#include "losdof/model.hpp"
#include "losdof/spectra.hpp"

namespace losdof {

using kernels::Exec;

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

McEstimate make_estimate(std::span<const double> samples, std::uint64_t seed);

/// Determinant of a k x k complex matrix by Gaussian elimination with partial
/// pivoting. `a` is row-major and is consumed.
cplx determinant(std::vector<cplx> a, std::size_t k);

/// det(G G*) for one k x k draw of G with y, z i.i.d. uniform (y drawn first).
/// The Gram entries are sum_l e^{-2 pi i m (y_j - y_j') z_l}, so the diagonal
/// is exactly k and the k = 1 case is exactly 1.
double subdeterminant_sample(std::size_t k, double m, std::uint64_t trial_seed);

/// Mean of det(G_{kxk} G_{kxk}*) over `trials` independent draws.
McEstimate expected_subdeterminant_mc(std::size_t k, double m, std::size_t trials,
                                      std::uint64_t seed, Exec exec = Exec::parallel);

/// (k!)^2 m^{-k} d_k.
double analytic_subdeterminant(std::size_t k, double m, double dk);

struct IdentityCheck {
  std::size_t k = 0;
  double m = 0.0;
  McEstimate mc;
  double analytic = 0.0;
  double z_score = 0.0;
  bool violated = false;  ///< |z| > 5
};

/// Compares the Monte Carlo estimate with (k!)^2 m^{-k} d_k from `table`,
/// which must have been built for the same m and extend to d_k.
IdentityCheck fredholm_identity_check(std::size_t k, double m, std::size_t trials,
                                      std::uint64_t seed, const FredholmTable& table,
                                      Exec exec = Exec::parallel);

enum class ChannelModel { los_normalized, phase_factored };

struct ClaimTrial {
  std::uint64_t seed = 0;
  double logdet_h = 0.0;  ///< log det(I + A A*), A = sqrt(nP) H or the phase-factored matrix
  double logdet_g = 0.0;  ///< log det(I + G G*)
  double ratio = 1.0;
  std::size_t dof_h = 0;
  std::size_t dof_g = 0;
  std::vector<double> eig_h;
  std::vector<double> eig_g;
};

struct ClaimReport {
  ClusterParams params;
  DerivedParams derived;
  bool in_regime = false;
  double threshold = 1.0;
  ChannelModel model = ChannelModel::los_normalized;
  std::vector<ClaimTrial> trials;
  McEstimate ratio;
};

ClaimReport claim_sim_experiment(const ClusterParams& params, std::size_t trials, std::uint64_t seed,
                                 double threshold = 1.0,
                                 ChannelModel model = ChannelModel::los_normalized,
                                 Exec exec = Exec::parallel);

/// log det(I + G G*) for `trials` independent position draws (n nodes, m >= 0).
std::vector<double> logdet_g_samples(std::size_t n, double m, std::size_t trials, std::uint64_t seed,
                                     Exec exec = Exec::parallel);

struct ConcentrationPoint {
  ClusterParams params;
  double m = 0.0;
  bool in_regime = false;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double std_dev = 0.0;
};

struct ConcentrationReport {
  std::vector<ConcentrationPoint> points;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  /// Slope of log std_dev against log n; absent when fewer than two points
  /// have non-zero spread.
  std::optional<double> growth_exponent;
};

/// trials must be >= 10.
ConcentrationReport concentration_experiment(std::span<const ClusterParams> grid, std::size_t trials,
                                             std::uint64_t seed, Exec exec = Exec::parallel);

struct SweepRecord {
  ClusterParams params;
  DerivedParams derived;
  bool in_regime = false;
  std::uint64_t seed = 0;
  double logdet_ph = 0.0;   ///< log det(I + P H H*)
  double logdet_h = 0.0;    ///< log det(I + nP H H*)
  double logdet_g = 0.0;    ///< log det(I + G G*)
  double dof_h = 0.0;       ///< eigenvalues of nP H H* >= threshold, mean over trials
  double dof_g = 0.0;
  double envelope_lower = 0.0;  ///< min(n, m / log m)
  double envelope_upper = 0.0;  ///< min(n, m) log n
  double k1 = 0.0;              ///< logdet_ph / envelope_lower
  double k2 = 0.0;              ///< logdet_g / envelope_upper
};

struct SweepResult {
  std::vector<SweepRecord> records;
  double threshold = 1.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

/// min(n, m / log m); for m <= e the logarithm is floored at 1.
double lower_envelope(std::size_t n, double m);
/// min(n, m) log n.
double upper_envelope(std::size_t n, double m);

/// Every grid point needs n >= 2 so that log n > 0.
SweepResult bound_sweep(std::span<const ClusterParams> grid, double threshold, std::size_t trials,
                        std::uint64_t seed, Exec exec = Exec::parallel);

}  // namespace losdof
