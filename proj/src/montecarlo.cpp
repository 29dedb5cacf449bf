#include "losdof/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "losdof/channel.hpp"
#include "losdof/error.hpp"
#include "losdof/rng.hpp"
#include "losdof/stats.hpp"

namespace losdof {

McEstimate make_estimate(std::span<const double> samples, std::uint64_t seed)
{
  const auto s = summarize(samples);
  return {s.mean, s.std_error, samples.size(), seed};
}

cplx determinant(std::vector<cplx> a, std::size_t k)
{
  if (a.size() != k * k) throw DimensionMismatch("determinant: buffer is not k x k");
  cplx det = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r * k + col]) > std::abs(a[pivot * k + col])) pivot = r;
    if (a[pivot * k + col] == cplx(0.0)) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(a[col * k + c], a[pivot * k + c]);
      det = -det;
    }
    const cplx diag = a[col * k + col];
    det *= diag;
    for (std::size_t r = col + 1; r < k; ++r) {
      const cplx factor = a[r * k + col] / diag;
      for (std::size_t c = col; c < k; ++c) a[r * k + c] -= factor * a[col * k + c];
    }
  }
  return det;
}

double subdeterminant_sample(std::size_t k, double m, std::uint64_t trial_seed)
{
  Rng rng(trial_seed);
  std::vector<double> y(k), z(k);
  for (auto& v : y) v = rng.uniform01();
  for (auto& v : z) v = rng.uniform01();

  std::vector<cplx> gram(k * k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t jp = 0; jp < k; ++jp) {
      cplx sum = 0.0;
      for (std::size_t l = 0; l < k; ++l) sum += kernels::unit_phase(-m * (y[j] - y[jp]) * z[l]);
      gram[j * k + jp] = sum;
    }
  // Hermitian PSD, so the determinant is real and >= 0 up to rounding.
  return determinant(std::move(gram), k).real();
}

McEstimate expected_subdeterminant_mc(std::size_t k, double m, std::size_t trials,
                                      std::uint64_t seed, Exec exec)
{
  if (k < 1) throw InvalidParameter("subdeterminant size k must be >= 1");
  if (trials < 1) throw InvalidParameter("trials must be >= 1");
  const auto samples = kernels::map_trials(
      trials, exec, [&](std::size_t t) { return subdeterminant_sample(k, m, derive_seed(seed, t)); });
  return make_estimate(samples, seed);
}

double analytic_subdeterminant(std::size_t k, double m, double dk)
{
  if (!(m > 0.0)) throw InvalidParameter("m must be > 0");
  const double kk = static_cast<double>(k);
  return std::exp(2.0 * std::lgamma(kk + 1.0) - kk * std::log(m)) * dk;
}

IdentityCheck fredholm_identity_check(std::size_t k, double m, std::size_t trials,
                                      std::uint64_t seed, const FredholmTable& table, Exec exec)
{
  if (table.m != m)
    throw InvalidParameter("Fredholm table was built for m = " + std::to_string(table.m) +
                           ", not " + std::to_string(m));
  if (table.dk.size() <= k)
    throw InvalidParameter("Fredholm table stops before d_" + std::to_string(k));

  IdentityCheck check;
  check.k = k;
  check.m = m;
  check.mc = expected_subdeterminant_mc(k, m, trials, seed, exec);
  check.analytic = analytic_subdeterminant(k, m, table.dk[k]);
  const double diff = check.mc.mean - check.analytic;
  if (check.mc.std_error > 0.0) {
    check.z_score = diff / check.mc.std_error;
  } else {
    // Zero-variance estimator (k = 1): agreement is up to quadrature rounding.
    check.z_score = std::abs(diff) <= 1e-9 * std::max(1.0, std::abs(check.analytic))
                        ? 0.0
                        : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  check.violated = !(std::abs(check.z_score) <= 5.0);
  return check;
}

ClaimReport claim_sim_experiment(const ClusterParams& params, std::size_t trials, std::uint64_t seed,
                                 double threshold, ChannelModel model, Exec exec)
{
  if (trials < 1) throw InvalidParameter("trials must be >= 1");
  ClaimReport report;
  report.params = params;
  report.derived = derive(params);
  report.in_regime = params.in_regime();
  report.threshold = threshold;
  report.model = model;

  const Exec inner = kernels::nested(exec, trials);
  report.trials = kernels::map_indices<ClaimTrial>(trials, exec, [&](std::size_t t) {
    const auto trial_seed = derive_seed(seed, t);
    const auto pos = sample_network(params, trial_seed);
    const ComplexMatrix a =
        model == ChannelModel::los_normalized
            ? normalize_los(build_los_matrix(pos, params, inner), report.derived, params.n)
            : build_phase_factored(pos, params, inner).matrix;
    const ComplexMatrix g = build_g_matrix(pos, report.derived.m, inner);
    const auto cmp = compare_spectra(gram_spectrum(a, {false, inner}),
                                     gram_spectrum(g, {false, inner}), threshold);
    return ClaimTrial{trial_seed, cmp.logdet_a, cmp.logdet_b, cmp.ratio, cmp.dof_a,
                      cmp.dof_b,  cmp.eigenvalues_a, cmp.eigenvalues_b};
  });

  std::vector<double> ratios;
  for (const auto& t : report.trials) ratios.push_back(t.ratio);
  report.ratio = make_estimate(ratios, seed);
  return report;
}

std::vector<double> logdet_g_samples(std::size_t n, double m, std::size_t trials, std::uint64_t seed,
                                     Exec exec)
{
  const Exec inner = kernels::nested(exec, trials);
  return kernels::map_trials(trials, exec, [&](std::size_t t) {
    const auto pos = sample_network(n, derive_seed(seed, t));
    return log_det_identity_plus_gram(build_g_matrix(pos, m, inner), 1.0, inner);
  });
}

ConcentrationReport concentration_experiment(std::span<const ClusterParams> grid, std::size_t trials,
                                             std::uint64_t seed, Exec exec)
{
  if (trials < 10) throw InvalidParameter("concentration experiment needs >= 10 trials");
  ConcentrationReport report;
  report.trials = trials;
  report.seed = seed;
  std::vector<double> log_n, log_sd;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& params = grid[i];
    ConcentrationPoint pt;
    pt.params = params;
    pt.m = derive(params).m;
    pt.in_regime = params.in_regime();
    pt.seed = derive_seed(seed, i);
    const auto s = summarize(logdet_g_samples(params.n, pt.m, trials, pt.seed, exec));
    pt.mean = s.mean;
    pt.std_dev = s.std_dev;
    if (pt.std_dev > 0.0) {
      log_n.push_back(std::log(static_cast<double>(params.n)));
      log_sd.push_back(std::log(pt.std_dev));
    }
    report.points.push_back(pt);
  }
  report.growth_exponent = least_squares_slope(log_n, log_sd);
  return report;
}

double lower_envelope(std::size_t n, double m)
{
  return std::min(static_cast<double>(n), m / std::max(std::log(m), 1.0));
}

double upper_envelope(std::size_t n, double m)
{
  return std::min(static_cast<double>(n), m) * std::log(static_cast<double>(n));
}

SweepResult bound_sweep(std::span<const ClusterParams> grid, double threshold, std::size_t trials,
                        std::uint64_t seed, Exec exec)
{
  if (grid.empty()) throw InvalidParameter("sweep grid is empty");
  if (trials < 1) throw InvalidParameter("trials must be >= 1");
  for (const auto& p : grid)
    if (p.n < 2) throw InvalidParameter("sweep points need n >= 2");

  SweepResult result;
  result.threshold = threshold;
  result.trials = trials;
  result.seed = seed;

  struct TrialValues {
    double logdet_ph, logdet_h, logdet_g, dof_h, dof_g;
  };

  for (std::size_t i = 0; i < grid.size(); ++i) {
    SweepRecord rec;
    rec.params = grid[i];
    rec.derived = derive(grid[i]);
    rec.in_regime = grid[i].in_regime();
    rec.seed = derive_seed(seed, i);
    const std::size_t n = rec.params.n;

    const Exec inner = kernels::nested(exec, trials);
    const auto values = kernels::map_indices<TrialValues>(trials, exec, [&](std::size_t t) {
      const auto pos = sample_network(rec.params, derive_seed(rec.seed, t));
      const auto spec_h = gram_spectrum(
          normalize_los(build_los_matrix(pos, rec.params, inner), rec.derived, n), {false, inner});
      const auto spec_g = gram_spectrum(build_g_matrix(pos, rec.derived.m, inner), {false, inner});
      return TrialValues{log_det_capacity(scaled(spec_h, 1.0 / static_cast<double>(n))),
                         log_det_capacity(spec_h), log_det_capacity(spec_g),
                         static_cast<double>(effective_dof(spec_h, threshold)),
                         static_cast<double>(effective_dof(spec_g, threshold))};
    });

    auto mean_of = [&](double TrialValues::*field) {
      std::vector<double> v;
      for (const auto& tv : values) v.push_back(tv.*field);
      return summarize(v).mean;
    };
    rec.logdet_ph = mean_of(&TrialValues::logdet_ph);
    rec.logdet_h = mean_of(&TrialValues::logdet_h);
    rec.logdet_g = mean_of(&TrialValues::logdet_g);
    rec.dof_h = mean_of(&TrialValues::dof_h);
    rec.dof_g = mean_of(&TrialValues::dof_g);
    rec.envelope_lower = lower_envelope(n, rec.derived.m);
    rec.envelope_upper = upper_envelope(n, rec.derived.m);
    rec.k1 = rec.logdet_ph / rec.envelope_lower;
    rec.k2 = rec.logdet_g / rec.envelope_upper;
    result.records.push_back(rec);
  }
  return result;
}

}  // namespace losdof
