#include "losdof/fredholm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kernel_detail.hpp"
#include "losdof/error.hpp"
#include "losdof/quadrature.hpp"

namespace losdof {

double kernel_value(const SincKernel& kernel, double x, double y)
{
  return kernels::detail::sinc_value(kernel.m, x, y);
}

std::size_t default_quadrature_size(double m)
{
  const double per_unit = 40.0 * std::ceil(m);
  const auto scaled = per_unit >= 2000.0 ? std::size_t{2000} : static_cast<std::size_t>(per_unit);
  return std::max<std::size_t>(scaled, 400);
}

NystromDiscretization discretize(const SincKernel& kernel, std::size_t n, kernels::Exec exec)
{
  if (!(kernel.m > 0.0)) throw InvalidParameter("sinc bandwidth m must be > 0");
  if (n < 2) throw InvalidParameter("Nystrom discretization needs at least 2 nodes");
  auto rule = gauss_legendre_unit(n);
  std::vector<double> sqrt_w(n);
  for (std::size_t i = 0; i < n; ++i) sqrt_w[i] = std::sqrt(rule.weights[i]);

  NystromDiscretization disc{kernel.m, std::move(rule.nodes), std::move(rule.weights),
                             std::vector<double>(n * n)};
  kernels::fill_sinc_nystrom(disc.nodes, sqrt_w, kernel.m, disc.matrix, exec);
  return disc;
}

std::vector<double> operator_eigenvalues(const NystromDiscretization& disc, double eps)
{
  const auto n = static_cast<Eigen::Index>(disc.size());
  const Eigen::Map<const Eigen::MatrixXd> mat(disc.matrix.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("symmetric eigensolver failed on the Nystrom matrix");
  std::vector<double> mu(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::reverse(mu.begin(), mu.end());
  if (!mu.empty() && (mu.front() > 1.0 + eps || mu.back() < -eps))
    throw DiscretizationTooCoarse("sinc operator eigenvalue range [" + std::to_string(mu.back()) +
                                  ", " + std::to_string(mu.front()) + "] exceeds [0, 1] by more than " +
                                  std::to_string(eps) + " with N = " + std::to_string(disc.size()));
  return mu;
}

std::vector<wide_real> iterated_traces(std::span<const double> mu, std::size_t p_max)
{
  std::vector<wide_real> traces(p_max + 1, wide_real(0));
  traces[0] = wide_real(mu.size());
  for (double value : mu) {
    const wide_real v(value);
    wide_real power(1);
    for (std::size_t p = 1; p <= p_max; ++p) {
      power *= v;
      traces[p] += power;
    }
  }
  return traces;
}

std::vector<double> fredholm_coefficients(std::span<const wide_real> traces, std::size_t k_max)
{
  if (k_max > 0 && traces.size() <= k_max)
    throw InvalidParameter("traces must extend to p = " + std::to_string(k_max));
  std::vector<wide_real> d(k_max + 1);
  d[0] = 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    wide_real sum(0);
    for (std::size_t p = 1; p <= k; ++p) {
      const wide_real term = traces[p] * d[k - p];
      if (p % 2 == 1)
        sum += term;
      else
        sum -= term;
    }
    d[k] = sum / k;
  }
  std::vector<double> out(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) out[k] = static_cast<double>(d[k]);
  return out;
}

std::vector<double> fredholm_coefficients(std::span<const double> traces, std::size_t k_max)
{
  std::vector<wide_real> wide(traces.begin(), traces.end());
  return fredholm_coefficients(std::span<const wide_real>(wide), k_max);
}

std::vector<double> elementary_symmetric_all(std::span<const double> mu, std::size_t k_max)
{
  std::vector<double> e(k_max + 1, 0.0);
  e[0] = 1.0;
  std::size_t seen = 0;
  for (double v : mu) {
    ++seen;
    for (std::size_t k = std::min(seen, k_max); k >= 1; --k) e[k] += v * e[k - 1];
  }
  return e;
}

double elementary_symmetric(std::span<const double> mu, std::size_t k)
{
  if (k > mu.size()) return 0.0;
  return elementary_symmetric_all(mu, k)[k];
}

DecayFit decay_fit(std::span<const double> mu, double m, double floor)
{
  if (!(m > 0.0)) throw InvalidParameter("decay_fit needs m > 0");
  if (static_cast<double>(mu.size()) <= 2.0 * m)
    throw InvalidParameter("decay_fit needs more than 2m eigenvalues");
  if (!std::is_sorted(mu.begin(), mu.end(), std::greater<>()))
    throw InvalidParameter("decay_fit expects eigenvalues in descending order");

  DecayFit fit;
  double c = 1.0;
  for (int iter = 0; iter < 32; ++iter) {
    const auto first = static_cast<std::size_t>(std::floor(c * m)) + 1;
    std::size_t last = first - 1;
    while (last < mu.size() && mu[last] >= floor) ++last;  // mu[last] is k = last + 1
    if (last < first + 2)
      throw DecayViolation("fewer than three tail eigenvalues above " + std::to_string(floor) +
                           " beyond k = " + std::to_string(first - 1));
    if (first == fit.first_k && last == fit.last_k) break;

    const double count = static_cast<double>(last - first + 1);
    double kbar = 0.0;
    double lbar = 0.0;
    for (std::size_t k = first; k <= last; ++k) {
      kbar += static_cast<double>(k);
      lbar += std::log(mu[k - 1]);
    }
    kbar /= count;
    lbar /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = first; k <= last; ++k) {
      const double dk = static_cast<double>(k) - kbar;
      sxy += dk * (std::log(mu[k - 1]) - lbar);
      sxx += dk * dk;
    }
    const double delta = -sxy / sxx;
    if (!(delta > 0.0))
      throw DecayViolation("fitted decay rate " + std::to_string(delta) + " is not positive");

    double envelope = -std::numeric_limits<double>::infinity();
    for (std::size_t k = first; k <= last; ++k)
      envelope = std::max(envelope, std::log(mu[k - 1]) + delta * static_cast<double>(k));
    c = envelope / (delta * m);
    fit = {c, delta, first, last};
  }
  return fit;
}

double dk_tail_bound(std::size_t k, double m, double c, double delta, double big_c)
{
  if (!(c > 0.0) || !(delta > 0.0) || !(big_c > 0.0))
    throw InvalidParameter("tail-bound constants c, delta, C must be > 0");
  const double kk = static_cast<double>(k);
  const double excess = kk - c * m;
  if (excess <= 0.0) return 1.0;
  return std::exp(kk * std::log(big_c) - delta * excess * excess / 2.0);
}

double logdet_upper_bound(double n, double m, double c)
{
  if (!(n >= 1.0)) throw InvalidParameter("n must be >= 1");
  return (c * m + 1.0) * std::log(n);
}

std::vector<double> resolved_eigenvalues(std::span<const double> mu, std::size_t quadrature_n)
{
  const double scale = mu.empty() ? 1.0 : std::max(1.0, std::abs(mu.front()));
  const double cutoff =
      static_cast<double>(std::max<std::size_t>(quadrature_n, 1)) * std::numeric_limits<double>::epsilon() * scale;
  std::vector<double> out(mu.begin(), mu.end());
  for (double& v : out)
    if (v < cutoff) v = 0.0;
  return out;
}

FredholmTable build_fredholm_table(double m, std::size_t quadrature_n, std::size_t p_max,
                                   std::size_t k_max, kernels::Exec exec)
{
  FredholmTable table;
  table.m = m;
  table.quadrature_n = quadrature_n == 0 ? default_quadrature_size(m) : quadrature_n;
  table.mu = operator_eigenvalues(discretize(SincKernel{m}, table.quadrature_n, exec));

  const auto resolved = resolved_eigenvalues(table.mu, table.quadrature_n);
  const auto wide = iterated_traces(resolved, std::max(p_max, k_max));
  table.traces.resize(p_max + 1);
  for (std::size_t p = 0; p <= p_max; ++p) table.traces[p] = static_cast<double>(wide[p]);
  table.dk = elementary_symmetric_all(resolved, k_max);
  table.dk_trace = fredholm_coefficients(std::span<const wide_real>(wide), k_max);

  table.fit = decay_fit(table.mu, m);
  table.tail_constant = std::max(1.0, 1.0 / (1.0 - std::exp(-table.fit.delta)));
  return table;
}

}  // namespace losdof
