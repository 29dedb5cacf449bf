#include "losdof/channel.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "losdof/error.hpp"
#include "losdof/rng.hpp"

namespace losdof {

ComplexMatrix build_los_matrix(const NodePositions& pos, const ClusterParams& params, Exec exec)
{
  params.validate();
  if (pos.size() != params.n)
    throw DimensionMismatch("positions hold " + std::to_string(pos.size()) + " nodes, params say " +
                            std::to_string(params.n));
  const kernels::LosGeometry geo{pos.x,         pos.w,          pos.y,         pos.z,
                                 std::sqrt(params.area_A), params.area_A, params.dist_d,
                                 params.lambda};
  ComplexMatrix h(params.n, params.n, MatrixKind::los);
  kernels::fill_los(geo, h.data(), exec);
  return h;
}

ComplexMatrix normalize_los(const ComplexMatrix& h, const DerivedParams& derived, std::size_t n)
{
  if (h.kind() != MatrixKind::los)
    throw KindMismatch("normalize_los expects an LOS matrix, got " + std::string(to_string(h.kind())));
  if (!(derived.P > 0.0)) throw InvalidParameter("power P must be > 0");
  return h.scaled(std::sqrt(static_cast<double>(n) * derived.P), MatrixKind::los_normalized);
}

ComplexMatrix build_g_matrix(const NodePositions& pos, double m, Exec exec)
{
  if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidParameter("spectral parameter m must be >= 0");
  const std::size_t n = pos.size();
  ComplexMatrix g(n, n, MatrixKind::kernel_g);
  // e^{-2 pi i m y z}: zero row/column phases.
  kernels::fill_bilinear_phase({{}, {}, pos.y, pos.z, m}, g.data(), exec);
  return g;
}

PhaseFactoredChannel build_phase_factored(const NodePositions& pos, const ClusterParams& params,
                                          Exec exec)
{
  params.validate();
  const std::size_t n = pos.size();
  const double side = std::sqrt(params.area_A);
  const double curvature = params.area_A / params.dist_d;
  const auto m = derive(params).m;

  PhaseFactors ph{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    ph.u[j] = (params.dist_d / 2 + side * pos.x[j] + curvature * pos.y[j] * pos.y[j] / 2) / params.lambda;
    ph.v[j] = (params.dist_d / 2 + side * pos.w[j] + curvature * pos.z[j] * pos.z[j] / 2) / params.lambda;
  }
  ComplexMatrix h(n, n, MatrixKind::phase_factored);
  kernels::fill_bilinear_phase({ph.u, ph.v, pos.y, pos.z, m}, h.data(), exec);
  return {std::move(h), std::move(ph)};
}

ComplexMatrix build_vandermonde_variant(std::span<const double> z, double m, std::size_t n)
{
  if (!(m > 0.0)) throw InvalidParameter("spectral parameter m must be > 0");
  if (z.size() != n) throw DimensionMismatch("Vandermonde variant needs n transmitter coordinates");
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = static_cast<double>(j) / static_cast<double>(n);
  ComplexMatrix v(n, n, MatrixKind::vandermonde);
  kernels::fill_bilinear_phase({{}, {}, y, z, m}, v.data(), Exec::serial);
  return v;
}

ComplexMatrix build_dft_columns(std::size_t n, std::span<const std::size_t> frequencies)
{
  if (n < 1) throw InvalidParameter("DFT size must be >= 1");
  ComplexMatrix f(n, frequencies.size(), MatrixKind::random_dft);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < frequencies.size(); ++k) {
      // Integer reduction keeps the phase exact.
      const std::size_t residue = (j * frequencies[k]) % n;
      f(j, k) = kernels::unit_phase(-static_cast<double>(residue) / static_cast<double>(n));
    }
  return f;
}

std::vector<std::size_t> draw_dft_frequencies(std::size_t n, std::size_t count, std::uint64_t seed)
{
  if (count < 1 || count > n)
    throw InvalidParameter("column count must lie in [1, n]; got " + std::to_string(count) +
                           " for n = " + std::to_string(n));
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{1});
  Rng rng(seed);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count; ++i) {
    const auto pick = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[pick]);
  }
  pool.resize(count);
  return pool;
}

ComplexMatrix build_random_dft_variant(std::size_t n, std::size_t m_count, std::uint64_t seed)
{
  const auto freqs = draw_dft_frequencies(n, m_count, seed);
  return build_dft_columns(n, freqs);
}

}  // namespace losdof
