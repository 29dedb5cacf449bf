#include "kernel_detail.hpp"

namespace losdof::kernels::omp {

void fill_los(const LosGeometry& geo, std::span<cplx> out)
{
  const auto n = static_cast<long long>(geo.x.size());
  const std::size_t cols = geo.w.size();
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < n; ++j)
    detail::los_row(geo, static_cast<std::size_t>(j), out.data() + static_cast<std::size_t>(j) * cols);
}

void fill_bilinear_phase(const BilinearPhase& ph, std::span<cplx> out)
{
  const auto n = static_cast<long long>(ph.y.size());
  const std::size_t cols = ph.z.size();
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < n; ++j)
    detail::bilinear_row(ph, static_cast<std::size_t>(j), out.data() + static_cast<std::size_t>(j) * cols);
}

void gram(std::span<const cplx> mat, std::size_t rows, std::size_t cols, std::span<cplx> out)
{
  const auto ops = detail::gram_operands(mat, rows, cols);
  const auto blocks = static_cast<long long>((rows + detail::kGramBlock - 1) / detail::kGramBlock);
  // Later blocks cover longer rows of the triangle, hence dynamic scheduling.
#pragma omp parallel for schedule(dynamic)
  for (long long b = 0; b < blocks; ++b) {
    const std::size_t i0 = static_cast<std::size_t>(b) * detail::kGramBlock;
    detail::gram_rows(ops, i0, std::min(rows, i0 + detail::kGramBlock), out);
  }
}

void fill_sinc_nystrom(std::span<const double> nodes, std::span<const double> sqrt_weights,
                       double m, std::span<double> out)
{
  const std::size_t n = nodes.size();
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i)
    detail::nystrom_row(nodes, sqrt_weights, m, static_cast<std::size_t>(i),
                        out.data() + static_cast<std::size_t>(i) * n);
}

}  // namespace losdof::kernels::omp
