#include "kernel_detail.hpp"

namespace losdof::kernels::serial {

void fill_los(const LosGeometry& geo, std::span<cplx> out)
{
  const std::size_t n = geo.x.size();
  for (std::size_t j = 0; j < n; ++j) detail::los_row(geo, j, out.data() + j * geo.w.size());
}

void fill_bilinear_phase(const BilinearPhase& ph, std::span<cplx> out)
{
  const std::size_t n = ph.y.size();
  for (std::size_t j = 0; j < n; ++j) detail::bilinear_row(ph, j, out.data() + j * ph.z.size());
}

void gram(std::span<const cplx> mat, std::size_t rows, std::size_t cols, std::span<cplx> out)
{
  const auto ops = detail::gram_operands(mat, rows, cols);
  for (std::size_t i0 = 0; i0 < rows; i0 += detail::kGramBlock)
    detail::gram_rows(ops, i0, std::min(rows, i0 + detail::kGramBlock), out);
}

void fill_sinc_nystrom(std::span<const double> nodes, std::span<const double> sqrt_weights,
                       double m, std::span<double> out)
{
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i)
    detail::nystrom_row(nodes, sqrt_weights, m, i, out.data() + i * n);
}

}  // namespace losdof::kernels::serial
