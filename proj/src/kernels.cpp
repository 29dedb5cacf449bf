#include "losdof/kernels.hpp"

#include "kernel_detail.hpp"
#include "losdof/error.hpp"

namespace losdof::kernels {

cplx unit_phase(double turns) { return detail::unit_phase_reduced(detail::frac(turns)); }

void fill_los(const LosGeometry& geo, std::span<cplx> out, Exec exec)
{
  if (out.size() != geo.x.size() * geo.w.size())
    throw DimensionMismatch("fill_los: output buffer has the wrong size");
  exec == Exec::serial ? serial::fill_los(geo, out) : omp::fill_los(geo, out);
}

void fill_bilinear_phase(const BilinearPhase& ph, std::span<cplx> out, Exec exec)
{
  if (out.size() != ph.y.size() * ph.z.size())
    throw DimensionMismatch("fill_bilinear_phase: output buffer has the wrong size");
  if ((!ph.row_turns.empty() && ph.row_turns.size() != ph.y.size()) ||
      (!ph.col_turns.empty() && ph.col_turns.size() != ph.z.size()))
    throw DimensionMismatch("fill_bilinear_phase: phase vectors do not match coordinates");
  exec == Exec::serial ? serial::fill_bilinear_phase(ph, out) : omp::fill_bilinear_phase(ph, out);
}

void gram(std::span<const cplx> mat, std::size_t rows, std::size_t cols, std::span<cplx> out,
          Exec exec)
{
  if (mat.size() != rows * cols || out.size() != rows * rows)
    throw DimensionMismatch("gram: buffer sizes do not match the stated shape");
  exec == Exec::serial ? serial::gram(mat, rows, cols, out) : omp::gram(mat, rows, cols, out);
}

ComplexMatrix gram(const ComplexMatrix& mat, Exec exec)
{
  ComplexMatrix out(mat.rows(), mat.rows(), MatrixKind::gram);
  gram(mat.data(), mat.rows(), mat.cols(), out.data(), exec);
  return out;
}

void fill_sinc_nystrom(std::span<const double> nodes, std::span<const double> sqrt_weights,
                       double m, std::span<double> out, Exec exec)
{
  if (sqrt_weights.size() != nodes.size() || out.size() != nodes.size() * nodes.size())
    throw DimensionMismatch("fill_sinc_nystrom: buffer sizes do not match the node count");
  exec == Exec::serial ? serial::fill_sinc_nystrom(nodes, sqrt_weights, m, out)
                       : omp::fill_sinc_nystrom(nodes, sqrt_weights, m, out);
}

}  // namespace losdof::kernels
