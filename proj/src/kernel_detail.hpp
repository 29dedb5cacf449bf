#pragma once

// Per-element arithmetic shared by the serial and OpenMP kernels. Keeping it
// in one place is what makes the two variants bit-identical.

#include <cmath>
#include <numbers>
#include <vector>

#include "losdof/kernels.hpp"

namespace losdof::kernels::detail {

inline double frac(double turns) { return turns - std::floor(turns); }

inline cplx unit_phase_reduced(double reduced_turns)
{
  const double angle = 2.0 * std::numbers::pi * reduced_turns;
  return {std::cos(angle), std::sin(angle)};
}

inline cplx los_entry(const LosGeometry& g, std::size_t j, std::size_t k)
{
  const double along = g.dist + g.side * (g.x[j] + g.w[k]);
  const double across = g.y[j] - g.z[k];
  const double r = std::sqrt(along * along + g.area * across * across);
  return unit_phase_reduced(frac(r / g.lambda)) / r;
}

inline void los_row(const LosGeometry& g, std::size_t j, cplx* row)
{
  const std::size_t n = g.w.size();
  for (std::size_t k = 0; k < n; ++k) row[k] = los_entry(g, j, k);
}

inline void bilinear_row(const BilinearPhase& p, std::size_t j, cplx* row)
{
  const std::size_t n = p.z.size();
  const double rt = p.row_turns.empty() ? 0.0 : frac(p.row_turns[j]);
  const double mj = p.m * p.y[j];
  for (std::size_t k = 0; k < n; ++k) {
    const double ct = p.col_turns.empty() ? 0.0 : frac(p.col_turns[k]);
    row[k] = unit_phase_reduced(frac(rt + ct - frac(mj * p.z[k])));
  }
}

inline double sinc_value(double m, double x, double y)
{
  const double diff = x - y;
  if (diff == 0.0) return m;
  return std::sin(std::numbers::pi * m * diff) / (std::numbers::pi * diff);
}

inline void nystrom_row(std::span<const double> nodes, std::span<const double> sw, double m,
                        std::size_t i, double* row)
{
  const std::size_t n = nodes.size();
  for (std::size_t j = 0; j < n; ++j)
    row[j] = (sw[i] * sw[j]) * sinc_value(m, nodes[i], nodes[j]);
}

// M M* is accumulated from a transposed, real/imag split copy of M so the
// innermost loop runs over contiguous memory. Rows are processed in blocks of
// kGramBlock to reuse each loaded column.
constexpr std::size_t kGramBlock = 4;

struct GramOperands {
  std::span<const cplx> mat;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> tre;  // tre[k * rows + j] = Re M_jk
  std::vector<double> tim;
};

inline GramOperands gram_operands(std::span<const cplx> mat, std::size_t rows, std::size_t cols)
{
  GramOperands g{mat, rows, cols, std::vector<double>(rows * cols), std::vector<double>(rows * cols)};
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t k = 0; k < cols; ++k) {
      g.tre[k * rows + j] = mat[j * cols + k].real();
      g.tim[k * rows + j] = mat[j * cols + k].imag();
    }
  return g;
}

inline void gram_rows(const GramOperands& g, std::size_t i0, std::size_t i1, std::span<cplx> out)
{
  const std::size_t width = i1;
  const std::size_t nb = i1 - i0;
  std::vector<double> acc(2 * nb * width, 0.0);
  for (std::size_t k = 0; k < g.cols; ++k) {
    const double* tr = g.tre.data() + k * g.rows;
    const double* ti = g.tim.data() + k * g.rows;
    for (std::size_t b = 0; b < nb; ++b) {
      const cplx a = g.mat[(i0 + b) * g.cols + k];
      const double ar = a.real();
      const double ai = a.imag();
      double* re = acc.data() + 2 * b * width;
      double* im = re + width;
      const std::size_t jmax = i0 + b + 1;
      for (std::size_t j = 0; j < jmax; ++j) {
        re[j] += ar * tr[j] + ai * ti[j];
        im[j] += ai * tr[j] - ar * ti[j];
      }
    }
  }
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t i = i0 + b;
    const double* re = acc.data() + 2 * b * width;
    const double* im = re + width;
    for (std::size_t j = 0; j <= i; ++j) {
      out[i * g.rows + j] = {re[j], im[j]};
      out[j * g.rows + i] = {re[j], -im[j]};
    }
  }
}

}  // namespace losdof::kernels::detail
