#include "losdof/matrix.hpp"

#include <cmath>
#include <string>

#include "losdof/error.hpp"

namespace losdof {

std::string_view to_string(MatrixKind kind)
{
  switch (kind) {
    case MatrixKind::los: return "LOS";
    case MatrixKind::los_normalized: return "LOS_NORMALIZED";
    case MatrixKind::phase_factored: return "PHASE_FACTORED";
    case MatrixKind::kernel_g: return "KERNEL_G";
    case MatrixKind::vandermonde: return "VANDERMONDE";
    case MatrixKind::random_dft: return "RANDOM_DFT";
    case MatrixKind::gram: return "GRAM";
    case MatrixKind::generic: return "GENERIC";
  }
  return "UNKNOWN";
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, MatrixKind kind)
    : rows_(rows), cols_(cols), data_(rows * cols), kind_(kind)
{
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries,
                             MatrixKind kind)
    : rows_(rows), cols_(cols), data_(std::move(entries)), kind_(kind)
{
  if (data_.size() != rows * cols)
    throw DimensionMismatch("matrix of shape " + std::to_string(rows) + "x" +
                            std::to_string(cols) + " given " + std::to_string(data_.size()) +
                            " entries");
  for (const auto& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalError("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
  ComplexMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

ComplexMatrix ComplexMatrix::scaled(double factor, MatrixKind kind) const
{
  ComplexMatrix out(rows_, cols_, kind);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * factor;
  return out;
}

double ComplexMatrix::frobenius_norm_squared() const
{
  double sum = 0.0;
  for (const auto& v : data_) sum += std::norm(v);
  return sum;
}

}  // namespace losdof
