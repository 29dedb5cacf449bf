#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace losdof {

using cplx = std::complex<double>;

/// Which construction produced a matrix. Carried through to spectra and
/// output files so results can be traced back to their source.
enum class MatrixKind {
  los,             ///< h_jk = e^{2 pi i r/lambda} / r
  los_normalized,  ///< sqrt(nP) h_jk
  phase_factored,  ///< quadratic-phase approximation of the LOS matrix
  kernel_g,        ///< g_jk = e^{-2 pi i m y_j z_k}
  vandermonde,
  random_dft,
  gram,            ///< M M* of some other matrix
  generic,
};

std::string_view to_string(MatrixKind kind);

/// Dense row-major complex matrix tagged with the kind of matrix it holds.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols, MatrixKind kind = MatrixKind::generic);
  /// Takes ownership of row-major `entries`; throws DimensionMismatch if the
  /// size is not rows*cols and NumericalError if any entry is non-finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries,
                MatrixKind kind = MatrixKind::generic);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  MatrixKind kind() const { return kind_; }

  cplx operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  /// Returns a copy with every entry multiplied by `factor`.
  ComplexMatrix scaled(double factor, MatrixKind kind) const;

  /// Sum of |entries|^2, i.e. trace(M M*).
  double frobenius_norm_squared() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
  MatrixKind kind_ = MatrixKind::generic;
};

}  // namespace losdof
