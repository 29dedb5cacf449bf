#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference in
// losdof::kernels::serial and an OpenMP variant in losdof::kernels::omp with
// identical per-element arithmetic, so the two produce bit-identical output;
// the tests hold them to that and bench/ compares their speed.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "losdof/matrix.hpp"

namespace losdof::kernels {

enum class Exec { serial, parallel };

/// e^{2 pi i turns}, with the argument reduced mod 1 before scaling by 2 pi.
cplx unit_phase(double turns);

/// Inputs for the LOS fill. Coordinates are the normalized node positions.
struct LosGeometry {
  std::span<const double> x, w, y, z;
  double side = 1.0;  ///< sqrt(A)
  double area = 1.0;  ///< A
  double dist = 1.0;  ///< d
  double lambda = 1.0;
};

/// Inputs for unimodular matrices e^{2 pi i (row_turns_j + col_turns_k - m y_j z_k)}.
/// Empty turn spans mean zero.
struct BilinearPhase {
  std::span<const double> row_turns, col_turns;
  std::span<const double> y, z;
  double m = 0.0;
};

namespace serial {
void fill_los(const LosGeometry& geo, std::span<cplx> out);
void fill_bilinear_phase(const BilinearPhase& ph, std::span<cplx> out);
void gram(std::span<const cplx> mat, std::size_t rows, std::size_t cols, std::span<cplx> out);
void fill_sinc_nystrom(std::span<const double> nodes, std::span<const double> sqrt_weights,
                       double m, std::span<double> out);
}  // namespace serial

namespace omp {
void fill_los(const LosGeometry& geo, std::span<cplx> out);
void fill_bilinear_phase(const BilinearPhase& ph, std::span<cplx> out);
void gram(std::span<const cplx> mat, std::size_t rows, std::size_t cols, std::span<cplx> out);
void fill_sinc_nystrom(std::span<const double> nodes, std::span<const double> sqrt_weights,
                       double m, std::span<double> out);
}  // namespace omp

void fill_los(const LosGeometry& geo, std::span<cplx> out, Exec exec);
void fill_bilinear_phase(const BilinearPhase& ph, std::span<cplx> out, Exec exec);

/// Hermitian M M* of a row-major rows x cols matrix into a rows x rows buffer.
void gram(std::span<const cplx> mat, std::size_t rows, std::size_t cols, std::span<cplx> out,
          Exec exec);
ComplexMatrix gram(const ComplexMatrix& mat, Exec exec);

/// Symmetrized Nystrom matrix sqrt(w_i) K(x_i, x_j) sqrt(w_j) of the sinc kernel.
void fill_sinc_nystrom(std::span<const double> nodes, std::span<const double> sqrt_weights,
                       double m, std::span<double> out, Exec exec);

/// Evaluates fn(i) for i in [0, count) into a vector, in parallel when asked.
/// Each slot is written by exactly one iteration, so the result does not depend
/// on scheduling. The first exception thrown by any iteration is rethrown.
template <class T, class Fn>
std::vector<T> map_indices(std::size_t count, Exec exec, Fn&& fn)
{
  std::vector<T> out(count);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr failure;
  std::mutex guard;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <class Fn>
std::vector<double> map_trials(std::size_t trials, Exec exec, Fn&& fn)
{
  return map_indices<double>(trials, exec, std::forward<Fn>(fn));
}

/// Exec for work nested inside a map_indices body: the outer loop already
/// owns the threads.
inline Exec nested(Exec outer, std::size_t outer_count)
{
  return (outer == Exec::parallel && outer_count > 1) ? Exec::serial : outer;
}

}  // namespace losdof::kernels
