#pragma once

// Sinc-kernel operator on [0,1] and the Fredholm quantities built from its
// spectrum: iterated traces A_p, determinant coefficients d_k, and the tail
// decay of the eigenvalues.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstddef>
#include <span>
#include <vector>

#include "losdof/kernels.hpp"

namespace losdof {

/// 113-bit significand. The trace recurrence for d_k cancels catastrophically
/// in double precision (errors of order 1e5 relative already at length 30).
using wide_real = boost::multiprecision::cpp_bin_float_quad;

/// K(x, y) = sin(pi m (x - y)) / (pi (x - y)), with K(x, x) = m, so that
/// the trace of the operator is exactly m.
struct SincKernel {
  double m = 1.0;
};

double kernel_value(const SincKernel& kernel, double x, double y);

struct NystromDiscretization {
  double m = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> matrix;  ///< row-major N x N, sqrt(w_i) K(x_i, x_j) sqrt(w_j)

  std::size_t size() const { return nodes.size(); }
  double operator()(std::size_t i, std::size_t j) const { return matrix[i * nodes.size() + j]; }
};

/// max(min(40 * ceil(m), 2000), 400) nodes.
std::size_t default_quadrature_size(double m);

/// Gauss-Legendre Nystrom discretization with n nodes (n >= 2).
NystromDiscretization discretize(const SincKernel& kernel, std::size_t n,
                                 kernels::Exec exec = kernels::Exec::parallel);

/// Descending eigenvalues of the discretized operator. Throws
/// DiscretizationTooCoarse if any falls outside [-eps, 1 + eps].
std::vector<double> operator_eigenvalues(const NystromDiscretization& disc, double eps = 1e-6);

/// A_p = sum_i mu_i^p for p = 0..p_max (A_0 is the list length), accumulated
/// in wide precision.
std::vector<wide_real> iterated_traces(std::span<const double> mu, std::size_t p_max);

/// d_0 = 1, k d_k = sum_{p=1}^{k} (-1)^{p-1} A_p d_{k-p}, for k = 0..k_max.
/// `traces[p]` holds A_p and must extend to at least k_max.
std::vector<double> fredholm_coefficients(std::span<const wide_real> traces, std::size_t k_max);
std::vector<double> fredholm_coefficients(std::span<const double> traces, std::size_t k_max);

/// e_0..e_{k_max} of mu by the one-pass expansion of prod_i (1 + mu_i t).
/// e_k = 0 for k > mu.size().
std::vector<double> elementary_symmetric_all(std::span<const double> mu, std::size_t k_max);
double elementary_symmetric(std::span<const double> mu, std::size_t k);

/// Fit of mu_k <= exp(-delta (k - c m)) over the eigenvalue tail.
struct DecayFit {
  double c = 0.0;
  double delta = 0.0;
  std::size_t first_k = 0;  ///< 1-based, inclusive
  std::size_t last_k = 0;   ///< 1-based, inclusive
};

/// Least-squares slope of log mu_k against k gives delta; c is then the
/// smallest value for which the bound holds at every fitted k. The tail is
/// k > c m with mu_k >= floor, re-selected until it stops moving.
/// Throws DecayViolation if delta <= 0 or fewer than three tail points exist.
DecayFit decay_fit(std::span<const double> mu, double m, double floor = 1e-11);

/// 1 if k <= c m, else C^k exp(-delta (k - c m)^2 / 2).
double dk_tail_bound(std::size_t k, double m, double c, double delta, double big_c);

/// (c m + 1) log n for n >= 1; the O(1) remainder is not included.
double logdet_upper_bound(double n, double m, double c);

/// Eigenvalues below the discretization's resolution are set to zero. Values
/// there are rounding noise of either sign, and keeping them would stall the
/// decay of d_k at the noise level.
std::vector<double> resolved_eigenvalues(std::span<const double> mu, std::size_t quadrature_n);

struct FredholmTable {
  double m = 0.0;
  std::size_t quadrature_n = 0;
  std::vector<double> mu;        ///< raw Nystrom eigenvalues, descending
  std::vector<double> traces;    ///< A_0..A_{p_max} of the resolved eigenvalues
  std::vector<double> dk;        ///< d_0..d_{k_max}, product expansion
  std::vector<double> dk_trace;  ///< d_0..d_{k_max}, trace recurrence (cross-check)
  DecayFit fit;
  double tail_constant = 1.0;    ///< C = max(1, 1 / (1 - e^{-delta}))
};

/// quadrature_n = 0 selects default_quadrature_size(m).
FredholmTable build_fredholm_table(double m, std::size_t quadrature_n, std::size_t p_max,
                                   std::size_t k_max, kernels::Exec exec = kernels::Exec::parallel);

}  // namespace losdof
