#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "losdof/kernels.hpp"
#include "losdof/matrix.hpp"
#include "losdof/model.hpp"

namespace losdof {

/// Receiver (u) and transmitter (v) phases, in turns, of the phase-factored
/// channel.
struct PhaseFactors {
  std::vector<double> u;
  std::vector<double> v;
};

struct PhaseFactoredChannel {
  ComplexMatrix matrix;
  PhaseFactors phases;
};

using kernels::Exec;

/// Line-of-sight matrix h_jk = e^{2 pi i r_jk / lambda} / r_jk.
ComplexMatrix build_los_matrix(const NodePositions& pos, const ClusterParams& params,
                               Exec exec = Exec::parallel);

/// sqrt(nP) H. Requires kind() == los.
ComplexMatrix normalize_los(const ComplexMatrix& h, const DerivedParams& derived, std::size_t n);

/// g_jk = e^{-2 pi i m y_j z_k}. m = 0 is allowed (all-ones matrix).
ComplexMatrix build_g_matrix(const NodePositions& pos, double m, Exec exec = Exec::parallel);

/// Quadratic-Taylor phase approximation e^{2 pi i (u_j + v_k - m y_j z_k)}.
/// Equals diag(e^{2 pi i u}) G diag(e^{2 pi i v}).
PhaseFactoredChannel build_phase_factored(const NodePositions& pos, const ClusterParams& params,
                                          Exec exec = Exec::parallel);

/// Vandermonde variant: y_j = j/n (j = 0..n-1) in place of random y.
ComplexMatrix build_vandermonde_variant(std::span<const double> z, double m, std::size_t n);

/// n x l.size() matrix with entries e^{-2 pi i j l_k / n}, j = 0..n-1.
ComplexMatrix build_dft_columns(std::size_t n, std::span<const std::size_t> frequencies);

/// `count` distinct integers drawn uniformly from {1..n}, in draw order.
std::vector<std::size_t> draw_dft_frequencies(std::size_t n, std::size_t count, std::uint64_t seed);

/// Random partial DFT: draw_dft_frequencies followed by build_dft_columns.
ComplexMatrix build_random_dft_variant(std::size_t n, std::size_t m_count, std::uint64_t seed);

}  // namespace losdof
