#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "losdof/kernels.hpp"
#include "losdof/matrix.hpp"

namespace losdof {

/// Eigenvalues of a Gram matrix M M*, in descending order.
struct Spectrum {
  std::vector<double> eigenvalues;
  /// Largest ||W v - lambda v|| over the computed pairs; only present when the
  /// eigenvectors were requested.
  std::optional<double> max_residual;
  MatrixKind source_kind = MatrixKind::generic;
  /// trace(M M*) = sum |M_jk|^2, computed directly from the entries.
  double trace = 0.0;

  std::size_t size() const { return eigenvalues.size(); }
  double largest() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
  /// Clamp tolerance for small negative eigenvalues: 1e-8 * |lambda_max|.
  double tolerance() const;
};

struct SpectrumOptions {
  bool residuals = false;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// Eigenvalues of M M*.
///
/// The eigensolver is a dense self-adjoint decomposition; its output is
/// accepted only if the eigenvalues sum to trace(M M*) within 1e-8 relative
/// and none is below -tolerance(). Throws ConvergenceFailure if the solver
/// does not converge and InconsistentSpectrum if either check fails.
Spectrum gram_spectrum(const ComplexMatrix& m, const SpectrumOptions& options = {});

/// The same spectrum with every eigenvalue multiplied by `factor` > 0.
Spectrum scaled(const Spectrum& spec, double factor);

/// sum_k log(1 + lambda_k) in nats. Eigenvalues in [-tol, 0) count as 0;
/// anything below -tol throws InconsistentSpectrum.
double log_det_capacity(const Spectrum& spec);

/// Number of eigenvalues >= threshold; threshold must be > 0.
std::size_t effective_dof(const Spectrum& spec, double threshold);

struct ComparisonReport {
  std::vector<double> eigenvalues_a;
  std::vector<double> eigenvalues_b;
  double logdet_a = 0.0;
  double logdet_b = 0.0;
  double ratio = 1.0;  ///< logdet_a / logdet_b; 1 when both are zero
  double threshold = 1.0;
  std::size_t dof_a = 0;
  std::size_t dof_b = 0;
};

ComparisonReport compare_spectra(const Spectrum& a, const Spectrum& b, double threshold = 1.0);

/// log det(I + scale * M M*) by Cholesky factorization, without an
/// eigendecomposition. Independent of gram_spectrum's solver.
double log_det_identity_plus_gram(const ComplexMatrix& m, double scale = 1.0,
                                  kernels::Exec exec = kernels::Exec::parallel);

inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

}  // namespace losdof
