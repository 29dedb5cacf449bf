#include "losdof/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "losdof/error.hpp"

namespace losdof {

namespace {

using RowMajorXcd = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXcd to_eigen(const ComplexMatrix& w)
{
  return Eigen::Map<const RowMajorXcd>(w.data().data(), static_cast<Eigen::Index>(w.rows()),
                                       static_cast<Eigen::Index>(w.cols()));
}

void check_finite(const ComplexMatrix& m)
{
  for (const auto& v : m.data())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidParameter("gram_spectrum: matrix has non-finite entries");
}

}  // namespace

double Spectrum::tolerance() const { return 1e-8 * std::abs(largest()); }

Spectrum gram_spectrum(const ComplexMatrix& m, const SpectrumOptions& options)
{
  check_finite(m);
  Spectrum spec;
  spec.source_kind = m.kind();
  spec.trace = m.frobenius_norm_squared();
  if (m.rows() == 0) return spec;

  const Eigen::MatrixXcd w = to_eigen(kernels::gram(m, options.exec));
  const auto mode = options.residuals ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(w, mode);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("Hermitian eigensolver failed to converge on a " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.rows()) +
                             " Gram matrix");

  const auto& ev = solver.eigenvalues();  // ascending
  spec.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::reverse(spec.eigenvalues.begin(), spec.eigenvalues.end());

  if (options.residuals) {
    const Eigen::MatrixXcd& vecs = solver.eigenvectors();
    const Eigen::MatrixXcd r = w * vecs - vecs * ev.asDiagonal();
    spec.max_residual = r.colwise().norm().maxCoeff();
  }

  double sum = 0.0;
  for (double v : spec.eigenvalues) sum += v;
  if (std::abs(sum - spec.trace) > 1e-8 * std::max(std::abs(spec.trace), 1e-300))
    throw InconsistentSpectrum("eigenvalue sum " + std::to_string(sum) +
                               " disagrees with trace " + std::to_string(spec.trace));
  if (spec.eigenvalues.back() < -spec.tolerance())
    throw InconsistentSpectrum("Gram spectrum has eigenvalue " +
                               std::to_string(spec.eigenvalues.back()) + " below -tol");
  return spec;
}

Spectrum scaled(const Spectrum& spec, double factor)
{
  if (!(factor > 0.0)) throw InvalidParameter("spectrum scale factor must be > 0");
  Spectrum out = spec;
  for (double& v : out.eigenvalues) v *= factor;
  out.trace *= factor;
  if (out.max_residual) *out.max_residual *= factor;
  return out;
}

double log_det_capacity(const Spectrum& spec)
{
  const double tol = spec.tolerance();
  double sum = 0.0;
  for (double v : spec.eigenvalues) {
    if (v < -tol)
      throw InconsistentSpectrum("eigenvalue " + std::to_string(v) + " is below -" +
                                 std::to_string(tol));
    sum += std::log1p(std::max(v, 0.0));
  }
  return sum;
}

std::size_t effective_dof(const Spectrum& spec, double threshold)
{
  if (!(threshold > 0.0)) throw InvalidParameter("dof threshold must be > 0");
  return static_cast<std::size_t>(std::count_if(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                                                [threshold](double v) { return v >= threshold; }));
}

ComparisonReport compare_spectra(const Spectrum& a, const Spectrum& b, double threshold)
{
  if (a.size() != b.size())
    throw DimensionMismatch("cannot compare spectra of sizes " + std::to_string(a.size()) +
                            " and " + std::to_string(b.size()));
  ComparisonReport r;
  r.eigenvalues_a = a.eigenvalues;
  r.eigenvalues_b = b.eigenvalues;
  r.logdet_a = log_det_capacity(a);
  r.logdet_b = log_det_capacity(b);
  r.ratio = (r.logdet_a == r.logdet_b) ? 1.0 : r.logdet_a / r.logdet_b;
  r.threshold = threshold;
  r.dof_a = effective_dof(a, threshold);
  r.dof_b = effective_dof(b, threshold);
  return r;
}

double log_det_identity_plus_gram(const ComplexMatrix& m, double scale, kernels::Exec exec)
{
  if (!(scale >= 0.0)) throw InvalidParameter("scale must be >= 0");
  if (m.rows() == 0) return 0.0;
  Eigen::MatrixXcd w = to_eigen(kernels::gram(m, exec)) * scale;
  w.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXcd> llt(w);
  if (llt.info() != Eigen::Success)
    throw NumericalError("Cholesky factorization of I + s M M* failed");
  double sum = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) sum += std::log(l(i, i).real());
  return 2.0 * sum;
}

}  // namespace losdof
