#include "losdof/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "losdof/error.hpp"

namespace losdof {

QuadratureRule gauss_legendre_unit(std::size_t n)
{
  if (n < 1) throw InvalidParameter("quadrature needs at least one node");
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  const double nn = static_cast<double>(n);

  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi's initial guess for the i-th largest root, then Newton.
    double t = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nn + 0.5));
    double deriv = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = t;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * t * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      deriv = nn * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / deriv;
      t -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - t * t) * deriv * deriv);
    // t is the i-th largest root on [-1, 1]; its mirror is the i-th smallest.
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + t);
    rule.nodes[i] = 0.5 * (1.0 - t);
    rule.weights[n - 1 - i] = 0.5 * w;
    rule.weights[i] = 0.5 * w;
  }
  return rule;
}

}  // namespace losdof
