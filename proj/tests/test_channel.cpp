#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "losdof/channel.hpp"
#include "losdof/error.hpp"
#include "losdof/spectra.hpp"

using namespace losdof;

namespace {

cplx expi(double angle) { return {std::cos(angle), std::sin(angle)}; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

}  // namespace

TEST_CASE("LOS entries have modulus 1/r")
{
  const ClusterParams p{40, 10000.0, 300.0, 0.1};
  const auto pos = sample_network(p, 3);
  const auto h = build_los_matrix(pos, p);
  CHECK(h.kind() == MatrixKind::los);
  for (std::size_t j = 0; j < p.n; ++j)
    for (std::size_t k = 0; k < p.n; ++k)
      CHECK(std::abs(std::abs(h(j, k)) * pairwise_distance(pos, p, j, k) - 1.0) < 1e-12);
}

TEST_CASE("LOS phase vanishes at integer wavelengths")
{
  // r = d = 300 with lambda = 0.5 gives exactly 600 periods.
  const ClusterParams p{1, 10000.0, 300.0, 0.5};
  NodePositions pos{{0.0}, {0.0}, {0.4}, {0.4}, 0};
  const auto h = build_los_matrix(pos, p);
  CHECK(h(0, 0).real() > 0.0);
  CHECK(h(0, 0).imag() == 0.0);
  CHECK(h(0, 0).real() == doctest::Approx(1.0 / 300.0));
}

TEST_CASE("normalization scales by sqrt(nP)")
{
  const ClusterParams p{500, 10000.0, 300.0, 0.1};
  const auto derived = derive(p);
  const auto pos = sample_network(p, 1);
  const auto h = build_los_matrix(pos, p);
  const auto hn = normalize_los(h, derived, p.n);
  CHECK(hn.kind() == MatrixKind::los_normalized);
  CHECK(std::abs(hn(3, 7) - 400.0 * h(3, 7)) < 1e-15);
  CHECK_THROWS_AS(normalize_los(hn, derived, p.n), KindMismatch);

  const auto same = normalize_los(h, DerivedParams{1.0, 1.0 / 500.0}, 500);
  CHECK(max_abs_diff(same, h) == 0.0);
}

TEST_CASE("normalized amplitudes are of order one in the regime")
{
  const ClusterParams p{200, 10000.0, 300.0, 0.1};
  REQUIRE(p.in_regime());
  const auto pos = sample_network(p, 11);
  const auto hn = normalize_los(build_los_matrix(pos, p), derive(p), p.n);
  std::vector<double> amp;
  for (const auto& v : hn.data()) amp.push_back(std::abs(v));
  std::nth_element(amp.begin(), amp.begin() + amp.size() / 2, amp.end());
  const double median = amp[amp.size() / 2];
  CHECK(median >= 0.25);
  CHECK(median <= 4.0);
}

TEST_CASE("G matrix")
{
  NodePositions pos{{0, 0, 0}, {0, 0, 0}, {0.0, 0.3, 0.9}, {0.1, 0.5, 0.7}, 0};
  const auto g = build_g_matrix(pos, 333.3);
  CHECK(g.kind() == MatrixKind::kernel_g);
  for (std::size_t k = 0; k < 3; ++k) CHECK(g(0, k) == cplx(1.0, 0.0));
  for (const auto& v : g.data()) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
  const cplx expected = expi(-2.0 * std::numbers::pi * 333.3 * 0.3 * 0.7);
  CHECK(std::abs(g(1, 2) - expected) < 1e-11);
  CHECK_THROWS_AS(build_g_matrix(pos, -1.0), InvalidParameter);
}

TEST_CASE("phase-factored matrix")
{
  const ClusterParams p{30, 10000.0, 300.0, 0.1};

  SUBCASE("zero offsets give a constant phase")
  {
    NodePositions zero{std::vector<double>(30, 0.0), std::vector<double>(30, 0.0),
                       std::vector<double>(30, 0.0), std::vector<double>(30, 0.0), 0};
    const auto pf = build_phase_factored(zero, p);
    const cplx expected = expi(2.0 * std::numbers::pi * std::fmod(300.0 / 0.1, 1.0));
    for (const auto& v : pf.matrix.data()) CHECK(std::abs(v - expected) < 1e-12);
  }

  SUBCASE("equals D_u G D_v entrywise")
  {
    const auto pos = sample_network(p, 5);
    const auto pf = build_phase_factored(pos, p);
    const auto g = build_g_matrix(pos, derive(p).m);
    CHECK(pf.matrix.kind() == MatrixKind::phase_factored);
    double worst = 0.0;
    for (std::size_t j = 0; j < p.n; ++j)
      for (std::size_t k = 0; k < p.n; ++k) {
        const cplx du = kernels::unit_phase(pf.phases.u[j]);
        const cplx dv = kernels::unit_phase(pf.phases.v[k]);
        worst = std::max(worst, std::abs(pf.matrix(j, k) - du * g(j, k) * dv));
        CHECK(std::abs(std::abs(pf.matrix(j, k)) - 1.0) < 1e-12);
      }
    CHECK(worst < 1e-12);
  }

  SUBCASE("phases follow the quadratic expansion")
  {
    const auto pos = sample_network(p, 6);
    const auto pf = build_phase_factored(pos, p);
    const double u0 = (150.0 + 100.0 * pos.x[0] + (10000.0 / 300.0) * pos.y[0] * pos.y[0] / 2) / 0.1;
    CHECK(pf.phases.u[0] == doctest::Approx(u0).epsilon(1e-14));
  }
}

TEST_CASE("phase-factored and G spectra coincide")
{
  const ClusterParams p{80, 10000.0, 300.0, 0.1};
  const auto pos = sample_network(p, 8);
  const auto a = gram_spectrum(build_phase_factored(pos, p).matrix);
  const auto b = gram_spectrum(build_g_matrix(pos, derive(p).m));
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) <= 1e-10 * b.largest());
}

TEST_CASE("Vandermonde variant")
{
  const std::vector<double> z{0.0, 0.25, 0.5, 0.75};
  const auto v = build_vandermonde_variant(z, 4.0, 4);
  CHECK(v.kind() == MatrixKind::vandermonde);
  for (std::size_t k = 0; k < 4; ++k) CHECK(v(0, k) == cplx(1.0, 0.0));
  for (std::size_t j = 0; j < 4; ++j) CHECK(v(j, 0) == cplx(1.0, 0.0));
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(std::abs(v(j, k) - expi(-2.0 * std::numbers::pi * double(j * k) / 4.0)) < 1e-12);
  CHECK_THROWS_AS(build_vandermonde_variant(z, 0.0, 4), InvalidParameter);
}

TEST_CASE("random DFT variant")
{
  SUBCASE("single column at frequency n/2 alternates")
  {
    const std::vector<std::size_t> l{4};
    const auto f = build_dft_columns(8, l);
    for (std::size_t j = 0; j < 8; ++j) {
      CHECK(std::abs(f(j, 0) - cplx(j % 2 == 0 ? 1.0 : -1.0, 0.0)) < 1e-15);
    }
  }

  SUBCASE("exhaustive draw is a column permutation of the DFT")
  {
    const auto freqs = draw_dft_frequencies(16, 16, 3);
    std::set<std::size_t> seen(freqs.begin(), freqs.end());
    CHECK(seen.size() == 16);
    CHECK(*seen.begin() == 1);
    CHECK(*seen.rbegin() == 16);
  }

  SUBCASE("columns have norm sqrt(n)")
  {
    const auto f = build_random_dft_variant(32, 10, 4);
    CHECK(f.kind() == MatrixKind::random_dft);
    CHECK(f.rows() == 32);
    CHECK(f.cols() == 10);
    for (std::size_t k = 0; k < 10; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < 32; ++j) s += std::norm(f(j, k));
      CHECK(std::sqrt(s) == doctest::Approx(std::sqrt(32.0)).epsilon(1e-13));
    }
  }

  SUBCASE("draws are seeded and distinct")
  {
    CHECK(draw_dft_frequencies(100, 20, 9) == draw_dft_frequencies(100, 20, 9));
    const auto d = draw_dft_frequencies(100, 20, 9);
    CHECK(std::set<std::size_t>(d.begin(), d.end()).size() == 20);
  }

  CHECK_THROWS_AS(build_random_dft_variant(8, 0, 1), InvalidParameter);
  CHECK_THROWS_AS(build_random_dft_variant(8, 9, 1), InvalidParameter);
}
