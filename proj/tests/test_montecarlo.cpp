#include <doctest.h>

#include <cmath>
#include <vector>

#include "losdof/error.hpp"
#include "losdof/montecarlo.hpp"
#include "losdof/rng.hpp"

using namespace losdof;

namespace {

// E[det(G G*)] for 2 x 2 blocks, computed offline by 2-D quadrature of
// 2 - 2 * int int 4 (1 - s)(1 - t) cos(2 pi m s t) ds dt.
constexpr double kSubdet2AtM2 = 1.2078358062486232;
constexpr double kSubdet2AtM5 = 1.6407192435808078;

}  // namespace

TEST_CASE("determinant")
{
  CHECK(determinant({cplx{3.0, 0.0}}, 1) == cplx{3.0, 0.0});
  const cplx d = determinant({cplx{0, 0}, cplx{1, 0}, cplx{2, 0}, cplx{0, 0}}, 2);
  CHECK(d.real() == doctest::Approx(-2.0));
  CHECK(d.imag() == doctest::Approx(0.0));
  const cplx e = determinant({cplx{1, 1}, cplx{2, 0}, cplx{0, 1}, cplx{3, -1}}, 2);
  const cplx expect = cplx{1, 1} * cplx{3, -1} - cplx{2, 0} * cplx{0, 1};
  CHECK(std::abs(e - expect) < 1e-14);
  CHECK(std::abs(determinant(std::vector<cplx>(9, cplx{1, 0}), 3)) == 0.0);
  CHECK_THROWS_AS(determinant(std::vector<cplx>(3), 2), DimensionMismatch);
}

TEST_CASE("k = 1 sub-determinant is exactly one")
{
  const auto est = expected_subdeterminant_mc(1, 3.7, 200, 5);
  CHECK(est.mean == 1.0);
  CHECK(est.std_error == 0.0);
  CHECK(est.trials == 200);
}

TEST_CASE("2 x 2 sub-determinants against the quadrature oracle")
{
  for (auto [m, oracle] : {std::pair{2.0, kSubdet2AtM2}, std::pair{5.0, kSubdet2AtM5}}) {
    const auto table = build_fredholm_table(m, 0, 2, 2);
    CHECK(analytic_subdeterminant(2, m, table.dk[2]) == doctest::Approx(oracle).epsilon(1e-6));
    const auto est = expected_subdeterminant_mc(2, m, 20000, 77);
    CHECK(std::abs(est.mean - oracle) <= 4.0 * est.std_error);
    CHECK(est.std_error > 0.0);
  }
}

TEST_CASE("sub-determinant samples")
{
  for (std::uint64_t s = 0; s < 20; ++s) {
    const double v = subdeterminant_sample(3, 4.0, s);
    CHECK(v >= 0.0);
    CHECK(v <= 27.0 + 1e-9);  // Hadamard: product of diagonal entries k
  }
  CHECK(subdeterminant_sample(3, 0.0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(expected_subdeterminant_mc(0, 1.0, 10, 1), InvalidParameter);
  CHECK_THROWS_AS(expected_subdeterminant_mc(2, 1.0, 0, 1), InvalidParameter);
}

TEST_CASE("analytic sub-determinant")
{
  CHECK(analytic_subdeterminant(1, 4.0, 4.0) == doctest::Approx(1.0));
  CHECK(analytic_subdeterminant(3, 2.0, 1.0) == doctest::Approx(36.0 / 8.0));
  CHECK_THROWS_AS(analytic_subdeterminant(1, 0.0, 1.0), InvalidParameter);
}

TEST_CASE("identity check")
{
  const auto table = build_fredholm_table(5.0, 0, 3, 3);
  const auto ok = fredholm_identity_check(2, 5.0, 4000, 3, table);
  CHECK_FALSE(ok.violated);
  CHECK(ok.analytic == doctest::Approx(kSubdet2AtM5).epsilon(1e-6));

  auto corrupted = table;
  for (auto& d : corrupted.dk) d *= 1.5;
  CHECK(fredholm_identity_check(2, 5.0, 4000, 3, corrupted).violated);

  const auto one = fredholm_identity_check(1, 5.0, 50, 3, table);
  CHECK(one.z_score == 0.0);
  CHECK_FALSE(one.violated);

  CHECK_THROWS_AS(fredholm_identity_check(2, 4.0, 10, 3, table), InvalidParameter);
  CHECK_THROWS_AS(fredholm_identity_check(4, 5.0, 10, 3, table), InvalidParameter);
}

TEST_CASE("serial and parallel runs agree and are reproducible")
{
  const auto a = expected_subdeterminant_mc(3, 2.5, 300, 11, Exec::serial);
  const auto b = expected_subdeterminant_mc(3, 2.5, 300, 11, Exec::parallel);
  const auto c = expected_subdeterminant_mc(3, 2.5, 300, 11, Exec::parallel);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(b.mean == c.mean);
  CHECK(expected_subdeterminant_mc(3, 2.5, 300, 12).mean != a.mean);

  const auto sa = logdet_g_samples(30, 4.0, 8, 2, Exec::serial);
  const auto sb = logdet_g_samples(30, 4.0, 8, 2, Exec::parallel);
  CHECK(sa == sb);
}

TEST_CASE("claim experiment")
{
  ClusterParams p{40, 400.0, 100.0, 1.0};
  SUBCASE("phase-factored channel matches G exactly")
  {
    const auto r = claim_sim_experiment(p, 3, 9, 1.0, ChannelModel::phase_factored);
    REQUIRE(r.trials.size() == 3);
    for (const auto& t : r.trials) {
      CHECK(t.ratio == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(t.dof_h == t.dof_g);
      CHECK(t.eig_h.size() == 40);
    }
    CHECK(r.ratio.mean == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("LOS channel is close to G")
  {
    const auto r = claim_sim_experiment(p, 2, 9);
    CHECK(r.derived.m == doctest::Approx(4.0));
    for (const auto& t : r.trials) {
      CHECK(t.logdet_h > 0.0);
      CHECK(t.ratio > 0.5);
      CHECK(t.ratio < 2.0);
    }
    const auto again = claim_sim_experiment(p, 2, 9, 1.0, ChannelModel::los_normalized, Exec::serial);
    CHECK(again.trials[1].logdet_h == r.trials[1].logdet_h);
  }
  CHECK_THROWS_AS(claim_sim_experiment(p, 0, 1), InvalidParameter);
}

TEST_CASE("concentration experiment")
{
  const std::vector<ClusterParams> grid{{20, 20.0, 10.0, 1.0}, {40, 40.0, 10.0, 1.0}};
  const auto r = concentration_experiment(grid, 12, 4);
  REQUIRE(r.points.size() == 2);
  CHECK(r.points[0].seed == derive_seed(4, 0));
  CHECK(r.points[1].m == doctest::Approx(4.0));
  CHECK(r.points[0].std_dev > 0.0);
  CHECK(r.growth_exponent.has_value());
  CHECK_THROWS_AS(concentration_experiment(grid, 9, 4), InvalidParameter);

  // m = 0 makes every entry of G equal to one: log(1 + n^2) with no spread.
  const auto flat = logdet_g_samples(10, 0.0, 5, 1);
  for (double v : flat) CHECK(v == doctest::Approx(std::log(101.0)).epsilon(1e-12));
}

TEST_CASE("envelopes")
{
  CHECK(lower_envelope(100, 2.0) == 2.0);
  CHECK(lower_envelope(100, 50.0) == doctest::Approx(50.0 / std::log(50.0)));
  CHECK(lower_envelope(3, 50.0) == 3.0);
  CHECK(upper_envelope(100, 10.0) == doctest::Approx(10.0 * std::log(100.0)));
  CHECK(upper_envelope(5, 10.0) == doctest::Approx(5.0 * std::log(5.0)));
}

TEST_CASE("bound sweep")
{
  const std::vector<ClusterParams> grid{power_law_params(30, 1.6, 1.0, 1.0), power_law_params(60, 1.6, 1.0, 1.0)};
  const auto r = bound_sweep(grid, 1.0, 2, 21);
  REQUIRE(r.records.size() == 2);
  for (const auto& rec : r.records) {
    CHECK(rec.logdet_ph > 0.0);
    CHECK(rec.logdet_h > rec.logdet_ph);
    CHECK(rec.logdet_g > 0.0);
    CHECK(rec.k1 == doctest::Approx(rec.logdet_ph / rec.envelope_lower));
    CHECK(rec.k2 > 0.0);
    CHECK(rec.dof_h <= double(rec.params.n));
  }
  CHECK(r.records[1].seed == derive_seed(21, 1));

  const std::vector<ClusterParams> tiny{{1, 1.0, 1.0, 1.0}};
  CHECK_THROWS_AS(bound_sweep(tiny, 1.0, 1, 1), InvalidParameter);
  CHECK_THROWS_AS(bound_sweep({}, 1.0, 1, 1), InvalidParameter);
}
