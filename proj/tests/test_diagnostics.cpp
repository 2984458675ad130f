#include <doctest.h>

#include <cmath>
#include <string>

#include "ergomat/diagnostics.hpp"
#include "ergomat/io.hpp"
#include "ergomat/linalg.hpp"
#include "ergomat/sampling.hpp"

using namespace ergomat;

namespace {

std::string detail_of(const TestReport& r, const std::string& key) {
  for (const auto& [k, v] : r.details)
    if (k == key) return v;
  return "";
}

}  // namespace

TEST_CASE("borel_test passes in the truncation regime, real and complex") {
  for (ScalarField field : {ScalarField::Real, ScalarField::Complex}) {
    const TestReport r = borel_test(1000, 1, 10000, field, RngHandle{90, 0}, 2);
    CHECK(r.passed);
    CHECK(r.statistic <= r.threshold);
    CHECK(detail_of(r, "small_N_regime") == "false");
  }
}

TEST_CASE("borel_test at N = S = 1 fails by design") {
  const TestReport r = borel_test(1, 1, 2000, ScalarField::Real, RngHandle{91, 0});
  CHECK_FALSE(r.passed);
  CHECK(detail_of(r, "small_N_regime") == "true");
}

TEST_CASE("borel_test checks cross-entry correlations at S = 3") {
  const TestReport r = borel_test(1000, 3, 25000, ScalarField::Real, RngHandle{92, 0}, 2);
  CHECK(r.passed);
  const double max_corr = std::stod(detail_of(r, "max_abs_correlation"));
  CHECK(max_corr < 0.02);
}

TEST_CASE("borel_test sees the finite-N bias grow as N shrinks") {
  const TestReport small = borel_test(5, 3, 10000, ScalarField::Real, RngHandle{93, 0}, 2);
  const TestReport large = borel_test(50, 3, 10000, ScalarField::Real, RngHandle{93, 0}, 2);
  const double ks_small = std::stod(detail_of(small, "ks_statistic"));
  const double ks_large = std::stod(detail_of(large, "ks_statistic"));
  CHECK(ks_small > ks_large);
}

TEST_CASE("borel_test validates parameters") {
  CHECK_THROWS_AS(borel_test(2, 3, 1000, ScalarField::Real, RngHandle{0, 0}), OutOfRange);
}

TEST_CASE("invariance_test is exact at the identity and passes for rotations") {
  const SpectrumDelta spec({2.0, 1.0});
  const CFGrid grid = default_grid(2);
  const SquareMatrix iu = SquareMatrix::identity(ScalarField::Real, 32);
  const SquareMatrix iv = SquareMatrix::identity(ScalarField::Real, 2);
  const TestReport id = invariance_test(spec, 32, iu, iv, 500, grid, RngHandle{94, 0});
  CHECK(id.passed);
  CHECK(id.statistic == 0.0);

  // Sign-flip on the first row.
  SquareMatrix flip = SquareMatrix::identity(ScalarField::Real, 32);
  flip.real_at(0, 0) = -1.0;
  const TestReport fl = invariance_test(spec, 32, flip, iv, 10000, grid, RngHandle{94, 1}, 2);
  CHECK(fl.passed);

  Rng gen(RngHandle{94, 2});
  const SquareMatrix u = haar_square(32, ScalarField::Real, gen);
  const SquareMatrix v = haar_square(2, ScalarField::Real, gen);
  const TestReport rot = invariance_test(spec, 32, u, v, 10000, grid, RngHandle{94, 3}, 2);
  CHECK(rot.passed);
}

TEST_CASE("invariance_test rejects non-orthogonal transforms") {
  SquareMatrix u(ScalarField::Real, 8);
  for (std::size_t i = 0; i < 8; ++i) u.real_at(i, i) = 2.0;
  const SquareMatrix v = SquareMatrix::identity(ScalarField::Real, 2);
  CHECK_THROWS_AS(invariance_test(SpectrumDelta({1.0, 0.5}), 8, u, v, 100, default_grid(2),
                                  RngHandle{95, 0}),
                  NotOrthogonal);
}

TEST_CASE("orbital_convergence_test passes at adequate resolution") {
  const CFGrid grid(1, {SpectrumDelta({0.5}), SpectrumDelta({1.0}), SpectrumDelta({2.0})});
  const TestReport r = orbital_convergence_test(SpectrumDelta({1.0}), 1024, 10000, grid,
                                                RngHandle{96, 0}, ScalarField::Real, 2);
  CHECK(r.passed);
  CHECK(detail_of(r, "small_n_regime") == "false");
}

TEST_CASE("orbital_convergence_test at the zero spectrum is exact") {
  const CFGrid grid(1, {SpectrumDelta({1.0})});
  const TestReport r =
      orbital_convergence_test(SpectrumDelta({0.0}), 256, 100, grid, RngHandle{97, 0});
  CHECK(r.passed);
  CHECK(std::stod(detail_of(r, "sup_distance")) == 0.0);
}

TEST_CASE("orbital_convergence_test flags the small-n regime") {
  const CFGrid grid(1, {SpectrumDelta({0.5}), SpectrumDelta({1.0}), SpectrumDelta({2.0})});
  const TestReport r =
      orbital_convergence_test(SpectrumDelta({1.0}), 4, 2000, grid, RngHandle{98, 0});
  CHECK_FALSE(r.passed);
  CHECK(detail_of(r, "small_n_regime") == "true");
}

TEST_CASE("tightness_diagnostic: bounded sequences pass, zeros are flat") {
  const TestReport ones = tightness_diagnostic({SpectrumDelta({1.0, 1.0})}, 256, 500,
                                               RngHandle{99, 0}, ScalarField::Real, 2);
  CHECK(ones.passed);

  const TestReport zeros =
      tightness_diagnostic({SpectrumDelta({0.0})}, 64, 200, RngHandle{99, 1});
  CHECK(zeros.passed);
  CHECK(std::stod(detail_of(zeros, "q99_0_s1_0")) == 0.0);
}

TEST_CASE("tightness_diagnostic sees quantiles track s_1") {
  const TestReport r = tightness_diagnostic(
      {SpectrumDelta({1.0}), SpectrumDelta({10.0}), SpectrumDelta({100.0})}, 256, 1000,
      RngHandle{100, 0}, ScalarField::Real, 2);
  CHECK(r.passed);
  CHECK(detail_of(r, "quantiles_track_s1") == "true");
}

TEST_CASE("diagnostics are deterministic given the handle") {
  const CFGrid grid(1, {SpectrumDelta({0.5}), SpectrumDelta({1.0})});
  const TestReport a =
      orbital_convergence_test(SpectrumDelta({1.0}), 128, 2000, grid, RngHandle{101, 5},
                               ScalarField::Real, 2);
  const TestReport b =
      orbital_convergence_test(SpectrumDelta({1.0}), 128, 2000, grid, RngHandle{101, 5},
                               ScalarField::Real, 1);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());

  const TestReport c = borel_test(200, 2, 3000, ScalarField::Complex, RngHandle{101, 6}, 2);
  const TestReport d = borel_test(200, 2, 3000, ScalarField::Complex, RngHandle{101, 6}, 1);
  CHECK(report_to_json(c).dump() == report_to_json(d).dump());
}
