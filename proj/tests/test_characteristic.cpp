#include <doctest.h>

#include <cmath>
#include <vector>

#include "ergomat/characteristic.hpp"
#include "ergomat/errors.hpp"
#include "ergomat/linalg.hpp"
#include "ergomat/sampling.hpp"

using namespace ergomat;

namespace {

std::vector<CornerMatrix> corner_batch(const SpectrumDelta& spec, ScalarField field, std::size_t n,
                                       std::size_t count, RngHandle h) {
  std::vector<CornerMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(h.split(i));
    out.push_back(truncate_corner(sample_mu_s(spec, field, n, rng), spec.rank()));
  }
  return out;
}

}  // namespace

TEST_CASE("default_grid enumerates the descending sector") {
  const CFGrid g1 = default_grid(1);
  CHECK(g1.points.size() == 4);
  const CFGrid g2 = default_grid(2);
  CHECK(g2.points.size() == 10);
  for (const auto& p : g2.points) CHECK(p[0] >= p[1]);
  CHECK(default_grid(10).points.size() == 200);
}

TEST_CASE("cf_mu_s is exactly 1 at lambda = 0 and for s = 0") {
  Rng rng(RngHandle{61, 0});
  const CFGrid zero_grid(2, {SpectrumDelta({0.0, 0.0})});
  const CFEvaluation at0 = cf_mu_s(SpectrumDelta({2.0, 1.0}), zero_grid, ScalarField::Real, 50, rng);
  CHECK(at0.values[0].real() == 1.0);
  CHECK(at0.values[0].imag() == 0.0);
  CHECK(at0.mc_stderr[0] == 0.0);

  const CFGrid grid(2, {SpectrumDelta({1.0, 0.5})});
  const CFEvaluation dirac = cf_mu_s(SpectrumDelta({0.0, 0.0}), grid, ScalarField::Real, 50, rng);
  CHECK(dirac.values[0].real() == 1.0);
}

TEST_CASE("cf_mu_s at m = 1 is the exact closed form with zero variance") {
  Rng rng(RngHandle{62, 0});
  const CFGrid grid(1, {SpectrumDelta({0.5}), SpectrumDelta({1.0}), SpectrumDelta({2.0})});
  const double s = 1.3;
  const CFEvaluation real_cf = cf_mu_s(SpectrumDelta({s}), grid, ScalarField::Real, 25, rng);
  const CFEvaluation cplx_cf = cf_mu_s(SpectrumDelta({s}), grid, ScalarField::Complex, 25, rng);
  for (std::size_t p = 0; p < grid.points.size(); ++p) {
    const double lam = grid.points[p][0];
    CHECK(std::abs(real_cf.values[p].real() - std::exp(-lam * lam * s * s / 2.0)) < 1e-14);
    CHECK(real_cf.mc_stderr[p] == 0.0);
    CHECK(std::abs(cplx_cf.values[p].real() - std::exp(-lam * lam * s * s / 4.0)) < 1e-14);
  }
}

TEST_CASE("cf_mu_s at m = 1 decreases strictly in s") {
  Rng rng(RngHandle{63, 0});
  const CFGrid grid(1, {SpectrumDelta({1.0})});
  double prev = 1.0;
  for (double s : {0.5, 1.0, 2.0, 3.0}) {
    const double v = cf_mu_s(SpectrumDelta({s}), grid, ScalarField::Real, 10, rng).values[0].real();
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("tightness signature: values vanish as s_1 grows") {
  Rng rng(RngHandle{64, 0});
  const CFGrid grid(1, {SpectrumDelta({1.0})});
  double last = 1.0;
  for (double s : {1.0, 10.0, 100.0}) {
    const double v = cf_mu_s(SpectrumDelta({s}), grid, ScalarField::Real, 10, rng).values[0].real();
    CHECK(v < last);
    last = v;
  }
  CHECK(last < 1e-6);
}

TEST_CASE("empirical_cf basics") {
  const CFGrid grid(2, {SpectrumDelta({0.0, 0.0}), SpectrumDelta({1.0, 0.5})});
  std::vector<CornerMatrix> zero{CornerMatrix(ScalarField::Real, 2, 2)};
  const CFEvaluation cf = empirical_cf(zero, grid);
  CHECK(cf.values[0] == cplx(1.0, 0.0));
  CHECK(cf.values[1] == cplx(1.0, 0.0));

  CHECK_THROWS_AS(empirical_cf({}, grid), EmptySampleSet);
}

TEST_CASE("empirical_cf matches the semi-analytic values, real m = 2") {
  const SpectrumDelta spec({2.0, 1.0});
  const CFGrid grid(2, {SpectrumDelta({0.5, 0.5}), SpectrumDelta({1.0, 0.5}),
                        SpectrumDelta({2.0, 1.0})});
  const auto samples = corner_batch(spec, ScalarField::Real, 64, 20000, RngHandle{65, 0});
  const CFEvaluation emp = empirical_cf(samples, grid);
  Rng rng(RngHandle{65, 1});
  const CFEvaluation ref = cf_mu_s(spec, grid, ScalarField::Real, 50000, rng);
  const auto comb = combined_stderr(emp, ref);
  for (std::size_t p = 0; p < comb.size(); ++p)
    CHECK(std::abs(emp.values[p] - ref.values[p]) <= 3.0 * comb[p] + 0.02);
}

TEST_CASE("empirical_cf matches the semi-analytic values, complex m = 2") {
  // End-to-end check of the complex pairing convention (/4 kernel).
  const SpectrumDelta spec({1.5, 0.5});
  const CFGrid grid(2, {SpectrumDelta({0.5, 0.5}), SpectrumDelta({1.0, 0.5}),
                        SpectrumDelta({2.0, 1.0})});
  const auto samples = corner_batch(spec, ScalarField::Complex, 64, 20000, RngHandle{66, 0});
  const CFEvaluation emp = empirical_cf(samples, grid);
  Rng rng(RngHandle{66, 1});
  const CFEvaluation ref = cf_mu_s(spec, grid, ScalarField::Complex, 50000, rng);
  const auto comb = combined_stderr(emp, ref);
  for (std::size_t p = 0; p < comb.size(); ++p)
    CHECK(std::abs(emp.values[p] - ref.values[p]) <= 3.0 * comb[p] + 0.02);
}

TEST_CASE("cf_sup_distance identities and closed-form gap") {
  Rng rng(RngHandle{67, 0});
  const CFGrid grid(1, {SpectrumDelta({1.0})});
  const CFEvaluation a = cf_mu_s(SpectrumDelta({1.0}), grid, ScalarField::Real, 100, rng);
  CHECK(cf_sup_distance(a, a) == 0.0);

  const CFEvaluation b = cf_mu_s(SpectrumDelta({2.0}), grid, ScalarField::Real, 100, rng);
  // |e^{-1/2} - e^{-2}| ~= 0.471, exact at m = 1.
  CHECK(cf_sup_distance(a, b) ==
        doctest::Approx(std::exp(-0.5) - std::exp(-2.0)).epsilon(1e-12));

  const CFGrid other(1, {SpectrumDelta({2.0})});
  const CFEvaluation c = cf_mu_s(SpectrumDelta({1.0}), other, ScalarField::Real, 100, rng);
  CHECK_THROWS_AS(cf_sup_distance(a, c), GridMismatch);
}

TEST_CASE("cf_mu_s is seed-stable within Monte Carlo error") {
  const CFGrid grid = default_grid(2);
  Rng ra(RngHandle{68, 0}), rb(RngHandle{68, 1});
  const SpectrumDelta spec({2.0, 1.0});
  const CFEvaluation a = cf_mu_s(spec, grid, ScalarField::Real, 20000, ra);
  const CFEvaluation b = cf_mu_s(spec, grid, ScalarField::Real, 20000, rb);
  const auto comb = combined_stderr(a, b);
  for (std::size_t p = 0; p < comb.size(); ++p)
    CHECK(std::abs(a.values[p] - b.values[p]) <= 3.0 * comb[p] + 1e-12);
}

TEST_CASE("distinct parameters separate on a refined grid") {
  // Grid refining the [0,4] sector with spacing 0.25 at m = 2.
  std::vector<SpectrumDelta> pts;
  for (int i = 0; i <= 16; ++i)
    for (int j = 0; j <= i; ++j)
      pts.push_back(SpectrumDelta({0.25 * i, 0.25 * j}));
  const CFGrid grid(2, std::move(pts));

  Rng ra(RngHandle{69, 0}), rb(RngHandle{69, 1});
  const CFEvaluation a = cf_mu_s(SpectrumDelta({2.0, 1.0}), grid, ScalarField::Real, 100000, ra);
  const CFEvaluation b = cf_mu_s(SpectrumDelta({2.0, 1.2}), grid, ScalarField::Real, 100000, rb);
  const auto comb = combined_stderr(a, b);
  bool separated = false;
  for (std::size_t p = 0; p < comb.size(); ++p)
    if (std::abs(a.values[p] - b.values[p]) >= 5.0 * comb[p] &&
        std::abs(a.values[p] - b.values[p]) > 1e-6)
      separated = true;
  CHECK(separated);
}

TEST_CASE("CF modulus bound holds with Monte Carlo slack") {
  const auto samples = corner_batch(SpectrumDelta({1.0, 0.5}), ScalarField::Real, 32, 2000,
                                    RngHandle{70, 0});
  const CFEvaluation cf = empirical_cf(samples, default_grid(2));
  for (std::size_t p = 0; p < cf.values.size(); ++p)
    CHECK(std::abs(cf.values[p]) <= 1.0 + 3.0 * cf.mc_stderr[p]);
}
