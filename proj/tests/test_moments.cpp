#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ergomat/errors.hpp"
#include "ergomat/moments.hpp"
#include "ergomat/sampling.hpp"
#include "ergomat/stats.hpp"

using namespace ergomat;

namespace {

// Block whose scaled Gram matrix is exactly the identity.
CornerMatrix scaled_orthonormal_block(std::size_t n, std::size_t m) {
  CornerMatrix x(ScalarField::Real, n, m);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < m; ++j) x.real_at(j, j) = root_n;
  return x;
}

SpectrumDelta random_spectrum(Rng& rng, std::size_t max_rank, double s1_cap) {
  const std::size_t m = 1 + static_cast<std::size_t>(rng.next_u64() % max_rank);
  std::vector<double> s(m);
  for (double& v : s) v = s1_cap * rng.uniform_pos();
  return SpectrumDelta::from_unsorted(std::move(s));
}

}  // namespace

TEST_CASE("empirical_moment on exact blocks") {
  const CornerMatrix w = scaled_orthonormal_block(16, 3);
  for (std::size_t k : {1, 2, 5}) CHECK(empirical_moment(w, k) == doctest::Approx(3.0));
  CHECK(empirical_moment(CornerMatrix(ScalarField::Real, 8, 2), 1) == 0.0);
}

TEST_CASE("empirical_moment concentrates near the power sum") {
  Rng rng(RngHandle{41, 0});
  const SpectrumDelta spec({2.0, 1.0});
  const CornerMatrix x = sample_mu_s(spec, ScalarField::Real, 4096, rng);
  CHECK(std::abs(empirical_moment(x, 1) - 5.0) < 0.5);
}

TEST_CASE("spectrum_from_moments inverts hand-computed power sums") {
  // p = (5, 17): e1 = 5, e2 = (25 - 17)/2 = 4; roots of t^2 - 5t + 4 are 4, 1.
  const SpectrumDelta s2 = spectrum_from_moments(MomentVector({5.0, 17.0}), 2);
  CHECK(s2[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s2[1] == doctest::Approx(1.0).epsilon(1e-12));

  const SpectrumDelta s3 = spectrum_from_moments(MomentVector({0.0, 0.0, 0.0}), 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(s3[i] == 0.0);

  const SpectrumDelta s1 = spectrum_from_moments(MomentVector({9.0}), 1);
  CHECK(s1[0] == doctest::Approx(3.0));
}

TEST_CASE("spectrum_from_moments rejects unrealizable power sums") {
  // e2 = (p1^2 - p2)/2 = -4.5 < 0 forces a negative root.
  CHECK_THROWS_AS(spectrum_from_moments(MomentVector({1.0, 10.0}), 2), InconsistentMoments);
  CHECK_THROWS_AS(spectrum_from_moments(MomentVector({1.0}), 2), OutOfRange);
}

TEST_CASE("roundtrip: exact power sums recover the spectrum to 1e-7") {
  Rng rng(RngHandle{42, 0});
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const SpectrumDelta truth = random_spectrum(rng, 8, 10.0);
    const SpectrumDelta back =
        spectrum_from_moments(exact_power_sums(truth, truth.rank()));
    worst = std::max(worst, truth.sup_distance(back));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("Cauchy-Schwarz chain holds for exact power sums") {
  Rng rng(RngHandle{43, 0});
  for (int t = 0; t < 50; ++t) {
    const SpectrumDelta s = random_spectrum(rng, 6, 5.0);
    const MomentVector p = MomentVector::exact(s, 6);
    for (std::size_t k = 2; k <= 5; ++k)
      CHECK(p[k + 1] * p[k - 1] >= p[k] * p[k] - 1e-9 * std::max(1.0, p[k] * p[k]));
  }
}

TEST_CASE("eigen estimator on exact and degenerate blocks") {
  const SpectrumEstimate est = spectrum_estimate_eigen(scaled_orthonormal_block(32, 3));
  for (std::size_t i = 0; i < 3; ++i) CHECK(est.spec[i] == doctest::Approx(1.0));
  CHECK(est.method == EstimateMethod::Eigen);
  CHECK(est.residual < 1e-9);

  const SpectrumEstimate zero = spectrum_estimate_eigen(CornerMatrix(ScalarField::Real, 8, 2));
  CHECK(zero.spec[0] == 0.0);
  CHECK(zero.spec[1] == 0.0);

  // Fewer rows than columns: spectrum padded with zeros, residual flagged.
  const SpectrumEstimate thin = spectrum_estimate_eigen(
      CornerMatrix::from_data(ScalarField::Real, 1, 3, {1.0, 2.0, 3.0}));
  CHECK(thin.spec[1] == 0.0);
  CHECK(thin.spec[2] == 0.0);
  CHECK(std::isinf(thin.residual));
}

TEST_CASE("eigen estimator is consistent at desk scale") {
  const RngHandle h{44, 0};
  const SpectrumDelta spec({2.0, 1.0, 0.5});
  std::size_t hits = 0;
  const std::size_t trials = 40;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(h.split(t));
    const CornerMatrix x = sample_mu_s(spec, ScalarField::Real, 4096, rng);
    if (spec.sup_distance(spectrum_estimate_eigen(x).spec) < 0.1) ++hits;
  }
  CHECK(hits >= trials - 2);
}

TEST_CASE("eigen and moment routes invert the same spectrum") {
  const RngHandle h{45, 0};
  for (ScalarField field : {ScalarField::Real, ScalarField::Complex}) {
    for (std::size_t t = 0; t < 20; ++t) {
      Rng rng(h.split(t + (field == ScalarField::Complex ? 100 : 0)));
      const CornerMatrix x = gaussian_matrix(64, 4, field, rng);
      const SpectrumDelta a = spectrum_estimate_eigen(x).spec;
      const SpectrumDelta b = spectrum_estimate_moments(x).spec;
      CHECK(a.sup_distance(b) < 1e-8);
    }
  }
}

TEST_CASE("estimates are invariant under the group action") {
  Rng rng(RngHandle{46, 0});
  const CornerMatrix x = gaussian_matrix(24, 3, ScalarField::Real, rng);
  const SquareMatrix u = haar_square(24, ScalarField::Real, rng);
  const SquareMatrix v = haar_square(3, ScalarField::Real, rng);
  const SpectrumDelta before = spectrum_estimate_eigen(x).spec;
  const SpectrumDelta after = spectrum_estimate_eigen(group_action(u, x, v)).spec;
  CHECK(before.sup_distance(after) < 1e-8);
}

TEST_CASE("estimator error shrinks like n^{-1/2}") {
  const RngHandle h{47, 0};
  const SpectrumDelta spec({2.0, 1.0});
  const std::size_t trials = 48;
  std::vector<double> err_small(trials), err_large(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng ra(h.split(2 * t)), rb(h.split(2 * t + 1));
    err_small[t] = spec.sup_distance(
        spectrum_estimate_eigen(sample_mu_s(spec, ScalarField::Real, 1024, ra)).spec);
    err_large[t] = spec.sup_distance(
        spectrum_estimate_eigen(sample_mu_s(spec, ScalarField::Real, 4096, rb)).spec);
  }
  CHECK(median(err_large) <= 0.7 * median(err_small));
}

TEST_CASE("a_s_statistic separates matching from mismatched parameters") {
  const RngHandle h{48, 0};
  const SpectrumDelta truth({2.0, 1.0});
  const SpectrumDelta wrong({3.0, 1.0});
  std::vector<double> stat_true, stat_wrong;
  for (std::size_t t = 0; t < 40; ++t) {
    Rng rng(h.split(t));
    const CornerMatrix x = sample_mu_s(truth, ScalarField::Real, 4096, rng);
    stat_true.push_back(a_s_statistic(x, truth, 3));
    stat_wrong.push_back(a_s_statistic(x, wrong, 3));
  }
  // The k = 3 term fluctuates at scale 3*sqrt(2/n * sum s^12) ~ 4.2, so the
  // matching statistic concentrates well below the mismatched one
  // (|3^6 - 2^6| = 665).
  CHECK(median(stat_true) < 6.0);
  CHECK(median(stat_wrong) > 100.0);
}

TEST_CASE("a_s_statistic exact cases") {
  Rng rng(RngHandle{49, 0});
  const CornerMatrix x = gaussian_matrix(256, 2, ScalarField::Real, rng);
  const SpectrumDelta own = spectrum_estimate_eigen(x).spec;
  CHECK(a_s_statistic(x, own, 2) < 1e-9);

  const CornerMatrix zero(ScalarField::Real, 4, 1);
  CHECK(a_s_statistic(zero, SpectrumDelta({1.0}), 1) == doctest::Approx(1.0));
}

TEST_CASE("MomentVector validates sign") {
  CHECK_THROWS_AS(MomentVector({1.0, -0.5}), OutOfRange);
  CHECK_THROWS_AS(MomentVector({}), OutOfRange);
}
