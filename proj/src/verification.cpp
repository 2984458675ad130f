#include "ergomat/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergomat/decomposition.hpp"
#include "ergomat/linalg.hpp"
#include "ergomat/moments.hpp"
#include "ergomat/parallel.hpp"
#include "ergomat/sampling.hpp"
#include "ergomat/stats.hpp"

namespace ergomat {

namespace {

double ratio(double observed, double allowed) {
  if (observed == 0.0) return 0.0;
  if (allowed <= 0.0) return std::numeric_limits<double>::infinity();
  return observed / allowed;
}

// Batch of independent ensemble draws truncated to their top m x m
// corners (all the characteristic functional looks at).
std::vector<CornerMatrix> mu_s_corners(const SpectrumDelta& spec, ScalarField field, std::size_t n,
                                       std::size_t count, RngHandle rng, unsigned threads) {
  const std::size_t m = spec.rank();
  std::vector<CornerMatrix> out(count, CornerMatrix(field, m, m));
  parallel_for(count, threads, [&](std::size_t i) {
    Rng r(rng.split(i));
    out[i] = truncate_corner(sample_mu_s(spec, field, n, r), m);
  });
  return out;
}

std::vector<CornerMatrix> mu_s_samples(const SpectrumDelta& spec, ScalarField field, std::size_t n,
                                       std::size_t count, RngHandle rng, unsigned threads) {
  std::vector<CornerMatrix> out(count, CornerMatrix(field, 1, 1));
  parallel_for(count, threads, [&](std::size_t i) {
    Rng r(rng.split(i));
    out[i] = sample_mu_s(spec, field, n, r);
  });
  return out;
}

// Sup-distance between the empirical characteristic functional of
// orbital draws at resolution n and the semi-analytic reference (exact
// at m = 1).
double orbital_sup_distance(const SpectrumDelta& spec, std::size_t n, std::size_t num_samples,
                            const CFGrid& grid, RngHandle rng, unsigned threads) {
  const std::size_t m = spec.rank();
  CornerMatrix xblock(ScalarField::Real, n, m);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < m; ++j) xblock.real_at(j, j) = root_n * spec[j];

  std::vector<CornerMatrix> draws(num_samples, CornerMatrix(ScalarField::Real, m, m));
  parallel_for(num_samples, threads, [&](std::size_t i) {
    Rng r(rng.split(i));
    draws[i] = truncate_corner(orbital_sample(xblock, r), m);
  });
  Rng ref_rng(rng.split(num_samples + 1));
  const CFEvaluation ref = cf_mu_s(spec, grid, ScalarField::Real, num_samples, ref_rng);
  return cf_sup_distance(empirical_cf(draws, grid), ref);
}

}  // namespace

TestReport check_gs_equivariance(RngHandle rng, unsigned threads) {
  TestReport report;
  report.name = "haar_gs_equivariance";
  const std::size_t dims[] = {4, 32, 128};
  const std::size_t pairs = 100;
  const double tolerance = 1e-10;

  double max_err = 0.0;
  for (std::size_t di = 0; di < 3; ++di) {
    const std::size_t N = dims[di];
    std::vector<double> errs(pairs);
    const RngHandle sub = rng.split(di);
    parallel_for(pairs, threads, [&](std::size_t i) {
      Rng r(sub.split(i));
      const SquareMatrix o = haar_square(N, ScalarField::Real, r);
      SquareMatrix a(ScalarField::Real, N);
      a.data() = gaussian_matrix(N, N, ScalarField::Real, r).data();
      const SquareMatrix lhs = gram_schmidt(multiply(o, a));
      const SquareMatrix rhs = multiply(o, gram_schmidt(a));
      errs[i] = max_abs_diff(lhs, rhs);
    });
    const double worst = *std::max_element(errs.begin(), errs.end());
    report.detail("max_error_N" + std::to_string(N), worst);
    max_err = std::max(max_err, worst);
  }
  report.detail("pairs_per_dim", pairs);
  report.detail("tolerance", tolerance);
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);
  report.finalize({ratio(max_err, tolerance)});
  return report;
}

TestReport check_borel(ScalarField field, RngHandle rng, unsigned threads) {
  TestReport report = borel_test(1000, 1, 100000, field, rng, threads);
  report.name = field == ScalarField::Complex ? "borel_truncation_complex" : "borel_truncation_real";
  return report;
}

TestReport check_moment_limit(RngHandle rng, unsigned threads) {
  TestReport report;
  report.name = "moment_limit";
  const SpectrumDelta spec({2.0, 1.0, 0.5});
  const std::size_t n = 4096, trials = 200, kmax = 3;

  std::vector<double> errs(trials * kmax);
  parallel_for(trials, threads, [&](std::size_t t) {
    Rng r(rng.split(t));
    const CornerMatrix x = sample_mu_s(spec, ScalarField::Real, n, r);
    const std::vector<double> phat = empirical_moments(x, kmax);
    for (std::size_t k = 1; k <= kmax; ++k)
      errs[t * kmax + (k - 1)] = std::abs(phat[k - 1] - spec.power_sum(k));
  });

  report.detail("s", spec.to_string());
  report.detail("n", n);
  report.detail("trials", trials);
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);

  std::vector<double> ratios;
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<double> per_k(trials);
    for (std::size_t t = 0; t < trials; ++t) per_k[t] = errs[t * kmax + (k - 1)];
    const double med = median(per_k);
    const double target = spec.power_sum(k);
    report.detail("median_abs_error_k" + std::to_string(k), med);
    report.detail("target_k" + std::to_string(k), target);
    ratios.push_back(ratio(med, 0.15 * target));
    if (k == 1) ratios.push_back(ratio(med, 0.5));
  }
  report.finalize(ratios);
  return report;
}

TestReport check_identifiability(RngHandle rng) {
  TestReport report;
  report.name = "identifiability_roundtrip";
  const std::size_t trials = 1000;
  const double tolerance = 1e-7;

  Rng r(rng);
  double max_err = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t m = 1 + static_cast<std::size_t>(r.next_u64() % 8);
    std::vector<double> s(m);
    for (double& v : s) v = 10.0 * r.uniform_pos();
    std::sort(s.begin(), s.end(), std::greater<double>());
    const SpectrumDelta truth(s);
    const SpectrumDelta recovered = spectrum_from_moments(exact_power_sums(truth, m));
    max_err = std::max(max_err, truth.sup_distance(recovered));
  }
  report.detail("trials", trials);
  report.detail("max_rank", std::size_t{8});
  report.detail("max_sup_error", max_err);
  report.detail("tolerance", tolerance);
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);
  report.finalize({ratio(max_err, tolerance)});
  return report;
}

TestReport check_estimator_consistency(RngHandle rng, unsigned threads) {
  TestReport report;
  report.name = "estimator_consistency";
  const SpectrumDelta spec({2.0, 1.0, 0.5});
  const std::size_t n = 4096, trials = 200;

  std::vector<double> err(trials), route_gap(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    Rng r(rng.split(t));
    const CornerMatrix x = sample_mu_s(spec, ScalarField::Real, n, r);
    const SpectrumEstimate eigen = spectrum_estimate_eigen(x);
    const SpectrumEstimate moments = spectrum_estimate_moments(x);
    err[t] = spec.sup_distance(eigen.spec);
    route_gap[t] = eigen.spec.sup_distance(moments.spec);
  });

  std::size_t hits = 0;
  double max_gap = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (err[t] < 0.1) ++hits;
    max_gap = std::max(max_gap, route_gap[t]);
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(trials);

  report.detail("s", spec.to_string());
  report.detail("n", n);
  report.detail("trials", trials);
  report.detail("fraction_within_0.1", frac);
  report.detail("required_fraction", 0.95);
  report.detail("max_route_gap", max_gap);
  report.detail("route_tolerance", 1e-8);
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);
  report.finalize({ratio(1.0 - frac, 0.05), ratio(max_gap, 1e-8)});
  return report;
}

TestReport check_mutual_singularity(RngHandle rng, unsigned threads) {
  TestReport report;
  report.name = "mutual_singularity";
  const std::size_t n = 1024, half = 500;

  const auto a = mu_s_samples(SpectrumDelta({1.0}), ScalarField::Real, n, half, rng.split(1), threads);
  const auto b = mu_s_samples(SpectrumDelta({1.5}), ScalarField::Real, n, half, rng.split(2), threads);
  const SeparationReport sep = singularity_separation(a, b, 3);

  const auto pool =
      mu_s_samples(SpectrumDelta({1.0}), ScalarField::Real, n, 2 * half, rng.split(3), threads);
  const std::vector<CornerMatrix> null_a(pool.begin(), pool.begin() + half);
  const std::vector<CornerMatrix> null_b(pool.begin() + half, pool.end());
  const SeparationReport null_sep = singularity_separation(null_a, null_b, 3);

  report.detail("n", n);
  report.detail("samples_per_set", half);
  report.detail("accuracy", sep.accuracy);
  report.detail("required_accuracy", 0.99);
  report.detail("null_accuracy", null_sep.accuracy);
  report.detail("null_band", "0.5 +- 0.1");
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);
  report.finalize(
      {ratio(1.0 - sep.accuracy, 0.01), ratio(std::abs(null_sep.accuracy - 0.5), 0.1)});
  return report;
}

TestReport check_cf_consistency(RngHandle rng, unsigned threads) {
  TestReport report;
  report.name = "cf_consistency";
  const SpectrumDelta spec({2.0, 1.0});
  const std::size_t n = 64, count = 100000;
  const CFGrid grid(2, {SpectrumDelta({0.5, 0.0}), SpectrumDelta({0.5, 0.5}),
                        SpectrumDelta({1.0, 0.5}), SpectrumDelta({1.0, 1.0}),
                        SpectrumDelta({2.0, 1.0})});

  const auto corners = mu_s_corners(spec, ScalarField::Real, n, count, rng.split(1), threads);
  const CFEvaluation emp = empirical_cf(corners, grid);
  Rng ref_rng(rng.split(2));
  const CFEvaluation ref = cf_mu_s(spec, grid, ScalarField::Real, count, ref_rng);
  const std::vector<double> comb = combined_stderr(emp, ref);

  std::vector<double> ratios;
  double sup = 0.0;
  for (std::size_t p = 0; p < comb.size(); ++p) {
    const double d = std::abs(emp.values[p] - ref.values[p]);
    sup = std::max(sup, d);
    ratios.push_back(ratio(d, 3.0 * comb[p]));
  }

  // Rank-one closed form: the Haar average is degenerate and the
  // functional equals exp(-lambda^2 s^2 / 2) exactly.
  const SpectrumDelta s1({1.5});
  const CFGrid grid1(1, {SpectrumDelta({0.5}), SpectrumDelta({1.0}), SpectrumDelta({2.0})});
  Rng one_rng(rng.split(3));
  const CFEvaluation one = cf_mu_s(s1, grid1, ScalarField::Real, 10, one_rng);
  double closed_err = 0.0;
  for (std::size_t p = 0; p < grid1.points.size(); ++p) {
    const double lam = grid1.points[p][0];
    const double expect = std::exp(-lam * lam * s1[0] * s1[0] / 2.0);
    closed_err = std::max(closed_err, std::abs(one.values[p] - cplx(expect, 0.0)));
  }
  ratios.push_back(ratio(closed_err, 1e-12));

  report.detail("s", spec.to_string());
  report.detail("n", n);
  report.detail("num_samples", count);
  report.detail("grid_points", grid.points.size());
  report.detail("sup_distance", sup);
  report.detail("closed_form_error_m1", closed_err);
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);
  report.finalize(ratios);
  return report;
}

TestReport check_decomposition_recovery(RngHandle rng, unsigned threads) {
  TestReport report;
  report.name = "decomposition_recovery";
  const std::size_t n = 1024, half = 500;
  const SpectrumDelta heavy({2.0, 0.0}), light({0.5, 0.0});
  const double cluster_tol = 0.3;

  auto mix = mu_s_samples(heavy, ScalarField::Real, n, half, rng.split(1), threads);
  auto tail = mu_s_samples(light, ScalarField::Real, n, half, rng.split(2), threads);
  mix.insert(mix.end(), tail.begin(), tail.end());
  const EmpiricalMixture mixture = decompose_samples(mix, cluster_tol);

  std::vector<double> ratios;
  ratios.push_back(mixture.atoms.size() == 2 ? 0.0 : 2.0);
  double weight_err = 1.0, spec_err = 10.0;
  if (mixture.atoms.size() == 2) {
    weight_err = 0.0;
    spec_err = 0.0;
    for (const auto& atom : mixture.atoms) {
      weight_err = std::max(weight_err, std::abs(atom.weight - 0.5));
      const SpectrumDelta& truth = atom.spec[0] > 1.0 ? heavy : light;
      spec_err = std::max(spec_err, atom.spec.sup_distance(truth));
    }
  }
  ratios.push_back(ratio(weight_err, 0.05));
  ratios.push_back(ratio(spec_err, 0.1));

  // Single-component input must come back as one atom.
  const auto lone =
      mu_s_samples(SpectrumDelta({1.2, 0.7}), ScalarField::Real, n, 300, rng.split(3), threads);
  const EmpiricalMixture dirac = decompose_samples(lone, cluster_tol);
  ratios.push_back(dirac.atoms.size() == 1 ? 0.0 : 2.0);

  report.detail("n", n);
  report.detail("mixture_samples", 2 * half);
  report.detail("cluster_tol", cluster_tol);
  report.detail("atoms_found", mixture.atoms.size());
  report.detail("max_weight_error", weight_err);
  report.detail("max_spec_error", spec_err);
  report.detail("dirac_atoms_found", dirac.atoms.size());
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);
  report.finalize(ratios);
  return report;
}

TestReport check_orbital_convergence(RngHandle rng, unsigned threads) {
  const SpectrumDelta spec({1.0});
  const CFGrid grid(1, {SpectrumDelta({0.5}), SpectrumDelta({1.0}), SpectrumDelta({2.0})});

  TestReport inner = orbital_convergence_test(spec, 1024, 10000, grid, rng.split(1),
                                              ScalarField::Real, threads);

  // Resolution sweep: the sup-distance to the exact rank-one reference
  // must shrink in median as n grows.
  const std::size_t seeds = 20, sweep_samples = 100000;
  const std::size_t res[] = {64, 256, 1024};
  double med[3];
  for (std::size_t ri = 0; ri < 3; ++ri) {
    std::vector<double> dists(seeds);
    for (std::size_t k = 0; k < seeds; ++k)
      dists[k] = orbital_sup_distance(spec, res[ri], sweep_samples, grid,
                                      rng.split(100 + ri * seeds + k), threads);
    med[ri] = median(dists);
  }

  TestReport report;
  report.name = "orbital_convergence";
  report.statistic = inner.statistic;
  report.details = inner.details;
  report.detail("sweep_samples", sweep_samples);
  report.detail("sweep_seeds", seeds);
  report.detail("median_dist_n64", med[0]);
  report.detail("median_dist_n256", med[1]);
  report.detail("median_dist_n1024", med[2]);

  std::vector<double> ratios{inner.statistic, ratio(med[1], med[0]), ratio(med[2], med[1])};
  report.details.erase(
      std::remove_if(report.details.begin(), report.details.end(),
                     [](const auto& kv) { return kv.first == "direction"; }),
      report.details.end());
  report.finalize(ratios);
  return report;
}

TestReport check_bi_invariance(RngHandle rng, unsigned threads) {
  TestReport report;
  report.name = "bi_invariance";
  const SpectrumDelta spec({2.0, 1.0});
  const std::size_t n = 64, count = 10000, pairs = 5;
  const CFGrid grid = default_grid(2);

  std::vector<double> ratios;
  double worst = 0.0;
  for (ScalarField field : {ScalarField::Real, ScalarField::Complex}) {
    const std::size_t base = field == ScalarField::Complex ? 500 : 0;
    for (std::size_t p = 0; p < pairs; ++p) {
      Rng gen(rng.split(base + 2 * p));
      const SquareMatrix u = haar_square(n, field, gen);
      const SquareMatrix v = haar_square(spec.rank(), field, gen);
      const TestReport t =
          invariance_test(spec, n, u, v, count, grid, rng.split(base + 2 * p + 1), threads);
      ratios.push_back(t.statistic);
      worst = std::max(worst, t.statistic);
    }
  }
  report.detail("s", spec.to_string());
  report.detail("n", n);
  report.detail("num_samples", count);
  report.detail("pairs_per_field", pairs);
  report.detail("worst_ratio", worst);
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);
  report.finalize(ratios);
  return report;
}

std::vector<TestReport> verification_battery(std::uint64_t seed, unsigned threads) {
  const RngHandle root{seed, 0};
  std::vector<TestReport> reports;
  reports.push_back(check_gs_equivariance(root.split(1), threads));
  reports.push_back(check_borel(ScalarField::Real, root.split(2), threads));
  reports.push_back(check_borel(ScalarField::Complex, root.split(3), threads));
  reports.push_back(check_moment_limit(root.split(4), threads));
  reports.push_back(check_identifiability(root.split(5)));
  reports.push_back(check_estimator_consistency(root.split(6), threads));
  reports.push_back(check_mutual_singularity(root.split(7), threads));
  reports.push_back(check_cf_consistency(root.split(8), threads));
  reports.push_back(check_decomposition_recovery(root.split(9), threads));
  reports.push_back(check_orbital_convergence(root.split(10), threads));
  reports.push_back(check_bi_invariance(root.split(11), threads));
  return reports;
}

}  // namespace ergomat
