#include "ergomat/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "ergomat/errors.hpp"
#include "ergomat/linalg.hpp"
#include "ergomat/parallel.hpp"
#include "ergomat/sampling.hpp"
#include "ergomat/stats.hpp"

namespace ergomat {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

const char* field_name(ScalarField f) { return f == ScalarField::Complex ? "complex" : "real"; }

// Ratio of an observed value to its allowance; 0/0 counts as satisfied.
double ratio(double observed, double allowed) {
  if (observed == 0.0) return 0.0;
  if (allowed <= 0.0) return std::numeric_limits<double>::infinity();
  return observed / allowed;
}

}  // namespace

void TestReport::detail(const std::string& key, double value) { detail(key, fmt(value)); }

void TestReport::detail(const std::string& key, std::size_t value) {
  detail(key, std::to_string(value));
}

void TestReport::finalize(const std::vector<double>& ratios) {
  statistic = 0.0;
  for (double r : ratios) statistic = std::max(statistic, r);
  threshold = 1.0;
  passed = statistic <= threshold;
  detail("direction", "statistic<=threshold");
}

TestReport borel_test(std::size_t N, std::size_t S, std::size_t num_samples, ScalarField field,
                      RngHandle rng, unsigned threads) {
  if (S > N) throw OutOfRange("borel_test: need S <= N");
  if (S == 0 || num_samples < 2) throw OutOfRange("borel_test: need S >= 1 and >= 2 samples");

  TestReport report;
  report.name = "borel_truncation";
  report.detail("N", N);
  report.detail("S", S);
  report.detail("num_samples", num_samples);
  report.detail("field", field_name(field));
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);

  const bool is_complex = field == ScalarField::Complex;
  const std::size_t entries = S * S;
  const std::size_t per_sample = entries * (is_complex ? 2 : 1);
  const double scale = std::sqrt(static_cast<double>(N)) * (is_complex ? std::sqrt(2.0) : 1.0);

  std::vector<double> values(num_samples * per_sample);
  parallel_for(num_samples, threads, [&](std::size_t i) {
    Rng r(rng.split(i));
    const CornerMatrix frame = haar_frame(N, S, field, r);
    double* out = values.data() + i * per_sample;
    for (std::size_t a = 0; a < S; ++a)
      for (std::size_t b = 0; b < S; ++b) {
        if (is_complex) {
          const cplx z = frame.complex_at(a, b);
          out[2 * (a * S + b)] = scale * z.real();
          out[2 * (a * S + b) + 1] = scale * z.imag();
        } else {
          out[a * S + b] = scale * frame.real_at(a, b);
        }
      }
  });

  const double critical = kolmogorov_critical_value(0.01);
  const double allowance = 1.0 / std::sqrt(static_cast<double>(N));
  double ks_max = 0.0;
  if (is_complex) {
    std::vector<double> re(num_samples * entries), im(num_samples * entries);
    for (std::size_t i = 0; i < num_samples * entries; ++i) {
      re[i] = values[2 * i];
      im[i] = values[2 * i + 1];
    }
    const double ks_re = ks_statistic_normal(std::move(re));
    const double ks_im = ks_statistic_normal(std::move(im));
    report.detail("ks_statistic_re", ks_re);
    report.detail("ks_statistic_im", ks_im);
    ks_max = std::max(ks_re, ks_im);
  } else {
    ks_max = ks_statistic_normal(values);
    report.detail("ks_statistic", ks_max);
  }
  const std::size_t pooled = num_samples * entries;
  const double ks_threshold = critical / std::sqrt(static_cast<double>(pooled)) + allowance;
  report.detail("pooled_count", pooled);
  report.detail("ks_critical_value", critical / std::sqrt(static_cast<double>(pooled)));
  report.detail("bias_allowance", allowance);
  report.detail("ks_threshold", ks_threshold);

  std::vector<double> ratios{ratio(ks_max, ks_threshold)};

  if (S >= 2) {
    // Asymptotic independence: cross-entry correlations must vanish.
    double max_corr = 0.0;
    std::vector<double> xa(num_samples), xb(num_samples);
    for (std::size_t a = 0; a < per_sample; ++a) {
      for (std::size_t b = a + 1; b < per_sample; ++b) {
        for (std::size_t i = 0; i < num_samples; ++i) {
          xa[i] = values[i * per_sample + a];
          xb[i] = values[i * per_sample + b];
        }
        max_corr = std::max(max_corr, std::abs(pearson_correlation(xa, xb)));
      }
    }
    const double corr_threshold = 3.0 / std::sqrt(static_cast<double>(num_samples));
    report.detail("max_abs_correlation", max_corr);
    report.detail("correlation_threshold", corr_threshold);
    ratios.push_back(ratio(max_corr, corr_threshold));
  }

  // The allowance grows like 1/sqrt(N); once it dominates the scale of a
  // meaningful KS comparison the truncation limit is out of reach at this
  // N and the suite cannot certify anything.
  const bool small_N = allowance > 0.1;
  report.detail("small_N_regime", small_N ? "true" : "false");
  if (small_N) ratios.push_back(allowance / 0.1);

  report.finalize(ratios);
  return report;
}

TestReport invariance_test(const SpectrumDelta& spec, std::size_t n, const SquareMatrix& u,
                           const SquareMatrix& v, std::size_t num_samples, const CFGrid& grid,
                           RngHandle rng, unsigned threads) {
  const std::size_t m = spec.rank();
  if (u.field() != v.field()) throw NotOrthogonal("invariance_test: u and v fields differ");
  if (u.dim() != n || v.dim() != m)
    throw OutOfRange("invariance_test: u must be n x n and v must be m x m");
  if (n < m) throw OutOfRange("invariance_test: need n >= m");
  if (num_samples < 2) throw OutOfRange("invariance_test: need >= 2 samples");
  if (orthonormality_defect(u) > 1e-10)
    throw NotOrthogonal("invariance_test: u is not orthogonal/unitary within 1e-10");
  if (orthonormality_defect(v) > 1e-10)
    throw NotOrthogonal("invariance_test: v is not orthogonal/unitary within 1e-10");

  const ScalarField field = u.field();
  std::vector<CornerMatrix> plain, moved;
  plain.reserve(num_samples);
  moved.reserve(num_samples);
  for (std::size_t i = 0; i < num_samples; ++i) {
    plain.emplace_back(field, m, m);
    moved.emplace_back(field, m, m);
  }
  parallel_for(num_samples, threads, [&](std::size_t i) {
    Rng r(rng.split(i));
    const CornerMatrix x = sample_mu_s(spec, field, n, r);
    plain[i] = truncate_corner(x, m);
    moved[i] = truncate_corner(group_action(u, x, v), m);
  });

  const CFEvaluation cf_plain = empirical_cf(plain, grid);
  const CFEvaluation cf_moved = empirical_cf(moved, grid);
  const std::vector<double> comb = combined_stderr(cf_plain, cf_moved);

  TestReport report;
  report.name = "group_invariance";
  report.detail("s", spec.to_string());
  report.detail("n", n);
  report.detail("num_samples", num_samples);
  report.detail("field", field_name(field));
  report.detail("grid_points", grid.points.size());
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);

  std::vector<double> ratios;
  double sup = 0.0, worst_allow = 0.0;
  for (std::size_t p = 0; p < comb.size(); ++p) {
    const double d = std::abs(cf_plain.values[p] - cf_moved.values[p]);
    ratios.push_back(ratio(d, 3.0 * comb[p]));
    if (d >= sup) {
      sup = d;
      worst_allow = 3.0 * comb[p];
    }
  }
  report.detail("sup_distance", sup);
  report.detail("allowance_at_sup", worst_allow);
  report.finalize(ratios);
  return report;
}

TestReport orbital_convergence_test(const SpectrumDelta& spec, std::size_t n,
                                    std::size_t num_samples, const CFGrid& grid, RngHandle rng,
                                    ScalarField field, unsigned threads) {
  const std::size_t m = spec.rank();
  if (n < m) throw OutOfRange("orbital_convergence_test: need n >= m");
  if (num_samples < 2) throw OutOfRange("orbital_convergence_test: need >= 2 samples");

  // Deterministic block with scaled Gram matrix exactly diag(s)^2: the
  // first m identity columns times sqrt(n) * diag(s).
  CornerMatrix xblock(field, n, m);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < m; ++j) {
    if (field == ScalarField::Complex)
      xblock.complex_at(j, j) = root_n * spec[j];
    else
      xblock.real_at(j, j) = root_n * spec[j];
  }

  std::vector<CornerMatrix> draws;
  draws.reserve(num_samples);
  for (std::size_t i = 0; i < num_samples; ++i) draws.emplace_back(field, m, m);
  parallel_for(num_samples, threads, [&](std::size_t i) {
    Rng r(rng.split(i));
    draws[i] = truncate_corner(orbital_sample(xblock, r), m);
  });

  const CFEvaluation emp = empirical_cf(draws, grid);
  Rng ref_rng(rng.split(num_samples + 1));
  const CFEvaluation ref = cf_mu_s(spec, grid, field, num_samples, ref_rng);
  const std::vector<double> comb = combined_stderr(emp, ref);

  const double bias_allowance = 2.0 * static_cast<double>(m) / root_n;

  TestReport report;
  report.name = "orbital_convergence";
  report.detail("s", spec.to_string());
  report.detail("n", n);
  report.detail("num_samples", num_samples);
  report.detail("field", field_name(field));
  report.detail("grid_points", grid.points.size());
  report.detail("bias_allowance", bias_allowance);
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);

  std::vector<double> ratios;
  double sup = 0.0;
  for (std::size_t p = 0; p < comb.size(); ++p) {
    const double d = std::abs(emp.values[p] - ref.values[p]);
    sup = std::max(sup, d);
    ratios.push_back(ratio(d, 3.0 * comb[p] + bias_allowance));
  }
  report.detail("sup_distance", sup);

  // b(n) >= 0.2 means the corner-error envelope swallows any real
  // discrepancy: the resolution is too small to certify convergence.
  const bool small_n = bias_allowance > 0.2;
  report.detail("small_n_regime", small_n ? "true" : "false");
  if (small_n) ratios.push_back(bias_allowance / 0.2);

  report.finalize(ratios);
  return report;
}

TestReport tightness_diagnostic(const std::vector<SpectrumDelta>& spec_sequence, std::size_t n,
                                std::size_t num_samples, RngHandle rng, ScalarField field,
                                unsigned threads) {
  if (spec_sequence.empty()) throw EmptySampleSet("tightness_diagnostic: empty sequence");
  if (num_samples < 1) throw OutOfRange("tightness_diagnostic: need >= 1 sample");

  TestReport report;
  report.name = "tightness";
  report.detail("n", n);
  report.detail("num_samples", num_samples);
  report.detail("field", field_name(field));
  report.detail("seed", rng.seed);
  report.detail("stream", rng.stream);

  std::vector<double> ratios, quantiles(spec_sequence.size());
  for (std::size_t si = 0; si < spec_sequence.size(); ++si) {
    const SpectrumDelta& spec = spec_sequence[si];
    std::vector<double> norms(num_samples);
    const RngHandle sub = rng.split(si);
    parallel_for(num_samples, threads, [&](std::size_t i) {
      Rng r(sub.split(i));
      const CornerMatrix x = sample_mu_s(spec, field, n, r);
      double mx = 0.0;
      for (std::size_t a = 0; a < x.rows(); ++a)
        for (std::size_t b = 0; b < x.cols(); ++b) mx = std::max(mx, std::abs(x.entry(a, b)));
      norms[i] = mx;
    });
    quantiles[si] = quantile(norms, 0.99);

    const double cells = std::max(static_cast<double>(n * spec.rank()), 2.0);
    const double envelope = 2.0 * std::sqrt(2.0 * std::log(cells)) + 2.0;
    ratios.push_back(ratio(quantiles[si], envelope * std::max(1.0, spec[0])));
    report.detail("q99_" + std::to_string(si) + "_s1_" + fmt(spec[0]), quantiles[si]);
  }

  // Escape signature: the quantiles of an unbounded parameter sequence
  // scale linearly with s_1.
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  double s1min = std::numeric_limits<double>::infinity(), s1max = 0.0;
  std::size_t positive = 0;
  for (std::size_t si = 0; si < spec_sequence.size(); ++si) {
    const double s1 = spec_sequence[si][0];
    if (s1 <= 0.0) continue;
    ++positive;
    rmin = std::min(rmin, quantiles[si] / s1);
    rmax = std::max(rmax, quantiles[si] / s1);
    s1min = std::min(s1min, s1);
    s1max = std::max(s1max, s1);
  }
  const bool tracks = positive >= 2 && s1max >= 4.0 * s1min && rmax <= 2.0 * rmin;
  report.detail("quantiles_track_s1", tracks ? "true" : "false");

  report.finalize(ratios);
  return report;
}

}  // namespace ergomat
