#include "ergomat/characteristic.hpp"

#include <algorithm>
#include <cmath>

#include "ergomat/errors.hpp"
#include "ergomat/sampling.hpp"

namespace ergomat {

CFGrid::CFGrid(std::size_t rank, std::vector<SpectrumDelta> pts) : m(rank), points(std::move(pts)) {
  if (m == 0) throw OutOfRange("CFGrid: rank must be >= 1");
  for (const auto& p : points)
    if (p.rank() != m) throw GridMismatch("CFGrid: point rank differs from grid rank");
}

CFGrid default_grid(std::size_t m, std::size_t max_points) {
  static const double levels[] = {0.0, 0.5, 1.0, 2.0};
  std::vector<SpectrumDelta> pts;
  // Enumerate nonincreasing tuples over the level set, largest first.
  std::vector<std::size_t> idx(m, 3);  // start from the all-2.0 point
  while (true) {
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = levels[idx[i]];
    pts.emplace_back(std::move(v));
    if (pts.size() >= max_points) break;
    // Next tuple in reverse-lexicographic order with the descending constraint.
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (idx[pos] > 0) {
        --idx[pos];
        for (std::size_t q = pos + 1; q < m; ++q) idx[q] = idx[pos];
        break;
      }
      if (pos == 0) return CFGrid(m, std::move(pts));
    }
  }
  return CFGrid(m, std::move(pts));
}

CFEvaluation cf_mu_s(const SpectrumDelta& spec, const CFGrid& grid, ScalarField field,
                     std::size_t mc_iters, Rng& rng) {
  if (mc_iters == 0) throw OutOfRange("cf_mu_s: need mc_iters >= 1");
  const std::size_t m = spec.rank();
  if (grid.m != m) throw GridMismatch("cf_mu_s: grid rank differs from spectrum rank");

  const double denom = field == ScalarField::Complex ? 4.0 : 2.0;
  std::vector<double> s2(m);
  for (std::size_t j = 0; j < m; ++j) s2[j] = spec[j] * spec[j];

  const std::size_t npts = grid.points.size();
  CFEvaluation exact{grid, std::vector<cplx>(npts), std::vector<double>(npts, 0.0)};
  if (m == 1) {
    // |Q_11|^2 == 1 on O(1) and U(1): the Haar average is a constant and
    // the functional is exp(-lambda^2 s^2 / denom) with zero variance.
    for (std::size_t p = 0; p < npts; ++p) {
      const double lam = grid.points[p][0];
      exact.values[p] = cplx(std::exp(-lam * lam * s2[0] / denom), 0.0);
    }
    return exact;
  }

  // Welford accumulation: degenerate (constant-kernel) points report an
  // exact mean with exactly zero variance.
  std::vector<double> mean(npts, 0.0), m2(npts, 0.0);
  std::vector<double> colsum(m);

  for (std::size_t it = 0; it < mc_iters; ++it) {
    const SquareMatrix q = haar_square(m, field, rng);
    // colsum[l] = sum_j s_j^2 |Q_jl|^2, shared across grid points.
    for (std::size_t l = 0; l < m; ++l) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += s2[j] * std::norm(q.entry(j, l));
      colsum[l] = acc;
    }
    for (std::size_t p = 0; p < npts; ++p) {
      const auto& lam = grid.points[p];
      double expo = 0.0;
      for (std::size_t l = 0; l < m; ++l) expo += lam[l] * lam[l] * colsum[l];
      const double v = std::exp(-expo / denom);
      const double delta = v - mean[p];
      mean[p] += delta / static_cast<double>(it + 1);
      m2[p] += delta * (v - mean[p]);
    }
  }

  CFEvaluation out{grid, std::vector<cplx>(npts), std::vector<double>(npts, 0.0)};
  const double kn = static_cast<double>(mc_iters);
  for (std::size_t p = 0; p < npts; ++p) {
    out.values[p] = cplx(mean[p], 0.0);
    if (mc_iters > 1) out.mc_stderr[p] = std::sqrt(std::max(0.0, m2[p] / (kn - 1.0)) / kn);
  }
  return out;
}

CFEvaluation empirical_cf(const std::vector<CornerMatrix>& samples, const CFGrid& grid) {
  if (samples.empty()) throw EmptySampleSet("empirical_cf: no samples");
  const std::size_t m = grid.m;
  for (const auto& x : samples) {
    if (!x.same_shape(samples.front())) throw RankMismatch("empirical_cf: mixed sample shapes");
  }
  if (samples.front().cols() != m) throw GridMismatch("empirical_cf: sample rank differs from grid");
  if (samples.front().rows() < m) throw OutOfRange("empirical_cf: need n >= m rows");

  const std::size_t npts = grid.points.size();
  const std::size_t ns = samples.size();
  CFEvaluation out{grid, std::vector<cplx>(npts), std::vector<double>(npts, 0.0)};

  // Phases depend only on the diagonal of the top m x m block.
  const bool is_complex = samples.front().field() == ScalarField::Complex;
  std::vector<double> diag(ns * m);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t l = 0; l < m; ++l)
      diag[i * m + l] =
          is_complex ? samples[i].complex_at(l, l).real() : samples[i].real_at(l, l);

  for (std::size_t p = 0; p < npts; ++p) {
    const auto& lam = grid.points[p];
    cplx acc(0.0, 0.0);
    std::vector<cplx> vals(ns);
    for (std::size_t i = 0; i < ns; ++i) {
      double theta = 0.0;
      for (std::size_t l = 0; l < m; ++l) theta += lam[l] * diag[i * m + l];
      vals[i] = cplx(std::cos(theta), std::sin(theta));
      acc += vals[i];
    }
    const cplx mean = acc / static_cast<double>(ns);
    out.values[p] = mean;
    if (ns > 1) {
      // Jackknife standard error of the mean.
      double ssq = 0.0;
      for (const cplx& v : vals) ssq += std::norm(v - mean);
      out.mc_stderr[p] = std::sqrt(ssq / (static_cast<double>(ns) * (static_cast<double>(ns) - 1.0)));
    }
  }
  return out;
}

double cf_sup_distance(const CFEvaluation& a, const CFEvaluation& b) {
  if (!(a.grid == b.grid)) throw GridMismatch("cf_sup_distance: grids differ");
  double d = 0.0;
  for (std::size_t p = 0; p < a.values.size(); ++p)
    d = std::max(d, std::abs(a.values[p] - b.values[p]));
  return d;
}

std::vector<double> combined_stderr(const CFEvaluation& a, const CFEvaluation& b) {
  if (!(a.grid == b.grid)) throw GridMismatch("combined_stderr: grids differ");
  std::vector<double> out(a.values.size());
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = std::sqrt(a.mc_stderr[p] * a.mc_stderr[p] + b.mc_stderr[p] * b.mc_stderr[p]);
  return out;
}

}  // namespace ergomat
