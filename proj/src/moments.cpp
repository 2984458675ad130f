#include "ergomat/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergomat/errors.hpp"
#include "ergomat/polyroots.hpp"

namespace ergomat {

namespace {

std::vector<double> power_sums_of_eigs(const std::vector<double>& eig, std::size_t K) {
  std::vector<double> p(K, 0.0);
  for (double v : eig) {
    double acc = 1.0;
    for (std::size_t k = 0; k < K; ++k) {
      acc *= v;
      p[k] += acc;
    }
  }
  return p;
}

SpectrumDelta spectrum_from_gram_eigs(const std::vector<double>& eig) {
  std::vector<double> s(eig.size());
  for (std::size_t i = 0; i < eig.size(); ++i) s[i] = std::sqrt(eig[i]);
  return SpectrumDelta(std::move(s));
}

}  // namespace

double empirical_moment(const CornerMatrix& xn, std::size_t k) {
  return trace_power(gram_scaled(xn), k);
}

std::vector<double> empirical_moments(const CornerMatrix& xn, std::size_t K) {
  const std::vector<double> eig = sym_eigen_psd(gram_scaled(xn));
  return power_sums_of_eigs(eig, K);
}

std::vector<long double> exact_power_sums(const SpectrumDelta& s, std::size_t K) {
  std::vector<long double> p(K, 0.0L);
  for (std::size_t i = 0; i < s.rank(); ++i) {
    const long double t = static_cast<long double>(s[i]) * static_cast<long double>(s[i]);
    long double acc = 1.0L;
    for (std::size_t k = 0; k < K; ++k) {
      acc *= t;
      p[k] += acc;
    }
  }
  return p;
}

SpectrumDelta spectrum_from_moments(const std::vector<long double>& p) {
  const std::size_t m = p.size();
  if (m == 0) throw OutOfRange("spectrum_from_moments: need at least one power sum");

  // Newton's identities: k*e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i. The
  // monic polynomial with roots t_j = s_j^2 is sum_k (-1)^k e_k t^(m-k).
  std::vector<long double> e(m + 1, 0.0L);
  e[0] = 1.0L;
  for (std::size_t k = 1; k <= m; ++k) {
    long double acc = 0.0L;
    long double sign = 1.0L;
    for (std::size_t i = 1; i <= k; ++i) {
      acc += sign * e[k - i] * p[i - 1];
      sign = -sign;
    }
    e[k] = acc / static_cast<long double>(k);
  }
  std::vector<long double> coeffs(m);
  long double sign = -1.0L;
  for (std::size_t k = 1; k <= m; ++k) {
    coeffs[k - 1] = sign * e[k];
    sign = -sign;
  }

  const auto roots = monic_roots(coeffs);
  const double tol = 1e-6 * std::max(1.0, static_cast<double>(p[0]));
  std::vector<double> t(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double re = static_cast<double>(roots[i].real());
    const double im = static_cast<double>(roots[i].imag());
    if (re < -tol || std::abs(im) > tol)
      throw InconsistentMoments(
          "spectrum_from_moments: power sums are not realizable by nonnegative squares (root " +
          std::to_string(re) + (im >= 0 ? "+" : "") + std::to_string(im) + "i)");
    t[i] = std::max(re, 0.0);
  }
  std::sort(t.begin(), t.end(), std::greater<double>());
  for (double& v : t) v = std::sqrt(v);
  return SpectrumDelta(std::move(t));
}

SpectrumDelta spectrum_from_moments(const MomentVector& p, std::size_t m) {
  if (p.size() != m)
    throw OutOfRange("spectrum_from_moments: need exactly m power sums");
  return spectrum_from_moments(std::vector<long double>(p.values().begin(), p.values().end()));
}

SpectrumEstimate spectrum_estimate_eigen(const CornerMatrix& xn) {
  const std::size_t m = xn.cols();
  const std::vector<double> eig = sym_eigen_psd(gram_scaled(xn));
  SpectrumDelta spec = spectrum_from_gram_eigs(eig);
  double residual;
  if (xn.rows() < m) {
    // Gram rank is at most n; trailing spectrum entries are zero padding.
    residual = std::numeric_limits<double>::infinity();
  } else {
    const std::vector<double> phat = power_sums_of_eigs(eig, m);
    residual = 0.0;
    for (std::size_t k = 1; k <= m; ++k)
      residual = std::max(residual, std::abs(spec.power_sum(k) - phat[k - 1]));
  }
  return SpectrumEstimate{std::move(spec), xn.rows(), EstimateMethod::Eigen, residual};
}

SpectrumEstimate spectrum_estimate_moments(const CornerMatrix& xn) {
  const std::size_t m = xn.cols();
  const std::vector<double> eig = sym_eigen_psd(gram_scaled(xn));
  const std::vector<double> phat = power_sums_of_eigs(eig, m);
  SpectrumDelta spec = spectrum_from_moments(MomentVector(phat), m);
  double residual;
  if (xn.rows() < m) {
    residual = std::numeric_limits<double>::infinity();
  } else {
    residual = 0.0;
    for (std::size_t k = 1; k <= m; ++k)
      residual = std::max(residual, std::abs(spec.power_sum(k) - phat[k - 1]));
  }
  return SpectrumEstimate{std::move(spec), xn.rows(), EstimateMethod::Moments, residual};
}

double a_s_statistic(const CornerMatrix& xn, const SpectrumDelta& spec, std::size_t K) {
  if (K == 0) throw OutOfRange("a_s_statistic: need K >= 1");
  const std::vector<double> phat = empirical_moments(xn, K);
  double stat = 0.0;
  for (std::size_t k = 1; k <= K; ++k)
    stat = std::max(stat, std::abs(phat[k - 1] - spec.power_sum(k)));
  return stat;
}

}  // namespace ergomat
