#include "ergomat/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ergomat/errors.hpp"

namespace ergomat {

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

double ks_statistic_normal(std::vector<double> data) {
  if (data.empty()) throw EmptySampleSet("ks_statistic_normal: no data");
  std::sort(data.begin(), data.end());
  const double n = static_cast<double>(data.size());
  double d = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double cdf = standard_normal_cdf(data[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(hi - cdf, cdf - lo));
  }
  return d;
}

double kolmogorov_critical_value(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw OutOfRange("kolmogorov_critical_value: alpha must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw OutOfRange("pearson_correlation: need two equally long series of length >= 2");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double median(std::vector<double> v) {
  if (v.empty()) throw EmptySampleSet("median: no data");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double hi = v[mid];
  if (v.size() % 2 == 0) {
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
  }
  return hi;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw EmptySampleSet("quantile: no data");
  if (!(q >= 0.0 && q <= 1.0)) throw OutOfRange("quantile: q must lie in [0, 1]");
  std::sort(v.begin(), v.end());
  const std::size_t idx = std::min(
      v.size() - 1,
      static_cast<std::size_t>(std::max(0.0, std::ceil(q * static_cast<double>(v.size())) - 1.0)));
  return v[idx];
}

}  // namespace ergomat
