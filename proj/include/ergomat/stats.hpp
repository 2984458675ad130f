#ifndef ERGOMAT_STATS_HPP
#define ERGOMAT_STATS_HPP

#include <cstddef>
#include <vector>

namespace ergomat {

double standard_normal_cdf(double x);

/// One-sample Kolmogorov-Smirnov statistic against the standard normal:
/// sup_x |F_n(x) - Phi(x)|. Sorts a copy of the data.
double ks_statistic_normal(std::vector<double> data);

/// Asymptotic Kolmogorov critical value K_alpha with
/// P(sqrt(n) D_n > K_alpha) -> alpha: K_alpha = sqrt(-ln(alpha/2)/2).
/// The threshold on D_n itself is K_alpha / sqrt(n).
double kolmogorov_critical_value(double alpha);

/// Pearson correlation of two equally long series.
double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> v);

/// Empirical q-quantile (order statistic at ceil(q*n)).
double quantile(std::vector<double> v, double q);

}  // namespace ergomat

#endif  // ERGOMAT_STATS_HPP
