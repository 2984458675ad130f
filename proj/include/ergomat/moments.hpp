#ifndef ERGOMAT_MOMENTS_HPP
#define ERGOMAT_MOMENTS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ergomat/linalg.hpp"
#include "ergomat/matrix.hpp"
#include "ergomat/spectrum.hpp"

namespace ergomat {

/// Power sums p_k, k = 1..K, of the squared spectrum entries.
class MomentVector {
 public:
  explicit MomentVector(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw OutOfRange("MomentVector: need K >= 1");
    for (double v : p_)
      if (!(v >= 0.0)) throw OutOfRange("MomentVector: power sums must be >= 0");
  }

  static MomentVector exact(const SpectrumDelta& s, std::size_t K) {
    std::vector<double> p(K);
    for (std::size_t k = 1; k <= K; ++k) p[k - 1] = s.power_sum(k);
    return MomentVector(std::move(p));
  }

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t k1based) const { return p_[k1based - 1]; }
  const std::vector<double>& values() const { return p_; }

 private:
  std::vector<double> p_;
};

enum class EstimateMethod { Eigen, Moments };

inline const char* method_name(EstimateMethod m) {
  return m == EstimateMethod::Eigen ? "eigen" : "moments";
}

/// An estimate of the spectral parameter from one finite corner, with the
/// truncation size, the route used, and a fit residual
/// (max_k |p_k(estimate) - empirical p_k|, +inf when n < m forced
/// zero-padding of the spectrum).
struct SpectrumEstimate {
  SpectrumDelta spec;
  std::size_t n;
  EstimateMethod method;
  double residual;
};

/// Empirical trace moment tr([(X^* X)/n]^k) of an n x m corner. For
/// corners drawn from the ensemble with parameter s this converges almost
/// surely to sum_i s_i^(2k) as n grows.
double empirical_moment(const CornerMatrix& xn, std::size_t k);

/// All moments k = 1..K from a single Gram factorization.
std::vector<double> empirical_moments(const CornerMatrix& xn, std::size_t K);

/// Inverts the first m power sums of the squares into the spectrum:
/// Newton's identities give the elementary symmetric polynomials, the
/// monic degree-m polynomial with those coefficients is rooted (extended
/// precision), roots are clamped to >= 0, sorted, square-rooted.
/// Throws InconsistentMoments when a root is materially negative or
/// complex (tolerance 1e-6 * max(1, p_1)).
SpectrumDelta spectrum_from_moments(const MomentVector& p, std::size_t m);

/// Extended-precision overload. Power sums of exact spectra must be fed
/// at this precision to round-trip tightly: p_m reaches s_1^(2m) ~ 1e16,
/// where double storage already costs ~1 absolute and drags clustered
/// small roots past 1e-7.
SpectrumDelta spectrum_from_moments(const std::vector<long double>& p);

/// Exact power sums sum_i s_i^(2k), k = 1..K, in extended precision.
std::vector<long double> exact_power_sums(const SpectrumDelta& s, std::size_t K);

/// Direct route: estimate_i = sqrt(i-th eigenvalue of the scaled Gram
/// matrix), descending. Default estimator.
SpectrumEstimate spectrum_estimate_eigen(const CornerMatrix& xn);

/// Moment route: empirical power sums inverted through Newton's
/// identities. Kept for cross-validation against the eigen route; both
/// invert the same Gram spectrum and agree to rounding.
SpectrumEstimate spectrum_estimate_moments(const CornerMatrix& xn);

/// max_{1<=k<=K} |empirical p_k(X) - sum_i s_i^(2k)|; small values mean X
/// is statistically compatible with parameter s.
double a_s_statistic(const CornerMatrix& xn, const SpectrumDelta& spec, std::size_t K);

}  // namespace ergomat

#endif  // ERGOMAT_MOMENTS_HPP
