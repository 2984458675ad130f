#ifndef ERGOMAT_DIAGNOSTICS_HPP
#define ERGOMAT_DIAGNOSTICS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ergomat/characteristic.hpp"
#include "ergomat/matrix.hpp"
#include "ergomat/rng.hpp"
#include "ergomat/spectrum.hpp"

namespace ergomat {

/// Result of one verification suite. Multi-part checks are folded into a
/// single statistic: the largest constraint ratio (observed / allowed),
/// compared against threshold 1, so `passed == (statistic <= threshold)`
/// always holds. Raw per-check numbers, parameters, and seeds live in
/// `details` (ordered, deterministic).
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 1.0;
  bool passed = false;
  std::vector<std::pair<std::string, std::string>> details;

  void detail(const std::string& key, const std::string& value) {
    details.emplace_back(key, value);
  }
  void detail(const std::string& key, double value);
  void detail(const std::string& key, std::size_t value);

  /// Sets passed from the collected constraint ratios.
  void finalize(const std::vector<double>& ratios);
};

/// Checks the Gaussian truncation limit of Haar corners: pooled entries
/// of sqrt(N) times the upper-left S x S corner of a Haar O(N)/U(N)
/// matrix are tested against N(0,1) by Kolmogorov-Smirnov at alpha = 0.01
/// with a finite-N bias allowance of 1/sqrt(N) added to the critical
/// value, and cross-entry correlations must stay below 3/sqrt(samples).
/// Complex corners are tested on re and im parts separately (each scaled
/// by sqrt(2) to unit variance). When the bias allowance itself exceeds
/// 0.1 (N < 100) the limit regime is out of reach and the suite reports
/// failure with a small-N detail.
TestReport borel_test(std::size_t N, std::size_t S, std::size_t num_samples, ScalarField field,
                      RngHandle rng, unsigned threads = 1);

/// Checks distributional invariance under the two-sided group action:
/// empirical characteristic functionals of {X_i} and {u X_i v^{-1}} must
/// agree within 3 combined standard errors at every grid point.
/// Throws NotOrthogonal unless u and v are orthogonal/unitary to 1e-10.
TestReport invariance_test(const SpectrumDelta& spec, std::size_t n, const SquareMatrix& u,
                           const SquareMatrix& v, std::size_t num_samples, const CFGrid& grid,
                           RngHandle rng, unsigned threads = 1);

/// Checks that orbital measures at resolution n reproduce the ensemble
/// with the matching parameter: draws from the orbit of the deterministic
/// block sqrt(n) * W * diag(s) (W the first m identity columns, so the
/// scaled Gram matrix is exactly diag(s)^2) are compared against the
/// semi-analytic characteristic functional. Passes when the sup-distance
/// is at most 3 combined standard errors plus the corner-error allowance
/// b(n) = 2m/sqrt(n); when b(n) itself exceeds 0.2 the resolution is too
/// small to certify convergence and the suite fails with a small-n detail.
TestReport orbital_convergence_test(const SpectrumDelta& spec, std::size_t n,
                                    std::size_t num_samples, const CFGrid& grid, RngHandle rng,
                                    ScalarField field = ScalarField::Real, unsigned threads = 1);

/// Finite-scale shadow of the tightness criterion: the 0.99-quantile of
/// the entrywise max norm of samples must stay within a universal
/// envelope factor of max(1, s_1) for every parameter in the sequence;
/// the details record whether the quantiles track s_1 linearly (the
/// escape-to-infinity signature of unbounded parameter sequences).
TestReport tightness_diagnostic(const std::vector<SpectrumDelta>& spec_sequence, std::size_t n,
                                std::size_t num_samples, RngHandle rng,
                                ScalarField field = ScalarField::Real, unsigned threads = 1);

}  // namespace ergomat

#endif  // ERGOMAT_DIAGNOSTICS_HPP
