#ifndef ERGOMAT_VERIFICATION_HPP
#define ERGOMAT_VERIFICATION_HPP

#include <cstdint>
#include <vector>

#include "ergomat/diagnostics.hpp"

namespace ergomat {

/// The full statistical verification battery with its documented default
/// parameters: Gram-Schmidt equivariance, Gaussian truncation limits of
/// Haar corners (real and complex), almost-sure trace-moment limits,
/// power-sum identifiability, estimator consistency with the dual-route
/// cross-check, the mutual-singularity classifier, characteristic
/// functional consistency, mixture recovery, orbital-measure convergence,
/// and two-sided invariance. Deterministic given (seed, parameters) for
/// any thread count. Reports carry all parameters and seeds; `verify all`
/// serializes exactly this battery.
std::vector<TestReport> verification_battery(std::uint64_t seed, unsigned threads);

// Individual criteria, in battery order.
TestReport check_gs_equivariance(RngHandle rng, unsigned threads);
TestReport check_borel(ScalarField field, RngHandle rng, unsigned threads);
TestReport check_moment_limit(RngHandle rng, unsigned threads);
TestReport check_identifiability(RngHandle rng);
TestReport check_estimator_consistency(RngHandle rng, unsigned threads);
TestReport check_mutual_singularity(RngHandle rng, unsigned threads);
TestReport check_cf_consistency(RngHandle rng, unsigned threads);
TestReport check_decomposition_recovery(RngHandle rng, unsigned threads);
TestReport check_orbital_convergence(RngHandle rng, unsigned threads);
TestReport check_bi_invariance(RngHandle rng, unsigned threads);

}  // namespace ergomat

#endif  // ERGOMAT_VERIFICATION_HPP
