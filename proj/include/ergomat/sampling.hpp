#ifndef ERGOMAT_SAMPLING_HPP
#define ERGOMAT_SAMPLING_HPP

#include <cstddef>

#include "ergomat/linalg.hpp"
#include "ergomat/matrix.hpp"
#include "ergomat/rng.hpp"
#include "ergomat/spectrum.hpp"

namespace ergomat {

/// n x m block of i.i.d. standard Gaussians. Real: N(0, 1). Complex:
/// E|g|^2 = 1, E g^2 = 0 (re and im independent N(0, 1/2)).
CornerMatrix gaussian_matrix(std::size_t n, std::size_t m, ScalarField field, Rng& rng);

/// Haar-distributed matrix on O(N) (real) or U(N) (complex), obtained by
/// orthonormalizing a Gaussian square matrix. Retries once on the
/// probability-zero degenerate event, then rethrows.
SquareMatrix haar_square(std::size_t n, ScalarField field, Rng& rng);

/// First k columns of a Haar matrix on O(n)/U(n): a uniformly distributed
/// orthonormal k-frame, drawn directly by orthonormalizing an n x k
/// Gaussian block (the first k columns of the full orthonormalization
/// depend only on the first k Gaussian columns, so the law is exact).
CornerMatrix haar_frame(std::size_t n, std::size_t k, ScalarField field, Rng& rng);

/// One n x m draw from the ergodic ensemble with parameter s: the corner
/// C_n(G * diag(s) * Q) = C_n(G) * diag(s) * Q, with C_n(G) a fresh
/// Gaussian block and Q a fresh independent Haar m x m matrix. Exact
/// finite-dimensional marginal; no truncation bias.
CornerMatrix sample_mu_s(const SpectrumDelta& spec, ScalarField field, std::size_t n, Rng& rng);

/// One draw from the orbital measure at resolution n: the law of
/// Z * X * Q with Z Haar on O(n)/U(n) and Q Haar on O(m)/U(m). That law
/// depends on X only through its singular values sigma, and equals the
/// law of F * diag(sigma) * Q with F a uniform orthonormal m-frame
/// (Z * U is a uniform frame and V^* Q is again Haar), which is what is
/// drawn here at O(n m^2) cost per sample.
CornerMatrix orbital_sample(const CornerMatrix& xblock, Rng& rng);

}  // namespace ergomat

#endif  // ERGOMAT_SAMPLING_HPP
