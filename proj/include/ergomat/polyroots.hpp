#ifndef ERGOMAT_POLYROOTS_HPP
#define ERGOMAT_POLYROOTS_HPP

#include <complex>
#include <vector>

namespace ergomat {

/// Roots of the monic polynomial t^d + c[0] t^(d-1) + ... + c[d-1]
/// (coefficients in extended precision, highest degree first, leading 1
/// implicit). Exact zero trailing coefficients are deflated as zero
/// roots; the rest are found by Aberth-Ehrlich simultaneous iteration,
/// which stays robust on clustered real roots. Intended for d <= 64.
std::vector<std::complex<long double>> monic_roots(const std::vector<long double>& c);

}  // namespace ergomat

#endif  // ERGOMAT_POLYROOTS_HPP
