#include "ergomat/sampling.hpp"

#include <cmath>

#include "ergomat/errors.hpp"

namespace ergomat {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

CornerMatrix gaussian_matrix(std::size_t n, std::size_t m, ScalarField field, Rng& rng) {
  CornerMatrix out(field, n, m);
  if (field == ScalarField::Complex) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double re = rng.normal() * kInvSqrt2;
        const double im = rng.normal() * kInvSqrt2;
        out.complex_at(i, j) = cplx(re, im);
      }
  } else {
    for (double& v : out.data()) v = rng.normal();
  }
  return out;
}

SquareMatrix haar_square(std::size_t n, ScalarField field, Rng& rng) {
  SquareMatrix g(field, n);
  for (int attempt = 0; attempt < 2; ++attempt) {
    CornerMatrix block = gaussian_matrix(n, n, field, rng);
    g.data() = block.data();
    try {
      return gram_schmidt(g);
    } catch (const DegenerateInput&) {
      if (attempt == 1) throw;
    }
  }
  throw DegenerateInput("haar_square: unreachable");
}

CornerMatrix haar_frame(std::size_t n, std::size_t k, ScalarField field, Rng& rng) {
  if (k > n) throw OutOfRange("haar_frame: need k <= n");
  for (int attempt = 0; attempt < 2; ++attempt) {
    CornerMatrix block = gaussian_matrix(n, k, field, rng);
    try {
      return orthonormalize_columns(block);
    } catch (const DegenerateInput&) {
      if (attempt == 1) throw;
    }
  }
  throw DegenerateInput("haar_frame: unreachable");
}

CornerMatrix sample_mu_s(const SpectrumDelta& spec, ScalarField field, std::size_t n, Rng& rng) {
  const std::size_t m = spec.rank();
  CornerMatrix g = gaussian_matrix(n, m, field, rng);
  const SquareMatrix q = haar_square(m, field, rng);
  return right_multiply(scale_columns(g, spec.values()), q);
}

CornerMatrix orbital_sample(const CornerMatrix& xblock, Rng& rng) {
  const std::size_t n = xblock.rows(), m = xblock.cols();
  if (n < m) throw OutOfRange("orbital_sample: need rows >= cols");
  const std::vector<double> sigma = singular_values(xblock);
  const CornerMatrix frame = haar_frame(n, m, xblock.field(), rng);
  const SquareMatrix q = haar_square(m, xblock.field(), rng);
  return right_multiply(scale_columns(frame, sigma), q);
}

}  // namespace ergomat
