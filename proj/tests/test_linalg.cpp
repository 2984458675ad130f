#include <doctest.h>

#include <cmath>
#include <vector>

#include "ergomat/errors.hpp"
#include "ergomat/linalg.hpp"
#include "ergomat/rng.hpp"
#include "ergomat/sampling.hpp"

using namespace ergomat;

namespace {

// Brute-force (X^* X)/n by explicit triple loop, real case.
SquareMatrix naive_gram_scaled(const CornerMatrix& x) {
  const std::size_t n = x.rows(), m = x.cols();
  SquareMatrix g(ScalarField::Real, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < n; ++r) acc += x.real_at(r, i) * x.real_at(r, j);
      g.real_at(i, j) = acc / static_cast<double>(n);
    }
  return g;
}

// tr(M^k) by repeated matrix multiplication.
double naive_trace_power(const SquareMatrix& m, std::size_t k) {
  SquareMatrix acc = m;
  for (std::size_t i = 1; i < k; ++i) acc = multiply(acc, m);
  double tr = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) tr += acc.entry(i, i).real();
  return tr;
}

SquareMatrix square_from(std::vector<double> vals, std::size_t n) {
  SquareMatrix m(ScalarField::Real, n);
  m.data() = std::move(vals);
  return m;
}

}  // namespace

TEST_CASE("gram_schmidt on the identity is the identity") {
  const SquareMatrix id = SquareMatrix::identity(ScalarField::Real, 3);
  CHECK(max_abs_diff(gram_schmidt(id), id) == 0.0);
}

TEST_CASE("gram_schmidt normalizes a diagonal matrix") {
  const SquareMatrix q = gram_schmidt(square_from({2.0, 0.0, 0.0, 3.0}, 2));
  CHECK(max_abs_diff(q, SquareMatrix::identity(ScalarField::Real, 2)) < 1e-15);
}

TEST_CASE("gram_schmidt matches the hand computation on [[1,1],[0,1]]") {
  // Columns (1,0) and (1,1): q1 = (1,0); residual of c2 is (0,1).
  const SquareMatrix q = gram_schmidt(square_from({1.0, 1.0, 0.0, 1.0}, 2));
  CHECK(max_abs_diff(q, SquareMatrix::identity(ScalarField::Real, 2)) < 1e-15);
}

TEST_CASE("gram_schmidt rejects dependent columns") {
  CHECK_THROWS_AS(gram_schmidt(square_from({1.0, 1.0, 1.0, 1.0}, 2)), DegenerateInput);
}

TEST_CASE("gram_schmidt output is orthonormal up to N = 512") {
  Rng rng(RngHandle{11, 0});
  for (std::size_t n : {8, 64, 512}) {
    SquareMatrix a(ScalarField::Real, n);
    a.data() = gaussian_matrix(n, n, ScalarField::Real, rng).data();
    CHECK(orthonormality_defect(gram_schmidt(a)) < 1e-10);
  }
  SquareMatrix c(ScalarField::Complex, 48);
  c.data() = gaussian_matrix(48, 48, ScalarField::Complex, rng).data();
  CHECK(orthonormality_defect(gram_schmidt(c)) < 1e-10);
}

TEST_CASE("gram_schmidt is equivariant under left rotation") {
  Rng rng(RngHandle{12, 0});
  for (ScalarField field : {ScalarField::Real, ScalarField::Complex}) {
    for (std::size_t n : {2, 7, 33}) {
      const SquareMatrix o = haar_square(n, field, rng);
      SquareMatrix a(field, n);
      a.data() = gaussian_matrix(n, n, field, rng).data();
      const SquareMatrix lhs = gram_schmidt(multiply(o, a));
      const SquareMatrix rhs = multiply(o, gram_schmidt(a));
      CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }
  }
}

TEST_CASE("truncate_corner keeps the top rows") {
  const CornerMatrix x =
      CornerMatrix::from_data(ScalarField::Real, 3, 2, {1, 2, 3, 4, 5, 6});
  CHECK(max_abs_diff(truncate_corner(x, 3), x) == 0.0);
  const CornerMatrix top = truncate_corner(x, 1);
  CHECK(top.rows() == 1);
  CHECK(top.real_at(0, 0) == 1.0);
  CHECK(top.real_at(0, 1) == 2.0);
  CHECK_THROWS_AS(truncate_corner(x, 4), OutOfRange);
}

TEST_CASE("corner truncations compose") {
  Rng rng(RngHandle{13, 0});
  const CornerMatrix x = gaussian_matrix(4, 2, ScalarField::Real, rng);
  const CornerMatrix once = truncate_corner(x, 1);
  const CornerMatrix twice = truncate_corner(truncate_corner(x, 2), 1);
  CHECK(max_abs_diff(once, twice) == 0.0);
}

TEST_CASE("gram_scaled on simple blocks") {
  CornerMatrix id2(ScalarField::Real, 2, 2);
  id2.real_at(0, 0) = 1.0;
  id2.real_at(1, 1) = 1.0;
  const SquareMatrix g = gram_scaled(id2);
  CHECK(g.real_at(0, 0) == doctest::Approx(0.5));
  CHECK(g.real_at(1, 1) == doctest::Approx(0.5));
  CHECK(g.real_at(0, 1) == 0.0);

  const CornerMatrix zeros(ScalarField::Real, 3, 2);
  CHECK(max_abs_diff(gram_scaled(zeros), SquareMatrix(ScalarField::Real, 2)) == 0.0);
}

TEST_CASE("gram_scaled agrees with the triple-loop oracle") {
  Rng rng(RngHandle{14, 0});
  const CornerMatrix x = gaussian_matrix(5, 2, ScalarField::Real, rng);
  CHECK(max_abs_diff(gram_scaled(x), naive_gram_scaled(x)) < 1e-12);
}

TEST_CASE("sym_eigen_psd on diagonal and zero matrices") {
  const auto eig = sym_eigen_psd(square_from({4.0, 0.0, 0.0, 1.0}, 2));
  CHECK(eig[0] == doctest::Approx(4.0));
  CHECK(eig[1] == doctest::Approx(1.0));
  const auto zero = sym_eigen_psd(SquareMatrix(ScalarField::Real, 3));
  for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("sym_eigen_psd matches characteristic-polynomial roots") {
  // det([[2-t,1],[1,2-t]]) = (2-t)^2 - 1, roots 3 and 1.
  const auto eig = sym_eigen_psd(square_from({2.0, 1.0, 1.0, 2.0}, 2));
  CHECK(eig[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(eig[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sym_eigen_psd handles Hermitian complex input via the real embedding") {
  // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
  SquareMatrix h(ScalarField::Complex, 2);
  h.complex_at(0, 0) = 2.0;
  h.complex_at(0, 1) = cplx(0.0, 1.0);
  h.complex_at(1, 0) = cplx(0.0, -1.0);
  h.complex_at(1, 1) = 2.0;
  const auto eig = sym_eigen_psd(h);
  CHECK(eig[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(eig[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sym_eigen_psd rejects asymmetric input and preserves the trace") {
  CHECK_THROWS_AS(sym_eigen_psd(square_from({1.0, 0.5, 0.0, 1.0}, 2)), NotHermitian);

  Rng rng(RngHandle{15, 0});
  const SquareMatrix g = gram_scaled(gaussian_matrix(20, 6, ScalarField::Real, rng));
  const auto eig = sym_eigen_psd(g);
  double sum = 0.0, trace = 0.0;
  for (double v : eig) sum += v;
  for (std::size_t i = 0; i < 6; ++i) trace += g.real_at(i, i);
  CHECK(std::abs(sum - trace) < 1e-9 * std::max(1.0, trace));
}

TEST_CASE("trace_power basics and oracle") {
  const SquareMatrix id = SquareMatrix::identity(ScalarField::Real, 4);
  CHECK(trace_power(id, 1) == doctest::Approx(4.0));
  CHECK(trace_power(id, 5) == doctest::Approx(4.0));

  CHECK(trace_power(square_from({4.0, 0.0, 0.0, 1.0}, 2), 2) == doctest::Approx(17.0));

  Rng rng(RngHandle{16, 0});
  const SquareMatrix psd = gram_scaled(gaussian_matrix(12, 3, ScalarField::Real, rng));
  for (std::size_t k : {1, 2, 4}) {
    CHECK(std::abs(trace_power(psd, k) - naive_trace_power(psd, k)) < 1e-9);
  }
  double trace = 0.0;
  for (std::size_t i = 0; i < 3; ++i) trace += psd.real_at(i, i);
  CHECK(std::abs(trace_power(psd, 1) - trace) < 1e-12 * std::max(1.0, std::abs(trace)));
}

TEST_CASE("singular_values on a diagonal embedding and the zero block") {
  CornerMatrix b(ScalarField::Real, 4, 2);
  b.real_at(0, 0) = 3.0;
  b.real_at(1, 1) = 2.0;
  const auto sv = singular_values(b);
  CHECK(sv[0] == doctest::Approx(3.0));
  CHECK(sv[1] == doctest::Approx(2.0));

  const auto zero = singular_values(CornerMatrix(ScalarField::Real, 3, 2));
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);

  CHECK_THROWS_AS(singular_values(CornerMatrix(ScalarField::Real, 1, 2)), OutOfRange);
}

TEST_CASE("singular values square to the Gram spectrum") {
  Rng rng(RngHandle{17, 0});
  const CornerMatrix b = gaussian_matrix(6, 2, ScalarField::Real, rng);
  const auto sv = singular_values(b);
  SquareMatrix gram(ScalarField::Real, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < 6; ++r) acc += b.real_at(r, i) * b.real_at(r, j);
      gram.real_at(i, j) = acc;
    }
  const auto eig = sym_eigen_psd(gram);
  for (std::size_t i = 0; i < 2; ++i) CHECK(sv[i] * sv[i] == doctest::Approx(eig[i]).epsilon(1e-10));
}

TEST_CASE("singular values are invariant under the group action") {
  Rng rng(RngHandle{18, 0});
  for (ScalarField field : {ScalarField::Real, ScalarField::Complex}) {
    const CornerMatrix b = gaussian_matrix(7, 3, field, rng);
    const SquareMatrix u = haar_square(7, field, rng);
    const SquareMatrix v = haar_square(3, field, rng);
    const auto before = singular_values(b);
    const auto after = singular_values(group_action(u, b, v));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(before[i] - after[i]) < 1e-9);
  }
}
