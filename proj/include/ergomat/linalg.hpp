#ifndef ERGOMAT_LINALG_HPP
#define ERGOMAT_LINALG_HPP

#include <cstddef>
#include <vector>

#include "ergomat/matrix.hpp"

namespace ergomat {

/// Column-wise Gram-Schmidt orthonormalization (modified variant,
/// re-orthogonalized twice). The implied triangular factor has positive
/// real diagonal, so the output is the unique Q of the QR factorization
/// with that convention and GS(O*A) == O*GS(A) holds entrywise.
/// Throws DegenerateInput if a column's residual norm falls below
/// 1e-13 times its original norm.
SquareMatrix gram_schmidt(const SquareMatrix& a);

/// Same orthonormalization applied to the k columns of a tall n x k block
/// (n >= k). Used to draw uniformly distributed orthonormal frames.
CornerMatrix orthonormalize_columns(const CornerMatrix& a);

/// Upper n x m corner of a block (row restriction).
CornerMatrix truncate_corner(const CornerMatrix& x, std::size_t n);

/// The scaled Gram matrix (X^* X) / n of an n x m block; Hermitian PSD,
/// explicitly symmetrized to kill rounding asymmetry.
SquareMatrix gram_scaled(const CornerMatrix& xn);

/// Eigenvalues of a Hermitian PSD matrix, descending, clamped to >= 0.
/// Cyclic Jacobi sweeps (off-diagonal tolerance 1e-13 * Frobenius norm,
/// at most 60 sweeps); the complex case goes through the real symmetric
/// 2m x 2m embedding [[Re, -Im], [Im, Re]], whose spectrum doubles.
/// Throws NotHermitian if max asymmetry exceeds 1e-8 * max |entry|.
std::vector<double> sym_eigen_psd(const SquareMatrix& m);

/// tr(M^k) for Hermitian PSD M, computed as the power sum of the
/// eigenvalues (one O(m^3) factorization instead of k - 1 products).
double trace_power(const SquareMatrix& m, std::size_t k);

/// Singular values of an n x m block (n >= m), descending: square roots
/// of the eigenvalues of B^* B.
std::vector<double> singular_values(const CornerMatrix& b);

// Small dense products used by the group action and the samplers.

/// X * S for n x m X and m x m S.
CornerMatrix right_multiply(const CornerMatrix& x, const SquareMatrix& s);
/// U * X for n x n U and n x m X.
CornerMatrix left_multiply(const SquareMatrix& u, const CornerMatrix& x);
/// A * B for square A, B of equal dimension.
SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b);
/// Scales column j of X by d[j] (right multiplication by diag(d)).
CornerMatrix scale_columns(const CornerMatrix& x, const std::vector<double>& d);

/// (u, v) . X = u * X * v^{-1} with v^{-1} taken as the conjugate
/// transpose; callers must pass orthogonal/unitary u, v.
CornerMatrix group_action(const SquareMatrix& u, const CornerMatrix& x, const SquareMatrix& v);

/// Conjugate transpose (plain transpose over the reals).
SquareMatrix conj_transpose(const SquareMatrix& a);

/// max_ij |(Q^* Q - I)_ij|; zero for exactly orthogonal/unitary Q.
double orthonormality_defect(const SquareMatrix& q);

/// max |entry| of the difference of two equally-shaped blocks.
double max_abs_diff(const CornerMatrix& a, const CornerMatrix& b);
double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b);

}  // namespace ergomat

#endif  // ERGOMAT_LINALG_HPP
