#include "ergomat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>

#include "ergomat/errors.hpp"

namespace ergomat {

namespace detail {

void check_finite(const std::vector<double>& data, const char* what) {
  for (double v : data)
    if (!std::isfinite(v)) throw OutOfRange(std::string(what) + ": entries must be finite");
}

template <typename T>
double sqnorm(const std::vector<T>& v) {
  double acc = 0.0;
  for (const T& x : v) acc += std::norm(std::complex<double>(x));
  return acc;
}

inline double sqnorm_scalar(double x) { return x * x; }
inline double sqnorm_scalar(const cplx& x) { return std::norm(x); }

inline double conj_mul(double a, double b) { return a * b; }
inline cplx conj_mul(const cplx& a, const cplx& b) { return std::conj(a) * b; }

// Modified Gram-Schmidt over k column vectors of length n, each pass of
// projections run twice. cols is column-major scratch (cols[j] is column j).
template <typename T>
void mgs_columns(std::vector<std::vector<T>>& cols) {
  const std::size_t k = cols.size();
  for (std::size_t j = 0; j < k; ++j) {
    auto& v = cols[j];
    const double norm0 = std::sqrt(sqnorm(v));
    if (norm0 == 0.0)
      throw DegenerateInput("gram_schmidt: column " + std::to_string(j) + " is zero");
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const auto& q = cols[i];
        T dot{};
        for (std::size_t r = 0; r < v.size(); ++r) dot += conj_mul(q[r], v[r]);
        for (std::size_t r = 0; r < v.size(); ++r) v[r] -= dot * q[r];
      }
    }
    const double norm = std::sqrt(sqnorm(v));
    if (norm < 1e-13 * norm0)
      throw DegenerateInput("gram_schmidt: column " + std::to_string(j) +
                            " is numerically dependent on its predecessors");
    const double inv = 1.0 / norm;
    for (auto& x : v) x *= inv;
  }
}

template <typename T, typename Mat, typename Get, typename Set>
void orthonormalize_impl(Mat& m, std::size_t rows, std::size_t k, Get get, Set set) {
  std::vector<std::vector<T>> cols(k, std::vector<T>(rows));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < rows; ++i) cols[j][i] = get(i, j);
  mgs_columns(cols);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < rows; ++i) set(i, j, cols[j][i]);
}

// Cyclic Jacobi sweeps on a real symmetric matrix stored densely (size d).
// Returns the eigenvalues unsorted. Off-diagonal tolerance is relative to
// the Frobenius norm; 60 sweeps bound per the solver contract.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t d) {
  double fro = 0.0;
  for (double v : a) fro += v * v;
  fro = std::sqrt(fro);
  const double tol = 1e-13 * fro;

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += 2.0 * a[p * d + q] * a[p * d + q];
    if (std::sqrt(off) <= tol) break;

    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a[p * d + q];
        if (std::abs(apq) <= tol / static_cast<double>(d)) continue;
        const double tau = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Rotate rows/columns p and q.
        for (std::size_t i = 0; i < d; ++i) {
          const double aip = a[i * d + p], aiq = a[i * d + q];
          a[i * d + p] = c * aip - s * aiq;
          a[i * d + q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < d; ++i) {
          const double api = a[p * d + i], aqi = a[q * d + i];
          a[p * d + i] = c * api - s * aqi;
          a[q * d + i] = s * api + c * aqi;
        }
      }
    }
  }
  std::vector<double> eig(d);
  for (std::size_t i = 0; i < d; ++i) eig[i] = a[i * d + i];
  return eig;
}

}  // namespace detail

CornerMatrix CornerMatrix::from_data(ScalarField field, std::size_t rows, std::size_t cols,
                                     std::vector<double> data) {
  if (data.size() != rows * cols * scalars_per_entry(field))
    throw OutOfRange("CornerMatrix::from_data: data length does not match rows*cols");
  detail::check_finite(data, "CornerMatrix");
  CornerMatrix out(field, rows, cols);
  out.data() = std::move(data);
  return out;
}

SquareMatrix gram_schmidt(const SquareMatrix& a) {
  SquareMatrix q = a;
  const std::size_t n = a.dim();
  if (a.field() == ScalarField::Complex) {
    detail::orthonormalize_impl<cplx>(
        q, n, n, [&](std::size_t i, std::size_t j) { return q.complex_at(i, j); },
        [&](std::size_t i, std::size_t j, const cplx& v) { q.complex_at(i, j) = v; });
  } else {
    detail::orthonormalize_impl<double>(
        q, n, n, [&](std::size_t i, std::size_t j) { return q.real_at(i, j); },
        [&](std::size_t i, std::size_t j, double v) { q.real_at(i, j) = v; });
  }
  return q;
}

CornerMatrix orthonormalize_columns(const CornerMatrix& a) {
  if (a.rows() < a.cols())
    throw OutOfRange("orthonormalize_columns: need rows >= cols");
  CornerMatrix q = a;
  if (a.field() == ScalarField::Complex) {
    detail::orthonormalize_impl<cplx>(
        q, a.rows(), a.cols(), [&](std::size_t i, std::size_t j) { return q.complex_at(i, j); },
        [&](std::size_t i, std::size_t j, const cplx& v) { q.complex_at(i, j) = v; });
  } else {
    detail::orthonormalize_impl<double>(
        q, a.rows(), a.cols(), [&](std::size_t i, std::size_t j) { return q.real_at(i, j); },
        [&](std::size_t i, std::size_t j, double v) { q.real_at(i, j) = v; });
  }
  return q;
}

CornerMatrix truncate_corner(const CornerMatrix& x, std::size_t n) {
  if (n > x.rows()) throw OutOfRange("truncate_corner: n exceeds row count");
  if (n == 0) throw OutOfRange("truncate_corner: n must be >= 1");
  CornerMatrix out(x.field(), n, x.cols());
  const std::size_t row_scalars = x.cols() * scalars_per_entry(x.field());
  std::copy(x.data().begin(), x.data().begin() + static_cast<std::ptrdiff_t>(n * row_scalars),
            out.data().begin());
  return out;
}

SquareMatrix gram_scaled(const CornerMatrix& xn) {
  const std::size_t n = xn.rows(), m = xn.cols();
  SquareMatrix g(xn.field(), m);
  const double inv_n = 1.0 / static_cast<double>(n);
  if (xn.field() == ScalarField::Complex) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        cplx acc = 0.0;
        for (std::size_t r = 0; r < n; ++r)
          acc += std::conj(xn.complex_at(r, i)) * xn.complex_at(r, j);
        acc *= inv_n;
        // Hermitian by construction; store the symmetrized pair.
        g.complex_at(i, j) = acc;
        g.complex_at(j, i) = std::conj(acc);
      }
      g.complex_at(i, i) = cplx(g.complex_at(i, i).real(), 0.0);
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        double acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) acc += xn.real_at(r, i) * xn.real_at(r, j);
        acc *= inv_n;
        g.real_at(i, j) = acc;
        g.real_at(j, i) = acc;
      }
    }
  }
  return g;
}

std::vector<double> sym_eigen_psd(const SquareMatrix& m) {
  const std::size_t d = m.dim();
  double max_entry = 0.0, max_asym = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      max_entry = std::max(max_entry, std::abs(m.entry(i, j)));
      max_asym = std::max(max_asym, std::abs(m.entry(i, j) - std::conj(m.entry(j, i))));
    }
  }
  if (max_asym > 1e-8 * std::max(max_entry, 1e-300))
    throw NotHermitian("sym_eigen_psd: asymmetry " + std::to_string(max_asym) +
                       " exceeds tolerance");

  std::vector<double> eig;
  if (m.field() == ScalarField::Complex) {
    // Real symmetric embedding [[Re, -Im], [Im, Re]]: every eigenvalue of
    // the Hermitian matrix appears exactly twice.
    const std::size_t d2 = 2 * d;
    std::vector<double> emb(d2 * d2);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const cplx h = 0.5 * (m.complex_at(i, j) + std::conj(m.complex_at(j, i)));
        emb[i * d2 + j] = h.real();
        emb[i * d2 + (d + j)] = -h.imag();
        emb[(d + i) * d2 + j] = h.imag();
        emb[(d + i) * d2 + (d + j)] = h.real();
      }
    }
    std::vector<double> all = detail::jacobi_eigenvalues(std::move(emb), d2);
    std::sort(all.begin(), all.end(), std::greater<double>());
    eig.reserve(d);
    for (std::size_t i = 0; i < d2; i += 2) eig.push_back(all[i]);
  } else {
    std::vector<double> sym(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        sym[i * d + j] = 0.5 * (m.real_at(i, j) + m.real_at(j, i));
    eig = detail::jacobi_eigenvalues(std::move(sym), d);
    std::sort(eig.begin(), eig.end(), std::greater<double>());
  }
  for (double& v : eig) v = std::max(v, 0.0);
  return eig;
}

double trace_power(const SquareMatrix& m, std::size_t k) {
  if (k == 0) throw OutOfRange("trace_power: k must be >= 1");
  const std::vector<double> eig = sym_eigen_psd(m);
  double acc = 0.0;
  for (double v : eig) {
    double p = 1.0;
    for (std::size_t j = 0; j < k; ++j) p *= v;
    acc += p;
  }
  return acc;
}

std::vector<double> singular_values(const CornerMatrix& b) {
  if (b.rows() < b.cols()) throw OutOfRange("singular_values: need rows >= cols");
  const std::size_t n = b.rows(), m = b.cols();
  SquareMatrix g(b.field(), m);
  if (b.field() == ScalarField::Complex) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        cplx acc = 0.0;
        for (std::size_t r = 0; r < n; ++r)
          acc += std::conj(b.complex_at(r, i)) * b.complex_at(r, j);
        g.complex_at(i, j) = acc;
        g.complex_at(j, i) = std::conj(acc);
      }
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        double acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) acc += b.real_at(r, i) * b.real_at(r, j);
        g.real_at(i, j) = acc;
        g.real_at(j, i) = acc;
      }
  }
  std::vector<double> eig = sym_eigen_psd(g);
  for (double& v : eig) v = std::sqrt(v);
  return eig;
}

CornerMatrix right_multiply(const CornerMatrix& x, const SquareMatrix& s) {
  if (x.cols() != s.dim() || x.field() != s.field())
    throw RankMismatch("right_multiply: shape or field mismatch");
  const std::size_t n = x.rows(), m = x.cols();
  CornerMatrix out(x.field(), n, m);
  if (x.field() == ScalarField::Complex) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) acc += x.complex_at(i, k) * s.complex_at(k, j);
        out.complex_at(i, j) = acc;
      }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) acc += x.real_at(i, k) * s.real_at(k, j);
        out.real_at(i, j) = acc;
      }
  }
  return out;
}

CornerMatrix left_multiply(const SquareMatrix& u, const CornerMatrix& x) {
  if (u.dim() != x.rows() || u.field() != x.field())
    throw RankMismatch("left_multiply: shape or field mismatch");
  const std::size_t n = x.rows(), m = x.cols();
  CornerMatrix out(x.field(), n, m);
  if (x.field() == ScalarField::Complex) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += u.complex_at(i, k) * x.complex_at(k, j);
        out.complex_at(i, j) = acc;
      }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += u.real_at(i, k) * x.real_at(k, j);
        out.real_at(i, j) = acc;
      }
  }
  return out;
}

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim() || a.field() != b.field())
    throw RankMismatch("multiply: shape or field mismatch");
  const std::size_t n = a.dim();
  SquareMatrix out(a.field(), n);
  if (a.field() == ScalarField::Complex) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += a.complex_at(i, k) * b.complex_at(k, j);
        out.complex_at(i, j) = acc;
      }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += a.real_at(i, k) * b.real_at(k, j);
        out.real_at(i, j) = acc;
      }
  }
  return out;
}

CornerMatrix scale_columns(const CornerMatrix& x, const std::vector<double>& d) {
  if (d.size() != x.cols()) throw RankMismatch("scale_columns: diagonal length mismatch");
  CornerMatrix out = x;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x.field() == ScalarField::Complex)
        out.complex_at(i, j) *= d[j];
      else
        out.real_at(i, j) *= d[j];
    }
  return out;
}

SquareMatrix conj_transpose(const SquareMatrix& a) {
  SquareMatrix out(a.field(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a.field() == ScalarField::Complex)
        out.complex_at(i, j) = std::conj(a.complex_at(j, i));
      else
        out.real_at(i, j) = a.real_at(j, i);
    }
  return out;
}

CornerMatrix group_action(const SquareMatrix& u, const CornerMatrix& x, const SquareMatrix& v) {
  return right_multiply(left_multiply(u, x), conj_transpose(v));
}

double orthonormality_defect(const SquareMatrix& q) {
  const std::size_t n = q.dim();
  double defect = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(q.entry(k, i)) * q.entry(k, j);
      if (i == j) acc -= 1.0;
      defect = std::max(defect, std::abs(acc));
    }
  return defect;
}

double max_abs_diff(const CornerMatrix& a, const CornerMatrix& b) {
  if (!a.same_shape(b)) throw RankMismatch("max_abs_diff: shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim() || a.field() != b.field())
    throw RankMismatch("max_abs_diff: shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

}  // namespace ergomat
