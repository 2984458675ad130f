#ifndef ERGOMAT_MATRIX_HPP
#define ERGOMAT_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "ergomat/errors.hpp"

namespace ergomat {

using cplx = std::complex<double>;

/// Scalar field of a matrix: real (entries in R) or complex (entries in C,
/// stored as interleaved re,im pairs).
enum class ScalarField { Real, Complex };

inline std::size_t scalars_per_entry(ScalarField f) {
  return f == ScalarField::Complex ? 2 : 1;
}

namespace detail {
void check_finite(const std::vector<double>& data, const char* what);
}

/// Dense n x m block, row-major. Holds the upper corner of an infinite
/// matrix at finite resolution, or any finite rectangular block.
class CornerMatrix {
 public:
  CornerMatrix(ScalarField field, std::size_t rows, std::size_t cols)
      : field_(field), n_(rows), m_(cols),
        data_(rows * cols * scalars_per_entry(field), 0.0) {
    if (rows == 0 || cols == 0) throw OutOfRange("CornerMatrix: rows and cols must be >= 1");
  }

  /// Builds from a flat scalar array (row-major; complex interleaved re,im).
  /// Validates length and finiteness.
  static CornerMatrix from_data(ScalarField field, std::size_t rows, std::size_t cols,
                                std::vector<double> data);

  ScalarField field() const { return field_; }
  std::size_t rows() const { return n_; }
  std::size_t cols() const { return m_; }

  double& real_at(std::size_t i, std::size_t j) { return data_[i * m_ + j]; }
  double real_at(std::size_t i, std::size_t j) const { return data_[i * m_ + j]; }

  // std::complex is guaranteed array-compatible with double[2].
  cplx& complex_at(std::size_t i, std::size_t j) {
    return reinterpret_cast<cplx*>(data_.data())[i * m_ + j];
  }
  const cplx& complex_at(std::size_t i, std::size_t j) const {
    return reinterpret_cast<const cplx*>(data_.data())[i * m_ + j];
  }

  /// Entry as a complex number regardless of field (real matrices get im = 0).
  cplx entry(std::size_t i, std::size_t j) const {
    return field_ == ScalarField::Complex ? complex_at(i, j) : cplx(real_at(i, j), 0.0);
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool same_shape(const CornerMatrix& o) const {
    return field_ == o.field_ && n_ == o.n_ && m_ == o.m_;
  }

 private:
  ScalarField field_;
  std::size_t n_, m_;
  std::vector<double> data_;
};

/// Dense N x N matrix, row-major; same storage convention as CornerMatrix.
class SquareMatrix {
 public:
  SquareMatrix(ScalarField field, std::size_t dim)
      : field_(field), dim_(dim), data_(dim * dim * scalars_per_entry(field), 0.0) {
    if (dim == 0) throw OutOfRange("SquareMatrix: dimension must be >= 1");
  }

  static SquareMatrix identity(ScalarField field, std::size_t dim) {
    SquareMatrix id(field, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (field == ScalarField::Complex)
        id.complex_at(i, i) = 1.0;
      else
        id.real_at(i, i) = 1.0;
    }
    return id;
  }

  ScalarField field() const { return field_; }
  std::size_t dim() const { return dim_; }

  double& real_at(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double real_at(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  cplx& complex_at(std::size_t i, std::size_t j) {
    return reinterpret_cast<cplx*>(data_.data())[i * dim_ + j];
  }
  const cplx& complex_at(std::size_t i, std::size_t j) const {
    return reinterpret_cast<const cplx*>(data_.data())[i * dim_ + j];
  }

  cplx entry(std::size_t i, std::size_t j) const {
    return field_ == ScalarField::Complex ? complex_at(i, j) : cplx(real_at(i, j), 0.0);
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  ScalarField field_;
  std::size_t dim_;
  std::vector<double> data_;
};

}  // namespace ergomat

#endif  // ERGOMAT_MATRIX_HPP
