#ifndef ERGOMAT_ERRORS_HPP
#define ERGOMAT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ergomat {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A column collapsed during orthonormalization (residual below tolerance).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// An index or size argument is outside its valid range.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be Hermitian/symmetric is not, beyond tolerance.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// Power sums are not realizable as a multiset of nonnegative squares.
class InconsistentMoments : public Error {
 public:
  using Error::Error;
};

/// Two characteristic-functional evaluations use different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

class EmptySampleSet : public Error {
 public:
  using Error::Error;
};

/// Samples in one batch disagree in shape or scalar field.
class RankMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be orthogonal/unitary is not, beyond tolerance.
class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

/// A serialized record violates the sample-file schema.
class SchemaViolation : public Error {
 public:
  SchemaViolation(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ergomat

#endif  // ERGOMAT_ERRORS_HPP
