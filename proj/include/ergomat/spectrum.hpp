#ifndef ERGOMAT_SPECTRUM_HPP
#define ERGOMAT_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ergomat/errors.hpp"

namespace ergomat {

/// A point of the descending sector: s_1 >= s_2 >= ... >= s_m >= 0.
/// Parametrizes the ergodic ensembles; also used for the diagonal
/// directions lambda of characteristic functionals.
class SpectrumDelta {
 public:
  /// Validating constructor: rejects non-descending or negative input.
  explicit SpectrumDelta(std::vector<double> values) : s_(std::move(values)) {
    if (s_.empty()) throw OutOfRange("SpectrumDelta: rank must be >= 1");
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (!std::isfinite(s_[i]) || s_[i] < 0.0)
        throw OutOfRange("SpectrumDelta: entries must be finite and >= 0");
      if (i > 0 && s_[i] > s_[i - 1])
        throw OutOfRange("SpectrumDelta: entries must be descending (s_1 >= ... >= s_m >= 0)");
    }
  }

  /// Explicit helper for unsorted input: sorts descending, then validates.
  static SpectrumDelta from_unsorted(std::vector<double> values) {
    std::sort(values.begin(), values.end(), std::greater<double>());
    return SpectrumDelta(std::move(values));
  }

  std::size_t rank() const { return s_.size(); }
  double operator[](std::size_t i) const { return s_[i]; }
  const std::vector<double>& values() const { return s_; }

  /// Power sum of the squares: sum_i s_i^(2k).
  double power_sum(std::size_t k) const {
    double acc = 0.0;
    for (double v : s_) {
      double t = v * v, p = 1.0;
      for (std::size_t j = 0; j < k; ++j) p *= t;
      acc += p;
    }
    return acc;
  }

  double sup_distance(const SpectrumDelta& other) const {
    if (other.rank() != rank()) throw RankMismatch("SpectrumDelta: rank mismatch in sup_distance");
    double d = 0.0;
    for (std::size_t i = 0; i < s_.size(); ++i) d = std::max(d, std::abs(s_[i] - other.s_[i]));
    return d;
  }

  bool operator==(const SpectrumDelta&) const = default;

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(s_[i]);
    }
    return out + ")";
  }

 private:
  std::vector<double> s_;
};

}  // namespace ergomat

#endif  // ERGOMAT_SPECTRUM_HPP
