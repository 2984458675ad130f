#ifndef ERGOMAT_RNG_HPP
#define ERGOMAT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace ergomat {

namespace detail {
// splitmix64 finalizer (Steele/Lea/Flood; Vigna's fixed-increment variant).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}  // namespace detail

/// Identifies a reproducible random stream. Equal handles reproduce the
/// identical scalar sequence; handles derived via split() give streams that
/// are statistically independent for Monte Carlo purposes.
struct RngHandle {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RngHandle split(std::uint64_t k) const {
    return RngHandle{seed, detail::mix64(stream + detail::kGamma) + k};
  }

  bool operator==(const RngHandle&) const = default;
};

/// Counter-based uniform generator (splitmix64 core) with Box-Muller
/// normals on top. Cheap value type; construct one per worker from split
/// handles for deterministic parallel Monte Carlo.
class Rng {
 public:
  explicit Rng(RngHandle h)
      : state_(detail::mix64(h.seed + 0xD1B54A32D192ED03ULL) ^
               detail::mix64(h.stream + 0x8CB92BA72F3D8DD7ULL)) {}

  std::uint64_t next_u64() {
    state_ += detail::kGamma;
    return detail::mix64(state_);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as a log argument.
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; generates pairs, caches the second.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double theta = 6.283185307179586476925286766559 * uniform();
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace ergomat

#endif  // ERGOMAT_RNG_HPP
