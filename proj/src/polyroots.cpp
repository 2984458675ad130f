#include "ergomat/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace ergomat {

namespace {

using cld = std::complex<long double>;

// p and p' at z by Horner, monic with coefficient list c (degree d).
void eval_poly(const std::vector<long double>& c, const cld& z, cld& p, cld& dp) {
  p = cld(1.0L, 0.0L);
  dp = cld(0.0L, 0.0L);
  for (long double coeff : c) {
    dp = dp * z + p;
    p = p * z + coeff;
  }
}

}  // namespace

std::vector<cld> monic_roots(const std::vector<long double>& c_in) {
  std::vector<long double> c = c_in;
  std::vector<cld> roots;

  // Exact zero roots deflate immediately (e.g. an all-zero spectrum).
  while (!c.empty() && c.back() == 0.0L) {
    roots.emplace_back(0.0L, 0.0L);
    c.pop_back();
  }
  const std::size_t d = c.size();
  if (d == 0) return roots;
  if (d == 1) {
    roots.emplace_back(-c[0], 0.0L);
    return roots;
  }

  // Cauchy-style radius bound for the initial circle.
  long double radius = 0.0L;
  for (std::size_t k = 0; k < d; ++k) {
    const long double mag = std::pow(std::abs(c[k]), 1.0L / static_cast<long double>(k + 1));
    radius = std::max(radius, mag);
  }
  radius = 1.0L + radius;

  std::vector<cld> z(d);
  for (std::size_t i = 0; i < d; ++i) {
    const long double angle = 6.2831853071795864769L * (static_cast<long double>(i) + 0.25L) /
                                  static_cast<long double>(d) +
                              0.43L;
    z[i] = 0.7L * radius * cld(std::cos(angle), std::sin(angle));
  }

  const long double eps = std::numeric_limits<long double>::epsilon();
  for (int iter = 0; iter < 220; ++iter) {
    long double worst = 0.0L;
    for (std::size_t i = 0; i < d; ++i) {
      cld p, dp;
      eval_poly(c, z[i], p, dp);
      if (std::abs(p) == 0.0L) continue;
      cld newton = (std::abs(dp) == 0.0L) ? cld(std::abs(p), 0.0L) : p / dp;
      cld repulsion(0.0L, 0.0L);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        cld diff = z[i] - z[j];
        if (std::abs(diff) == 0.0L) diff = cld(eps * radius, eps * radius);
        repulsion += cld(1.0L, 0.0L) / diff;
      }
      const cld denom = cld(1.0L, 0.0L) - newton * repulsion;
      const cld step = (std::abs(denom) == 0.0L) ? newton : newton / denom;
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1.0L + std::abs(z[i])));
    }
    if (worst <= 64.0L * eps) break;
  }

  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace ergomat
