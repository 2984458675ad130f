#ifndef ERGOMAT_CHARACTERISTIC_HPP
#define ERGOMAT_CHARACTERISTIC_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "ergomat/matrix.hpp"
#include "ergomat/rng.hpp"
#include "ergomat/spectrum.hpp"

namespace ergomat {

/// Finite set of diagonal directions lambda (points of the descending
/// sector) at which characteristic functionals are evaluated.
struct CFGrid {
  std::size_t m;
  std::vector<SpectrumDelta> points;

  CFGrid(std::size_t rank, std::vector<SpectrumDelta> pts);

  bool operator==(const CFGrid&) const = default;
};

/// Default evaluation grid: tensor points with coordinates in
/// {0, 0.5, 1, 2} restricted to the descending sector, capped at
/// `max_points` for large rank.
CFGrid default_grid(std::size_t m, std::size_t max_points = 200);

/// Characteristic-functional values on a grid with per-point Monte Carlo
/// standard errors (zero where the evaluation is exact).
struct CFEvaluation {
  CFGrid grid;
  std::vector<cplx> values;
  std::vector<double> mc_stderr;
};

/// Semi-analytic evaluation of the ensemble's characteristic functional
/// at the diagonal directions: the Gaussian integral is done in closed
/// form, leaving a Haar average over the compact m x m group to Monte
/// Carlo. Real field: E_Q exp(-sum_{l,j} lambda_l^2 s_j^2 Q_jl^2 / 2);
/// complex field: the same with |Q_jl|^2 and /4 (the real-bilinear
/// pairing Re tr(B^* X) with E|g|^2 = 1 halves the per-term variance).
/// Values are real in [0, 1] up to Monte Carlo error; exact 1 at
/// lambda = 0. At m = 1 the Haar average is degenerate and the result is
/// exactly exp(-lambda^2 s^2 / 2) (real) or exp(-lambda^2 s^2 / 4)
/// (complex) with zero variance.
CFEvaluation cf_mu_s(const SpectrumDelta& spec, const CFGrid& grid, ScalarField field,
                     std::size_t mc_iters, Rng& rng);

/// Empirical characteristic functional of a sample set: per grid point
/// the average of exp(i <D_lambda, X>) with <B, X> = tr(B^* X) over the
/// top m x m block (Re tr(B^* X) in the complex case). Standard errors
/// are jackknife estimates.
CFEvaluation empirical_cf(const std::vector<CornerMatrix>& samples, const CFGrid& grid);

/// max over grid points of |a.value - b.value|; grids must be identical.
double cf_sup_distance(const CFEvaluation& a, const CFEvaluation& b);

/// sqrt(a.stderr^2 + b.stderr^2) per point, for comparisons in combined
/// standard-error units.
std::vector<double> combined_stderr(const CFEvaluation& a, const CFEvaluation& b);

}  // namespace ergomat

#endif  // ERGOMAT_CHARACTERISTIC_HPP
