#ifndef ERGOMAT_DECOMPOSITION_HPP
#define ERGOMAT_DECOMPOSITION_HPP

#include <cstddef>
#include <vector>

#include "ergomat/matrix.hpp"
#include "ergomat/moments.hpp"
#include "ergomat/spectrum.hpp"

namespace ergomat {

/// Weighted atoms on the descending sector approximating the mixing
/// measure of an invariant law. Weights are positive and sum to 1.
struct EmpiricalMixture {
  struct Atom {
    SpectrumDelta spec;
    double weight;
  };
  std::size_t m;
  std::vector<Atom> atoms;
  /// True when clustering found more than sqrt(N) atoms and the result
  /// degraded to the raw per-sample cloud with uniform weights (the
  /// non-atomic mixing-measure regime).
  bool raw_cloud;
};

/// Estimates the mixing measure from i.i.d. samples of an invariant law:
/// each sample maps to its spectrum estimate (each ergodic component
/// concentrates on its own parameter), and the estimate cloud is
/// clustered by sup-norm single linkage at cluster_tol. Atoms are cluster
/// means weighted by relative size, sorted by weight descending then by
/// s_1 descending.
EmpiricalMixture decompose_samples(const std::vector<CornerMatrix>& samples, double cluster_tol);

/// Data-driven clustering tolerance: 5 times the pooled dispersion of the
/// per-sample spectrum estimates (median sup-distance to the coordinatewise
/// median), floored away from zero.
double default_cluster_tol(const std::vector<CornerMatrix>& samples);

/// Outcome of the two-measure classification experiment.
struct SeparationReport {
  double accuracy;         // fraction of held-out samples classified correctly
  SpectrumDelta spec_a;    // pooled parameter estimate for set A
  SpectrumDelta spec_b;    // pooled parameter estimate for set B
  std::size_t k_moments;   // moment depth of the membership statistic
  std::size_t n_evaluated; // held-out samples classified
};

/// Finite-resolution shadow of mutual singularity: parameters are
/// estimated on one half of each set, and the other halves are classified
/// by comparing membership statistics against the two estimates. Accuracy
/// tends to 1 as the resolution grows when the parameters differ, and
/// hovers near 1/2 when both sets share one law.
SeparationReport singularity_separation(const std::vector<CornerMatrix>& samples_a,
                                        const std::vector<CornerMatrix>& samples_b,
                                        std::size_t K);

}  // namespace ergomat

#endif  // ERGOMAT_DECOMPOSITION_HPP
