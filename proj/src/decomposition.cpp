#include "ergomat/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ergomat/errors.hpp"

namespace ergomat {

namespace {

void check_batch(const std::vector<CornerMatrix>& samples, const char* who) {
  if (samples.empty()) throw EmptySampleSet(std::string(who) + ": no samples");
  for (const auto& x : samples)
    if (!x.same_shape(samples.front()))
      throw RankMismatch(std::string(who) + ": samples disagree in shape or field");
  if (samples.front().rows() < samples.front().cols())
    throw RankMismatch(std::string(who) + ": need n >= m rows per sample");
}

std::vector<SpectrumDelta> estimate_cloud(const std::vector<CornerMatrix>& samples) {
  std::vector<SpectrumDelta> cloud;
  cloud.reserve(samples.size());
  for (const auto& x : samples) cloud.push_back(spectrum_estimate_eigen(x).spec);
  return cloud;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

SpectrumDelta cloud_mean(const std::vector<SpectrumDelta>& cloud,
                         const std::vector<std::size_t>& members) {
  const std::size_t m = cloud.front().rank();
  std::vector<double> mean(m, 0.0);
  for (std::size_t idx : members)
    for (std::size_t j = 0; j < m; ++j) mean[j] += cloud[idx][j];
  for (double& v : mean) v /= static_cast<double>(members.size());
  // Means of descending vectors are descending; clamp rounding dust.
  for (std::size_t j = 1; j < m; ++j) mean[j] = std::min(mean[j], mean[j - 1]);
  return SpectrumDelta(std::move(mean));
}

SpectrumDelta pooled_estimate(const std::vector<CornerMatrix>& samples, std::size_t begin,
                              std::size_t end) {
  const std::size_t m = samples.front().cols();
  std::vector<double> mean(m, 0.0);
  for (std::size_t i = begin; i < end; ++i) {
    const SpectrumDelta s = spectrum_estimate_eigen(samples[i]).spec;
    for (std::size_t j = 0; j < m; ++j) mean[j] += s[j];
  }
  for (double& v : mean) v /= static_cast<double>(end - begin);
  for (std::size_t j = 1; j < m; ++j) mean[j] = std::min(mean[j], mean[j - 1]);
  return SpectrumDelta(std::move(mean));
}

}  // namespace

EmpiricalMixture decompose_samples(const std::vector<CornerMatrix>& samples, double cluster_tol) {
  check_batch(samples, "decompose_samples");
  if (!(cluster_tol > 0.0)) throw OutOfRange("decompose_samples: cluster_tol must be > 0");

  const std::vector<SpectrumDelta> cloud = estimate_cloud(samples);
  const std::size_t n = cloud.size();
  const std::size_t m = cloud.front().rank();

  // Single linkage at cluster_tol = connected components of the
  // "sup-distance <= tol" graph, via union-find.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cloud[i].sup_distance(cloud[j]) <= cluster_tol) {
        const std::size_t ri = find_root(parent, i), rj = find_root(parent, j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }

  std::vector<std::vector<std::size_t>> groups;
  {
    std::vector<std::ptrdiff_t> group_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = find_root(parent, i);
      if (group_of[r] < 0) {
        group_of[r] = static_cast<std::ptrdiff_t>(groups.size());
        groups.emplace_back();
      }
      groups[static_cast<std::size_t>(group_of[r])].push_back(i);
    }
  }

  EmpiricalMixture out{m, {}, false};
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  if (static_cast<double>(groups.size()) > sqrt_n) {
    // Too many atoms for an atomic reading: degrade to the raw estimate
    // cloud with uniform weights (non-atomic mixing measure).
    out.raw_cloud = true;
    out.atoms.reserve(n);
    for (const auto& s : cloud) out.atoms.push_back({s, 1.0 / static_cast<double>(n)});
  } else {
    out.atoms.reserve(groups.size());
    for (const auto& g : groups)
      out.atoms.push_back(
          {cloud_mean(cloud, g), static_cast<double>(g.size()) / static_cast<double>(n)});
  }
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const EmpiricalMixture::Atom& a, const EmpiricalMixture::Atom& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.spec.values() > b.spec.values();
            });
  return out;
}

double default_cluster_tol(const std::vector<CornerMatrix>& samples) {
  check_batch(samples, "default_cluster_tol");
  const std::vector<SpectrumDelta> cloud = estimate_cloud(samples);
  const std::size_t m = cloud.front().rank();
  std::vector<double> center(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> coord(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) coord[i] = cloud[i][j];
    std::nth_element(coord.begin(), coord.begin() + static_cast<std::ptrdiff_t>(coord.size() / 2),
                     coord.end());
    center[j] = coord[coord.size() / 2];
  }
  std::vector<double> dist(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < m; ++j) d = std::max(d, std::abs(cloud[i][j] - center[j]));
    dist[i] = d;
  }
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(dist.size() / 2),
                   dist.end());
  return std::max(5.0 * dist[dist.size() / 2], 1e-9);
}

SeparationReport singularity_separation(const std::vector<CornerMatrix>& samples_a,
                                        const std::vector<CornerMatrix>& samples_b,
                                        std::size_t K) {
  check_batch(samples_a, "singularity_separation");
  check_batch(samples_b, "singularity_separation");
  if (!samples_a.front().same_shape(samples_b.front()))
    throw RankMismatch("singularity_separation: the two sets disagree in shape or field");
  if (samples_a.size() < 2 || samples_b.size() < 2)
    throw EmptySampleSet("singularity_separation: need >= 2 samples per set for a held-out half");
  if (K == 0) throw OutOfRange("singularity_separation: need K >= 1");

  // First halves estimate the parameters; second halves are classified.
  const std::size_t half_a = samples_a.size() / 2;
  const std::size_t half_b = samples_b.size() / 2;
  const SpectrumDelta est_a = pooled_estimate(samples_a, 0, half_a);
  const SpectrumDelta est_b = pooled_estimate(samples_b, 0, half_b);

  std::size_t correct = 0, total = 0;
  for (std::size_t i = half_a; i < samples_a.size(); ++i) {
    const bool to_a =
        a_s_statistic(samples_a[i], est_a, K) < a_s_statistic(samples_a[i], est_b, K);
    correct += to_a ? 1 : 0;
    ++total;
  }
  for (std::size_t i = half_b; i < samples_b.size(); ++i) {
    const bool to_a =
        a_s_statistic(samples_b[i], est_a, K) < a_s_statistic(samples_b[i], est_b, K);
    correct += to_a ? 0 : 1;
    ++total;
  }
  return SeparationReport{static_cast<double>(correct) / static_cast<double>(total), est_a, est_b,
                          K, total};
}

}  // namespace ergomat
