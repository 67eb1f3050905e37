#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dccd/parallel.hpp"
#include "dccd/prng.hpp"
#include "dccd/spam.hpp"

namespace dccd {

struct FldLearner {
  std::vector<std::uint32_t> subspace;  // d_sub distinct feature indices
  std::vector<double> weights;          // one per subspace index
  double threshold = 0.0;               // vote stego when w.x > threshold
};

struct EnsembleModel {
  std::size_t dim = 0;
  std::size_t d_sub = 0;
  std::vector<FldLearner> learners;
};

inline constexpr std::size_t kEnsembleLearners = 51;
inline constexpr double kFldRidge = 1e-6;

inline std::size_t default_subspace_dim(std::size_t dim) {
  return std::min<std::size_t>((dim + 3) / 4, 200);
}

namespace detail {

// Gaussian elimination with partial pivoting; solves A x = b in place.
inline std::vector<double> solve_dense(std::vector<double> a,
                                       std::vector<double> b, std::size_t d) {
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::fabs(a[r * d + c]) > std::fabs(a[piv * d + c])) piv = r;
    if (piv != c) {
      for (std::size_t j = 0; j < d; ++j) std::swap(a[c * d + j], a[piv * d + j]);
      std::swap(b[c], b[piv]);
    }
    const double p = a[c * d + c];
    if (p == 0.0) continue;  // ridge keeps this from happening in practice
    for (std::size_t r = c + 1; r < d; ++r) {
      const double f = a[r * d + c] / p;
      if (f == 0.0) continue;
      for (std::size_t j = c; j < d; ++j) a[r * d + j] -= f * a[c * d + j];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(d, 0.0);
  for (std::size_t ri = d; ri-- > 0;) {
    double acc = b[ri];
    for (std::size_t j = ri + 1; j < d; ++j) acc -= a[ri * d + j] * x[j];
    x[ri] = a[ri * d + ri] != 0.0 ? acc / a[ri * d + ri] : 0.0;
  }
  return x;
}

inline FldLearner train_fld(const std::vector<FeatureVector>& cover,
                            const std::vector<FeatureVector>& stego,
                            std::uint64_t seed, std::size_t dim,
                            std::size_t d_sub) {
  Xoshiro256ss rng(seed);
  const std::size_t n = cover.size();

  FldLearner learner;
  std::vector<std::uint32_t> idx(dim);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < d_sub; ++i)
    std::swap(idx[i], idx[i + rng.next_below(dim - i)]);
  learner.subspace.assign(idx.begin(), idx.begin() + d_sub);
  std::sort(learner.subspace.begin(), learner.subspace.end());

  // one bootstrap index multiset, applied to both classes
  std::vector<std::size_t> boot(n);
  for (auto& b : boot) b = rng.next_below(n);

  const std::size_t d = d_sub;
  std::vector<double> mu_c(d, 0.0), mu_s(d, 0.0);
  std::vector<double> xc(n * d), xs(n * d);
  for (std::size_t t = 0; t < n; ++t) {
    const FeatureVector& fc = cover[boot[t]];
    const FeatureVector& fs = stego[boot[t]];
    for (std::size_t j = 0; j < d; ++j) {
      xc[t * d + j] = fc[learner.subspace[j]];
      xs[t * d + j] = fs[learner.subspace[j]];
      mu_c[j] += xc[t * d + j];
      mu_s[j] += xs[t * d + j];
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    mu_c[j] /= static_cast<double>(n);
    mu_s[j] /= static_cast<double>(n);
  }

  // pooled within-class scatter with a small ridge; both classes
  // accumulate inside one expression so the result is invariant under a
  // cover/stego swap (IEEE addition commutes)
  std::vector<double> scatter(d * d, 0.0);
  std::vector<double> cen_c(d), cen_s(d);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < d; ++j) {
      cen_c[j] = xc[t * d + j] - mu_c[j];
      cen_s[j] = xs[t * d + j] - mu_s[j];
    }
    for (std::size_t r = 0; r < d; ++r) {
      const double cr = cen_c[r], sr = cen_s[r];
      double* row = scatter.data() + r * d;
      for (std::size_t j = 0; j < d; ++j) row[j] += cr * cen_c[j] + sr * cen_s[j];
    }
  }
  for (std::size_t j = 0; j < d; ++j) scatter[j * d + j] += kFldRidge;

  std::vector<double> delta(d);
  for (std::size_t j = 0; j < d; ++j) delta[j] = mu_s[j] - mu_c[j];
  learner.weights = solve_dense(std::move(scatter), delta, d);

  double proj_c = 0.0, proj_s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    proj_c += learner.weights[j] * mu_c[j];
    proj_s += learner.weights[j] * mu_s[j];
  }
  if (proj_s < proj_c) {
    for (auto& wj : learner.weights) wj = -wj;
    std::swap(proj_c, proj_s);
  }
  learner.threshold = 0.5 * (proj_c + proj_s);
  return learner;
}

}  // namespace detail

// L Fisher-linear-discriminant base learners, each on a seeded random
// feature subspace with a seeded bootstrap sample. Deterministic in the
// seed; learner streams are independent, so training order is free.
inline EnsembleModel train_ensemble(const std::vector<FeatureVector>& cover_feats,
                                    const std::vector<FeatureVector>& stego_feats,
                                    std::uint64_t seed,
                                    std::size_t num_learners = kEnsembleLearners,
                                    std::size_t d_sub = 0) {
  if (cover_feats.size() != stego_feats.size())
    throw std::invalid_argument("cover and stego feature sets must match in size");
  if (cover_feats.size() < 2)
    throw std::invalid_argument("need at least 2 samples per class");
  if (num_learners == 0 || num_learners % 2 == 0)
    throw std::invalid_argument("learner count must be odd");
  const std::size_t dim = cover_feats[0].size();
  for (const auto& f : cover_feats)
    if (f.size() != dim) throw std::invalid_argument("ragged feature set");
  for (const auto& f : stego_feats)
    if (f.size() != dim) throw std::invalid_argument("ragged feature set");
  if (d_sub == 0) d_sub = default_subspace_dim(dim);
  if (d_sub > dim) throw std::invalid_argument("subspace larger than dimension");

  EnsembleModel model;
  model.dim = dim;
  model.d_sub = d_sub;
  SplitMix64 sm(seed);
  std::vector<std::uint64_t> learner_seeds(num_learners);
  for (auto& s : learner_seeds) s = sm.next();
  model.learners.resize(num_learners);
  parallel_for(num_learners, [&](std::size_t l) {
    model.learners[l] =
        detail::train_fld(cover_feats, stego_feats, learner_seeds[l], dim, d_sub);
  });
  return model;
}

// fraction of base learners voting "stego"
inline double classify(const EnsembleModel& model, const FeatureVector& feat) {
  if (feat.size() != model.dim)
    throw std::invalid_argument("feature dimension does not match model");
  std::size_t votes = 0;
  for (const auto& learner : model.learners) {
    double proj = 0.0;
    for (std::size_t j = 0; j < learner.subspace.size(); ++j)
      proj += learner.weights[j] * feat[learner.subspace[j]];
    if (proj > learner.threshold) ++votes;
  }
  return static_cast<double>(votes) / static_cast<double>(model.learners.size());
}

struct PEReport {
  double p_e = 0.0;
  double p_fa = 0.0;
  double p_md = 0.0;
  std::size_t n_cover = 0;
  std::size_t n_stego = 0;
};

// Minimal average of false-alarm and missed-detection rates over all
// decision thresholds: P_FA = frac(cover scores >= t), P_MD = frac(stego
// scores < t), swept over every distinct score plus the two infinities.
inline PEReport compute_pe(const std::vector<double>& cover_scores,
                           const std::vector<double>& stego_scores) {
  if (cover_scores.empty() || stego_scores.empty())
    throw std::invalid_argument("score lists must be non-empty");

  std::vector<double> cover = cover_scores, stego = stego_scores;
  std::sort(cover.begin(), cover.end());
  std::sort(stego.begin(), stego.end());

  std::vector<double> thresholds;
  thresholds.reserve(cover.size() + stego.size() + 2);
  thresholds.push_back(-std::numeric_limits<double>::infinity());
  thresholds.insert(thresholds.end(), cover.begin(), cover.end());
  thresholds.insert(thresholds.end(), stego.begin(), stego.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  PEReport best;
  best.p_e = std::numeric_limits<double>::infinity();
  best.n_cover = cover.size();
  best.n_stego = stego.size();
  const double nc = static_cast<double>(cover.size());
  const double ns = static_cast<double>(stego.size());
  for (double t : thresholds) {
    const double fa =
        static_cast<double>(cover.end() -
                            std::lower_bound(cover.begin(), cover.end(), t)) / nc;
    const double md =
        static_cast<double>(std::lower_bound(stego.begin(), stego.end(), t) -
                            stego.begin()) / ns;
    const double pe = 0.5 * (fa + md);
    if (pe < best.p_e) {
      best.p_e = pe;
      best.p_fa = fa;
      best.p_md = md;
    }
  }
  return best;
}

}  // namespace dccd
