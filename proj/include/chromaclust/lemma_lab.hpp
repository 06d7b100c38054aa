#pragma once

#include <cstdint>
#include <vector>

#include "chromaclust/geometry.hpp"
#include "chromaclust/rng.hpp"

namespace chromaclust {

// Statistical and deterministic checks of the supporting lemmas. Each
// returns the aggregate the caller asserts on; trials are independent with
// per-index derived seeds, so results are thread-count invariant.

// Fraction of trials where ||mean(T) - mean(S)||^2 exceeds Var0(S)/(eta*t)
// for a uniform t-subset T of a random n-point set S.
double check_sampling_mean(int trials, int n, int t, double eta, std::uint64_t seed,
                           int threads = 1);

// Fraction of trials where a sample of ceil(t*ln(t/eta)/ln(1+alpha)) draws
// from S contains fewer than t elements of a marked subset S' with
// |S'|/|S| = alpha.
double check_subset_hitting(int trials, int set_size, double alpha, int t, double eta,
                            std::uint64_t seed, int threads = 1);

// Max over trials of |lhs - rhs| / max(lhs, 1) for the mean-shift identity
// sum ||p-m'||^2 = sum ||p-m||^2 + |P| ||m-m'||^2.
double check_mean_shift_identity(int trials, std::uint64_t seed, int threads = 1);

// Min over trials of (sqrt((1-a)/a)*delta - ||m1 - m||) for random subsets
// of fraction a; negative values violate the subset-mean bound.
double check_subset_mean_bound(int trials, std::uint64_t seed, int threads = 1);

// Min over trials of (4*mu - min_l ||o - o_l||) / scale for random
// partitioned sets with Weiszfeld medians; must stay above -1e-3.
double check_median_anchor(int trials, std::uint64_t seed, int threads = 1);

// Randomized drivers around the simplex grid harness: number of cases where
// the min grid distance exceeds the covering bound (exact part means, and
// the perturbed-vertex variant). Both must come back 0.
int check_simplex_cover(int cases, std::uint64_t seed, int threads = 1);
int check_simplex_cover_perturbed(int cases, std::uint64_t seed, int threads = 1);

// Random point set drawn from a mixture of axis-aligned Gaussians and
// uniform cubes (1 to 3 components), the trial geometry used throughout.
std::vector<Point> random_point_set(Rng& rng, int n, int d);

}  // namespace chromaclust
