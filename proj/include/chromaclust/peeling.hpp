#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chromaclust/geometry.hpp"
#include "chromaclust/simplex_grid.hpp"

namespace chromaclust {

struct PeelingConfig {
    double epsilon = 0.3;  // in (0, 1)
    // Per-node sample size is min(sample_size_cap, log2-capacity of
    // subset_cap, the analysis formula when paper_sample_size is set).
    int sample_size_cap = 18;
    long long subset_cap = 1LL << 18;  // enumerated subsets per sample
    std::optional<int> beam_width;     // heuristic pruning; voids the guarantee
    int delta_steps = 0;               // 0 -> ceil(2k/eps) means, ceil(4k/eps) medians
    int runs = 1;                      // best-of amplification
    std::uint64_t seed = 0;
    long long max_nodes = 50'000'000;  // per-run node budget
    bool uncapped_sample_size = false;  // m = (8k^3/eps^9) ln(k^2/eps^6), ignoring the cap
    int baseline_restarts = 10;
    int threads = 1;                   // parallelizes independent runs
    SimplexGridParams grid;            // epsilon is overridden with eps0 = eps^2/4
};

// Sorted, deduplicated radius candidate set
//   R = union over t=0..ceil(log2(kn)) of
//       { ((1 + l*eps/2) / (2(1+eps))) * j * 2^(t/2) * sqrt(eps) * delta
//         for l = 0..floor(4 + 2/eps) }.
std::vector<double> radius_candidates(int j, int n, int k, double epsilon, double delta);

// Uniform sample of the instance's points that lie strictly outside every
// ball B(center, radius); without replacement, or with replacement when
// fewer than sample_size points remain. Empty outside-set yields {}.
std::vector<Point> peel_sample(const Instance& inst, const std::vector<Point>& path_centers,
                               double radius, int sample_size, std::uint64_t seed);

// Candidate child centers for the means tree: grids (built with
// eps0 = eps^2/4) of the simplices {path, subset mean} over all nonempty
// subsets of the sample (at most subset_cap of them, in bitmask order),
// plus the grid of the path simplex alone. Deduplicated at 1e-12.
std::vector<Point> candidate_children_means(const std::vector<Point>& path_centers,
                                            const std::vector<Point>& sample, double epsilon,
                                            const SimplexGridParams& grid_params,
                                            long long subset_cap);

// Sphere-peeling search for k-CMeans: baseline for the scale Delta, a delta
// grid of delta_steps values, one peeling tree per delta, every root-to-leaf
// tuple scored by optimal chromatic assignment; best of `runs` repetitions.
// The constant-approximation tuple is always injected as a fallback
// candidate, so the result is never worse than constant_kcmeans.
SolveReport solve_kcmeans_peeling(const Instance& inst, const PeelingConfig& cfg);

// Subset-mean sampler for full instances: per cluster slot, subset
// means of a uniform sample form the candidate set; all cross-slot tuples
// are scored. Throws NotFullInstance when some group has fewer than k points.
SolveReport solve_full_kcmeans_sampling(const Instance& inst, const PeelingConfig& cfg);

// Medians variant: delta grid over Omega with ceil(4k/eps) steps by default;
// children are Weiszfeld medians of sample subsets plus copies of the path
// centers; leaves scored with distance weights.
SolveReport solve_kcmedians_peeling(const Instance& inst, const PeelingConfig& cfg);

}  // namespace chromaclust
