#pragma once

#include <cstdint>
#include <vector>

#include "chromaclust/geometry.hpp"

namespace chromaclust {

// Unconstrained k-means / k-medians result. Objective is the total
// (unnormalized) cost over all points.
struct BaselineResult {
    CenterTuple centers;
    std::vector<std::vector<int>> clusters;  // point indices per cluster
    double objective = 0.0;
    int restarts_used = 0;
    // Objective after each Lloyd iteration of the winning restart;
    // monotonically non-increasing.
    std::vector<double> objective_trace;
};

// k-means++ seeding plus Lloyd, best of `restarts` seeded runs. Centers of
// the returned result are the means of their clusters (a Lloyd fixed point).
BaselineResult kmeans_baseline(const std::vector<Point>& points, int k, std::uint64_t seed,
                               int restarts = 10);

// Medians analog: distance-proportional seeding, alternating
// nearest-center reassignment and Weiszfeld center updates.
BaselineResult kmedians_baseline(const std::vector<Point>& points, int k, std::uint64_t seed,
                                 int restarts = 10, double tol = 1e-9);

}  // namespace chromaclust
