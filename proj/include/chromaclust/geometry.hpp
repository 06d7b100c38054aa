#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "chromaclust/errors.hpp"
#include "chromaclust/kernels.hpp"

namespace chromaclust {

using Point = std::vector<double>;

// A point-set whose members are mutually undistinguishable: at most one of
// them may land in any one cluster.
struct ColorGroup {
    int id = 0;
    std::vector<Point> points;
};

struct Instance {
    std::vector<ColorGroup> groups;
    int k = 0;  // number of clusters, >= 2
    int d = 0;  // ambient dimension

    int n() const { return static_cast<int>(groups.size()); }
    std::size_t total_points() const;
    // Every group has exactly k points.
    bool full() const;
    // Throws BadSpecError / DimensionMismatchError on structural violations.
    void validate() const;
};

// labels[g][i] = cluster of point i of group g (0-based, in [0, k)).
// Valid partitions are injective per group.
struct ChromaticPartition {
    std::vector<std::vector<int>> labels;
};

using CenterTuple = std::vector<Point>;

enum class Objective { means, medians };

inline const char* objective_name(Objective o) {
    return o == Objective::means ? "means" : "medians";
}

struct SolveReport {
    CenterTuple centers;
    ChromaticPartition partition;
    double objective = 0.0;  // normalized by 1/n
    Objective kind = Objective::means;
    double elapsed_seconds = 0.0;
    std::uint64_t seed = 0;
    std::string algorithm;
    std::string config_echo;
    bool heuristic = false;  // set when beam pruning voided the guarantee
};

inline double squared_distance(const Point& a, const Point& b) {
    assert(a.size() == b.size());
    return kernels::squared_distance(a.data(), b.data(), a.size());
}

inline double distance(const Point& a, const Point& b) {
    return std::sqrt(squared_distance(a, b));
}

// Coordinate-wise average. Throws EmptySetError on empty input.
Point mean(const std::vector<Point>& points);

// Mean squared distance to the mean: Var0(P) = sum ||p - m||^2 / |P|.
double variance0(const std::vector<Point>& points);

// Weiszfeld iteration for the Fermat-Weber point. Returns a point whose
// summed-distance objective is within (1+tol) of the infimum. Deterministic.
// Stops when the relative objective decrease drops below tol/10; iterates
// landing on a data point are nudged by 1e-9 * diameter along axis 0.
Point geometric_median(const std::vector<Point>& points, double tol, int max_iters = 10000);

// Same iteration but returns the best iterate instead of throwing at the
// cap; the solvers use this so one slow Weiszfeld crawl cannot abort a run.
Point geometric_median_best_effort(const std::vector<Point>& points, double tol,
                                   int max_iters = 10000);

double summed_distance(const std::vector<Point>& points, const Point& c);

// (1/n) * sum_j sum_{q in U_j} ||q - m_j||^2, exactly as defined.
double means_objective(const Instance& inst, const CenterTuple& centers,
                       const ChromaticPartition& part);

// Same with unsquared distances.
double medians_objective(const Instance& inst, const CenterTuple& centers,
                         const ChromaticPartition& part);

double objective_value(const Instance& inst, const CenterTuple& centers,
                       const ChromaticPartition& part, Objective kind);

bool is_valid_partition(const Instance& inst, const ChromaticPartition& part);
void require_valid_partition(const Instance& inst, const ChromaticPartition& part);

// All points of the instance in (group, point) order.
std::vector<Point> flatten(const Instance& inst);

}  // namespace chromaclust
