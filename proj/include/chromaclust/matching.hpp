#pragma once

#include <utility>
#include <vector>

#include "chromaclust/geometry.hpp"

namespace chromaclust {

enum class WeightKind { squared_distance, distance };

inline WeightKind weight_kind(Objective o) {
    return o == Objective::means ? WeightKind::squared_distance : WeightKind::distance;
}

// Optimal injective map of the group's points into [0, k): a min-weight
// bipartite matching between points and centers (Hungarian method on the
// k_i x k cost matrix). Ties are broken by the lexicographically smallest
// assignment vector.
std::vector<int> assign_group(const ColorGroup& group, const CenterTuple& centers,
                              WeightKind kind);

// Per-group matchings assembled into a chromatic partition, plus the
// (1/n)-normalized objective.
std::pair<ChromaticPartition, double> assign_all(const Instance& inst,
                                                 const CenterTuple& centers, WeightKind kind);

// Reusable workspace for the solvers' inner loops: matching cost only, no
// tie-break refinement, no partition materialization. Same optimum as
// assign_all (the tie-break never changes the cost).
class AssignmentScratch {
public:
    // (1/n)-normalized objective of the optimal chromatic assignment.
    double cost(const Instance& inst, const CenterTuple& centers, WeightKind kind);
    // Total matching cost of a single group.
    double group_cost(const ColorGroup& group, const CenterTuple& centers, WeightKind kind);

private:
    double hungarian(int rows, int cols);
    std::vector<double> cost_, u_, v_, minv_;
    std::vector<int> match_, way_;
    std::vector<char> used_;
};

inline double assignment_cost(const Instance& inst, const CenterTuple& centers,
                              WeightKind kind) {
    AssignmentScratch scratch;
    return scratch.cost(inst, centers, kind);
}

}  // namespace chromaclust
