#include "chromaclust/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace chromaclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double edge_weight(const Point& p, const Point& c, WeightKind kind) {
    const double sq = squared_distance(p, c);
    return kind == WeightKind::squared_distance ? sq : std::sqrt(sq);
}

void check_group(const ColorGroup& group, const CenterTuple& centers) {
    if (group.points.empty()) throw EmptySetError("assign_group: empty group");
    if (centers.empty()) throw EmptySetError("assign_group: no centers");
    if (group.points.size() > centers.size())
        throw BadSpecError("group " + std::to_string(group.id) + " has " +
                           std::to_string(group.points.size()) + " points but only " +
                           std::to_string(centers.size()) + " centers");
    const std::size_t d = centers.front().size();
    for (const Point& c : centers)
        if (c.size() != d) throw DimensionMismatchError("assign_group: mixed center dimensions");
    for (const Point& p : group.points)
        if (p.size() != d)
            throw DimensionMismatchError("assign_group: point dimension " +
                                         std::to_string(p.size()) + ", expected " +
                                         std::to_string(d));
}

}  // namespace

// Hungarian method with potentials on the row-major cost_ matrix,
// rows <= cols. O(rows^2 * cols). Unmatched columns stay free.
double AssignmentScratch::hungarian(int rows, int cols) {
    u_.assign(static_cast<std::size_t>(rows) + 1, 0.0);
    v_.assign(static_cast<std::size_t>(cols) + 1, 0.0);
    match_.assign(static_cast<std::size_t>(cols) + 1, 0);
    way_.assign(static_cast<std::size_t>(cols) + 1, 0);
    for (int i = 1; i <= rows; ++i) {
        match_[0] = i;
        int j0 = 0;
        minv_.assign(static_cast<std::size_t>(cols) + 1, kInf);
        used_.assign(static_cast<std::size_t>(cols) + 1, 0);
        do {
            used_[static_cast<std::size_t>(j0)] = 1;
            const int i0 = match_[static_cast<std::size_t>(j0)];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= cols; ++j) {
                if (used_[static_cast<std::size_t>(j)]) continue;
                const double cur =
                    cost_[static_cast<std::size_t>(i0 - 1) * cols + (j - 1)] - u_[i0] - v_[j];
                if (cur < minv_[static_cast<std::size_t>(j)]) {
                    minv_[static_cast<std::size_t>(j)] = cur;
                    way_[static_cast<std::size_t>(j)] = j0;
                }
                if (minv_[static_cast<std::size_t>(j)] < delta) {
                    delta = minv_[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= cols; ++j) {
                if (used_[static_cast<std::size_t>(j)]) {
                    u_[match_[static_cast<std::size_t>(j)]] += delta;
                    v_[j] -= delta;
                } else {
                    minv_[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match_[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way_[static_cast<std::size_t>(j0)];
            match_[static_cast<std::size_t>(j0)] = match_[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0);
    }
    double total = 0.0;
    for (int j = 1; j <= cols; ++j)
        if (match_[static_cast<std::size_t>(j)] != 0)
            total += cost_[static_cast<std::size_t>(match_[static_cast<std::size_t>(j)] - 1) * cols +
                           (j - 1)];
    return total;
}

double AssignmentScratch::group_cost(const ColorGroup& group, const CenterTuple& centers,
                                     WeightKind kind) {
    check_group(group, centers);
    const int rows = static_cast<int>(group.points.size());
    const int cols = static_cast<int>(centers.size());
    cost_.resize(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            cost_[static_cast<std::size_t>(i) * cols + j] =
                edge_weight(group.points[static_cast<std::size_t>(i)],
                            centers[static_cast<std::size_t>(j)], kind);
    return hungarian(rows, cols);
}

double AssignmentScratch::cost(const Instance& inst, const CenterTuple& centers,
                               WeightKind kind) {
    double total = 0.0;
    for (const ColorGroup& g : inst.groups) total += group_cost(g, centers, kind);
    return total / static_cast<double>(inst.groups.size());
}

namespace {

// Hungarian cost of the sub-problem: rows `first_row..rows-1` against the
// centers whose `free` flag is set.
double suffix_cost(AssignmentScratch& scratch, const ColorGroup& group,
                   const CenterTuple& centers, WeightKind kind, std::size_t first_row,
                   const std::vector<char>& free_cols) {
    if (first_row >= group.points.size()) return 0.0;
    ColorGroup rest;
    rest.id = group.id;
    rest.points.assign(group.points.begin() + static_cast<std::ptrdiff_t>(first_row),
                       group.points.end());
    CenterTuple sub;
    for (std::size_t j = 0; j < centers.size(); ++j)
        if (free_cols[j]) sub.push_back(centers[j]);
    return scratch.group_cost(rest, sub, kind);
}

}  // namespace

std::vector<int> assign_group(const ColorGroup& group, const CenterTuple& centers,
                              WeightKind kind) {
    AssignmentScratch scratch;
    const double best = scratch.group_cost(group, centers, kind);
    const double tol = 1e-9 * (1.0 + std::abs(best));

    // Fix points one at a time to the smallest center index that still
    // admits an optimal completion; this realizes the lexicographic
    // tie-break exactly.
    const std::size_t rows = group.points.size();
    std::vector<int> result(rows, -1);
    std::vector<char> free_cols(centers.size(), 1);
    double prefix = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < centers.size(); ++j) {
            if (!free_cols[j]) continue;
            const double w = edge_weight(group.points[i], centers[j], kind);
            free_cols[j] = 0;
            const double completion = suffix_cost(scratch, group, centers, kind, i + 1, free_cols);
            if (prefix + w + completion <= best + tol) {
                result[i] = static_cast<int>(j);
                prefix += w;
                break;
            }
            free_cols[j] = 1;
        }
        if (result[i] < 0)
            throw Error(ErrorClass::solver, "assign_group: no optimal completion found");
    }
    return result;
}

std::pair<ChromaticPartition, double> assign_all(const Instance& inst,
                                                 const CenterTuple& centers, WeightKind kind) {
    ChromaticPartition part;
    part.labels.resize(inst.groups.size());
    double total = 0.0;
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
        part.labels[g] = assign_group(inst.groups[g], centers, kind);
        for (std::size_t i = 0; i < inst.groups[g].points.size(); ++i)
            total += edge_weight(inst.groups[g].points[i],
                                 centers[static_cast<std::size_t>(part.labels[g][i])], kind);
    }
    return {std::move(part), total / static_cast<double>(inst.groups.size())};
}

}  // namespace chromaclust
