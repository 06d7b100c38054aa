#include "chromaclust/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace chromaclust {

namespace {

constexpr double kEnumerationBound = 1e6;

// Objective of a fully assigned instance with centers recomputed per
// cluster. Returns the total (unnormalized) cost and fills `centers`.
double cluster_objective(const std::vector<std::vector<Point>>& clusters, Objective kind,
                         double tol, CenterTuple& centers, int d) {
    double total = 0.0;
    centers.assign(clusters.size(), Point(static_cast<std::size_t>(d), 0.0));
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        const auto& members = clusters[c];
        if (members.empty()) continue;
        if (kind == Objective::means) {
            centers[c] = mean(members);
            for (const Point& p : members) total += squared_distance(p, centers[c]);
        } else {
            centers[c] = geometric_median_best_effort(members, tol, 200000);
            total += summed_distance(members, centers[c]);
        }
    }
    return total;
}

struct ChromaticSearch {
    ChromaticSearch(const Instance& inst_, Objective kind_, double tol_)
        : inst(inst_), kind(kind_), tol(tol_) {}

    const Instance& inst;
    Objective kind;
    double tol;
    std::vector<std::vector<Point>> clusters;
    std::vector<std::vector<int>> labels;
    double best_total = std::numeric_limits<double>::infinity();
    CenterTuple best_centers;
    std::vector<std::vector<int>> best_labels;

    std::vector<std::size_t> order;  // group indices in id order

    void run() {
        clusters.assign(static_cast<std::size_t>(inst.k), {});
        labels.resize(inst.groups.size());
        for (std::size_t g = 0; g < inst.groups.size(); ++g)
            labels[g].assign(inst.groups[g].points.size(), -1);
        order.resize(inst.groups.size());
        for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return inst.groups[a].id < inst.groups[b].id;
        });
        group(0);
    }

    void group(std::size_t pos) {
        if (pos == inst.groups.size()) {
            CenterTuple centers;
            const double total = cluster_objective(clusters, kind, tol, centers, inst.d);
            if (total < best_total) {
                best_total = total;
                best_centers = std::move(centers);
                best_labels = labels;
            }
            return;
        }
        point(pos, 0, 0u);
    }

    void point(std::size_t pos, std::size_t i, unsigned used_mask) {
        const std::size_t g = order[pos];
        if (i == inst.groups[g].points.size()) {
            group(pos + 1);
            return;
        }
        for (int c = 0; c < inst.k; ++c) {
            if (used_mask & (1u << c)) continue;
            labels[g][i] = c;
            clusters[static_cast<std::size_t>(c)].push_back(inst.groups[g].points[i]);
            point(pos, i + 1, used_mask | (1u << c));
            clusters[static_cast<std::size_t>(c)].pop_back();
        }
        labels[g][i] = -1;
    }
};

}  // namespace

double chromatic_assignment_count(const Instance& inst) {
    double count = 1.0;
    for (const auto& g : inst.groups) {
        double per_group = 1.0;
        for (std::size_t i = 0; i < g.points.size(); ++i)
            per_group *= static_cast<double>(inst.k - static_cast<int>(i));
        count *= per_group;
        if (!std::isfinite(count)) return std::numeric_limits<double>::infinity();
    }
    return count;
}

SolveReport exact_chromatic(const Instance& inst, Objective kind, double tol) {
    inst.validate();
    if (inst.k > 31) throw TooLargeError("exact_chromatic: k too large for enumeration");
    const double count = chromatic_assignment_count(inst);
    if (count > kEnumerationBound)
        throw TooLargeError("exact_chromatic: " + std::to_string(count) +
                            " assignments exceed the enumeration bound of 1e6");

    ChromaticSearch search(inst, kind, tol);
    search.run();

    SolveReport report;
    report.centers = std::move(search.best_centers);
    report.partition.labels = std::move(search.best_labels);
    report.objective = search.best_total / static_cast<double>(inst.groups.size());
    report.kind = kind;
    report.algorithm = kind == Objective::means ? "oracle-means" : "oracle-medians";
    return report;
}

BaselineResult exact_unconstrained(const std::vector<Point>& points, int k, Objective kind,
                                   double tol) {
    if (points.empty()) throw EmptySetError("exact_unconstrained: no points");
    if (k < 1) throw BadSpecError("exact_unconstrained: k must be >= 1");
    const double count = std::pow(static_cast<double>(k), static_cast<double>(points.size()));
    if (count > kEnumerationBound)
        throw TooLargeError("exact_unconstrained: k^n = " + std::to_string(count) +
                            " labelings exceed the enumeration bound of 1e6");

    const int d = static_cast<int>(points.front().size());
    std::vector<int> labeling(points.size(), 0);
    std::vector<int> best_labeling;
    double best_total = std::numeric_limits<double>::infinity();
    CenterTuple best_centers;

    std::vector<std::vector<Point>> clusters(static_cast<std::size_t>(k));
    const auto evaluate = [&] {
        for (auto& c : clusters) c.clear();
        for (std::size_t i = 0; i < points.size(); ++i)
            clusters[static_cast<std::size_t>(labeling[i])].push_back(points[i]);
        CenterTuple centers;
        const double total = cluster_objective(clusters, kind, tol, centers, d);
        if (total < best_total) {
            best_total = total;
            best_centers = std::move(centers);
            best_labeling = labeling;
        }
    };

    // Mixed-radix enumeration of all k^n labelings.
    for (;;) {
        evaluate();
        std::size_t pos = 0;
        while (pos < labeling.size()) {
            if (++labeling[pos] < k) break;
            labeling[pos] = 0;
            ++pos;
        }
        if (pos == labeling.size()) break;
    }

    BaselineResult result;
    result.centers = std::move(best_centers);
    result.objective = best_total;
    result.restarts_used = 0;
    result.clusters.assign(static_cast<std::size_t>(k), {});
    for (std::size_t i = 0; i < points.size(); ++i)
        result.clusters[static_cast<std::size_t>(best_labeling[i])].push_back(
            static_cast<int>(i));
    return result;
}

}  // namespace chromaclust
