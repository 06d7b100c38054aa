#include "chromaclust/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "chromaclust/rng.hpp"

namespace chromaclust {

namespace {

constexpr int kMaxLloydIters = 500;

double point_cost(const Point& p, const Point& c, bool squared) {
    const double sq = squared_distance(p, c);
    return squared ? sq : std::sqrt(sq);
}

// D^2 (means) or D^1 (medians) proportional seeding.
CenterTuple seed_centers(const std::vector<Point>& points, int k, Rng& rng, bool squared) {
    const std::size_t n = points.size();
    CenterTuple centers;
    centers.reserve(static_cast<std::size_t>(k));
    std::uniform_int_distribution<std::size_t> uni(0, n - 1);
    centers.push_back(points[uni(rng)]);
    std::vector<double> dist(n);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& c : centers) best = std::min(best, point_cost(points[i], c, squared));
            dist[i] = best;
            total += best;
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng);
            for (std::size_t i = 0; i < n; ++i) {
                target -= dist[i];
                if (target <= 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            // All points coincide with chosen centers; any unpicked index works.
            pick = uni(rng);
        }
        centers.push_back(points[pick]);
    }
    return centers;
}

int nearest_center(const Point& p, const CenterTuple& centers, bool squared) {
    int best = 0;
    double best_cost = point_cost(p, centers[0], squared);
    for (std::size_t j = 1; j < centers.size(); ++j) {
        const double c = point_cost(p, centers[j], squared);
        if (c < best_cost) {
            best_cost = c;
            best = static_cast<int>(j);
        }
    }
    return best;
}

double total_cost(const std::vector<Point>& points, const std::vector<int>& assign,
                  const CenterTuple& centers, bool squared) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        s += point_cost(points[i], centers[static_cast<std::size_t>(assign[i])], squared);
    return s;
}

// Move the worst-served point into each empty cluster.
bool repair_empty_clusters(const std::vector<Point>& points, std::vector<int>& assign,
                           const CenterTuple& centers, int k, bool squared) {
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int a : assign) ++sizes[static_cast<std::size_t>(a)];
    bool moved = false;
    for (int c = 0; c < k; ++c) {
        if (sizes[static_cast<std::size_t>(c)] > 0) continue;
        std::size_t worst = 0;
        double worst_cost = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (sizes[static_cast<std::size_t>(assign[i])] <= 1) continue;
            const double w =
                point_cost(points[i], centers[static_cast<std::size_t>(assign[i])], squared);
            if (w > worst_cost) {
                worst_cost = w;
                worst = i;
            }
        }
        if (worst_cost < 0.0) break;  // fewer distinct points than clusters
        --sizes[static_cast<std::size_t>(assign[worst])];
        assign[worst] = c;
        ++sizes[static_cast<std::size_t>(c)];
        moved = true;
    }
    return moved;
}

struct RestartOutcome {
    CenterTuple centers;
    std::vector<int> assign;
    double objective = std::numeric_limits<double>::infinity();
    std::vector<double> trace;
};

RestartOutcome run_restart(const std::vector<Point>& points, int k, std::uint64_t seed,
                           bool squared, double median_tol) {
    Rng rng = make_rng(seed);
    const std::size_t n = points.size();

    RestartOutcome out;
    out.centers = seed_centers(points, k, rng, squared);
    out.assign.assign(n, -1);

    for (int iter = 0; iter < kMaxLloydIters; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            const int a = nearest_center(points[i], out.centers, squared);
            if (a != out.assign[i]) {
                out.assign[i] = a;
                changed = true;
            }
        }
        if (repair_empty_clusters(points, out.assign, out.centers, k, squared)) changed = true;

        // Center update; for medians keep the old center when the Weiszfeld
        // point would score worse, which makes the trace monotone.
        std::vector<std::vector<Point>> clusters(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < n; ++i)
            clusters[static_cast<std::size_t>(out.assign[i])].push_back(points[i]);
        for (int c = 0; c < k; ++c) {
            auto& members = clusters[static_cast<std::size_t>(c)];
            if (members.empty()) continue;
            if (squared) {
                out.centers[static_cast<std::size_t>(c)] = mean(members);
            } else {
                Point cand = geometric_median_best_effort(members, median_tol);
                const double before =
                    summed_distance(members, out.centers[static_cast<std::size_t>(c)]);
                if (summed_distance(members, cand) <= before)
                    out.centers[static_cast<std::size_t>(c)] = std::move(cand);
            }
        }

        out.trace.push_back(total_cost(points, out.assign, out.centers, squared));
        if (!changed) break;
    }
    out.objective = out.trace.back();
    return out;
}

BaselineResult best_of_restarts(const std::vector<Point>& points, int k, std::uint64_t seed,
                                int restarts, bool squared, double median_tol) {
    if (k < 1) throw BadSpecError("baseline requires k >= 1");
    if (points.empty() || static_cast<int>(points.size()) < k)
        throw TooFewPointsError("baseline: need at least k=" + std::to_string(k) + " points, got " +
                                std::to_string(points.size()));
    if (restarts < 1) throw BadSpecError("baseline requires restarts >= 1");

    RestartOutcome best;
    for (int r = 0; r < restarts; ++r) {
        RestartOutcome cur =
            run_restart(points, k, derive_seed(seed, "restart", r), squared, median_tol);
        if (cur.objective < best.objective) best = std::move(cur);
    }

    BaselineResult result;
    result.centers = std::move(best.centers);
    result.objective = best.objective;
    result.restarts_used = restarts;
    result.objective_trace = std::move(best.trace);
    result.clusters.assign(static_cast<std::size_t>(k), {});
    for (std::size_t i = 0; i < points.size(); ++i)
        result.clusters[static_cast<std::size_t>(best.assign[i])].push_back(static_cast<int>(i));
    return result;
}

}  // namespace

BaselineResult kmeans_baseline(const std::vector<Point>& points, int k, std::uint64_t seed,
                               int restarts) {
    return best_of_restarts(points, k, seed, restarts, true, 1e-9);
}

BaselineResult kmedians_baseline(const std::vector<Point>& points, int k, std::uint64_t seed,
                                 int restarts, double tol) {
    return best_of_restarts(points, k, seed, restarts, false, tol);
}

}  // namespace chromaclust
