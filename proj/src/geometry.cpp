#include "chromaclust/geometry.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace chromaclust {

std::size_t Instance::total_points() const {
    std::size_t total = 0;
    for (const auto& g : groups) total += g.points.size();
    return total;
}

bool Instance::full() const {
    for (const auto& g : groups)
        if (static_cast<int>(g.points.size()) != k) return false;
    return !groups.empty();
}

void Instance::validate() const {
    if (k < 2) throw BadSpecError("instance requires k >= 2, got k=" + std::to_string(k));
    if (d < 1) throw BadSpecError("instance requires d >= 1, got d=" + std::to_string(d));
    if (groups.empty()) throw BadSpecError("instance has no groups");
    std::set<int> ids;
    for (const auto& g : groups) {
        if (!ids.insert(g.id).second)
            throw BadSpecError("duplicate group id " + std::to_string(g.id));
        if (g.points.empty())
            throw BadSpecError("group " + std::to_string(g.id) + " is empty");
        if (static_cast<int>(g.points.size()) > k)
            throw BadSpecError("group " + std::to_string(g.id) + " has " +
                               std::to_string(g.points.size()) + " points, exceeds k=" +
                               std::to_string(k));
        for (const auto& p : g.points) {
            if (static_cast<int>(p.size()) != d)
                throw DimensionMismatchError("group " + std::to_string(g.id) +
                                             ": point dimension " + std::to_string(p.size()) +
                                             ", expected " + std::to_string(d));
            for (double x : p)
                if (!std::isfinite(x))
                    throw BadSpecError("group " + std::to_string(g.id) +
                                       " contains a non-finite coordinate");
        }
    }
}

Point mean(const std::vector<Point>& points) {
    if (points.empty()) throw EmptySetError("mean of empty set");
    const std::size_t d = points.front().size();
    Point m(d, 0.0);
    for (const Point& p : points) {
        if (p.size() != d) throw DimensionMismatchError("mean: mixed point dimensions");
        kernels::accumulate(m.data(), p.data(), d);
    }
    const double inv = 1.0 / static_cast<double>(points.size());
    for (double& x : m) x *= inv;
    return m;
}

double variance0(const std::vector<Point>& points) {
    if (points.empty()) throw EmptySetError("variance0 of empty set");
    const Point m = mean(points);
    double s = 0.0;
    for (const Point& p : points) s += squared_distance(p, m);
    return s / static_cast<double>(points.size());
}

double summed_distance(const std::vector<Point>& points, const Point& c) {
    double s = 0.0;
    for (const Point& p : points) s += distance(p, c);
    return s;
}

namespace {

double bounding_diameter(const std::vector<Point>& points) {
    const std::size_t d = points.front().size();
    double s = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
        double lo = points[0][c], hi = points[0][c];
        for (const Point& p : points) {
            lo = std::min(lo, p[c]);
            hi = std::max(hi, p[c]);
        }
        s += (hi - lo) * (hi - lo);
    }
    return std::sqrt(s);
}

}  // namespace

namespace {

Point weiszfeld(const std::vector<Point>& points, double tol, int max_iters, bool* converged) {
    *converged = true;
    if (points.empty()) throw EmptySetError("geometric_median of empty set");
    if (tol <= 0.0) throw BadSpecError("geometric_median requires tol > 0");
    if (points.size() == 1) return points.front();

    const std::size_t d = points.front().size();
    const double diameter = bounding_diameter(points);
    Point y = mean(points);
    if (diameter == 0.0) return y;  // all points coincide

    Point best = y;
    double best_obj = summed_distance(points, y);
    double prev_obj = best_obj;

    for (int iter = 0; iter < max_iters; ++iter) {
        // Nudge off data points before forming 1/distance weights.
        bool on_point = false;
        for (const Point& p : points) {
            if (distance(y, p) < 1e-12) {
                on_point = true;
                break;
            }
        }
        if (on_point) {
            y[0] += 1e-9 * diameter;
            continue;
        }

        Point next(d, 0.0);
        double wsum = 0.0;
        for (const Point& p : points) {
            const double w = 1.0 / distance(y, p);
            kernels::axpy(next.data(), w, p.data(), d);
            wsum += w;
        }
        for (double& x : next) x /= wsum;

        const double obj = summed_distance(points, next);
        if (obj < best_obj) {
            best_obj = obj;
            best = next;
        }
        const double step = distance(y, next);
        if (prev_obj - obj < (tol / 10.0) * std::max(prev_obj, 1e-300)) return best;
        if (step <= 1e-14 * diameter) return best;  // below double resolution
        prev_obj = obj;
        y = std::move(next);
    }
    *converged = false;
    return best;
}

}  // namespace

Point geometric_median(const std::vector<Point>& points, double tol, int max_iters) {
    bool converged = false;
    Point result = weiszfeld(points, tol, max_iters, &converged);
    if (!converged)
        throw NonConvergenceError("geometric_median: no convergence within " +
                                  std::to_string(max_iters) + " iterations");
    return result;
}

Point geometric_median_best_effort(const std::vector<Point>& points, double tol, int max_iters) {
    bool converged = false;
    return weiszfeld(points, tol, max_iters, &converged);
}

bool is_valid_partition(const Instance& inst, const ChromaticPartition& part) {
    if (part.labels.size() != inst.groups.size()) return false;
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
        const auto& labels = part.labels[g];
        if (labels.size() != inst.groups[g].points.size()) return false;
        std::vector<char> used(static_cast<std::size_t>(inst.k), 0);
        for (int c : labels) {
            if (c < 0 || c >= inst.k) return false;
            if (used[static_cast<std::size_t>(c)]) return false;  // chromatic constraint
            used[static_cast<std::size_t>(c)] = 1;
        }
    }
    return true;
}

void require_valid_partition(const Instance& inst, const ChromaticPartition& part) {
    if (!is_valid_partition(inst, part))
        throw BadSpecError("partition is not a valid chromatic partition of the instance");
}

namespace {

double objective_impl(const Instance& inst, const CenterTuple& centers,
                      const ChromaticPartition& part, bool squared) {
    require_valid_partition(inst, part);
    if (static_cast<int>(centers.size()) != inst.k)
        throw DimensionMismatchError("expected " + std::to_string(inst.k) + " centers, got " +
                                     std::to_string(centers.size()));
    for (const Point& c : centers)
        if (static_cast<int>(c.size()) != inst.d)
            throw DimensionMismatchError("center dimension " + std::to_string(c.size()) +
                                         ", expected " + std::to_string(inst.d));
    double total = 0.0;
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
        for (std::size_t i = 0; i < inst.groups[g].points.size(); ++i) {
            const Point& p = inst.groups[g].points[i];
            const Point& c = centers[static_cast<std::size_t>(part.labels[g][i])];
            total += squared ? squared_distance(p, c) : distance(p, c);
        }
    }
    return total / static_cast<double>(inst.groups.size());
}

}  // namespace

double means_objective(const Instance& inst, const CenterTuple& centers,
                       const ChromaticPartition& part) {
    return objective_impl(inst, centers, part, true);
}

double medians_objective(const Instance& inst, const CenterTuple& centers,
                         const ChromaticPartition& part) {
    return objective_impl(inst, centers, part, false);
}

double objective_value(const Instance& inst, const CenterTuple& centers,
                       const ChromaticPartition& part, Objective kind) {
    return objective_impl(inst, centers, part, kind == Objective::means);
}

std::vector<Point> flatten(const Instance& inst) {
    std::vector<Point> out;
    out.reserve(inst.total_points());
    for (const auto& g : inst.groups)
        for (const auto& p : g.points) out.push_back(p);
    return out;
}

}  // namespace chromaclust
