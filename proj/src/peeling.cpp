#include "chromaclust/peeling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "chromaclust/baseline.hpp"
#include "chromaclust/constant_approx.hpp"
#include "chromaclust/matching.hpp"
#include "chromaclust/parallel.hpp"
#include "chromaclust/rng.hpp"

namespace chromaclust {

namespace {

constexpr double kDedupTol = 1e-12;

int ceil_log2(long long x) {
    int t = 0;
    while ((1LL << t) < x) ++t;
    return t;
}

void check_config(const PeelingConfig& cfg) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw BadSpecError("peeling: epsilon must be in (0, 1)");
    if (cfg.sample_size_cap < 1 || cfg.subset_cap < 1)
        throw BadSpecError("peeling: caps must be >= 1");
    if (cfg.runs < 1) throw BadSpecError("peeling: runs must be >= 1");
    if (cfg.beam_width && *cfg.beam_width < 1)
        throw BadSpecError("peeling: beam width must be >= 1");
}

// Per-node sample size m, clamped to what the subset cap can enumerate;
// the uncapped formula (8k^3/eps^9) ln(k^2/eps^6) sits behind a flag.
int effective_sample_size(const PeelingConfig& cfg, int k) {
    int by_subsets = 0;
    while (by_subsets < 62 && ((1LL << (by_subsets + 1)) - 1) <= cfg.subset_cap) ++by_subsets;
    int m = std::min(cfg.sample_size_cap, by_subsets);
    if (cfg.uncapped_sample_size) {
        const double e = cfg.epsilon;
        const double formula =
            (8.0 * k * k * k / std::pow(e, 9)) * std::log((k * k) / std::pow(e, 6));
        m = formula > 1e9 ? 1'000'000'000 : std::max(m, static_cast<int>(std::ceil(formula)));
    }
    return std::max(1, m);
}

void sort_dedup_points(std::vector<Point>& pts) {
    std::sort(pts.begin(), pts.end());
    const auto near = [](const Point& a, const Point& b) {
        for (std::size_t c = 0; c < a.size(); ++c) {
            const double scale = std::max({1.0, std::abs(a[c]), std::abs(b[c])});
            if (std::abs(a[c] - b[c]) > kDedupTol * scale) return false;
        }
        return true;
    };
    pts.erase(std::unique(pts.begin(), pts.end(), near), pts.end());
}

Point subset_mean(const std::vector<Point>& sample, unsigned long long mask, std::size_t d) {
    Point m(d, 0.0);
    int count = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (!(mask & (1ULL << i))) continue;
        kernels::accumulate(m.data(), sample[i].data(), d);
        ++count;
    }
    for (double& x : m) x /= static_cast<double>(count);
    return m;
}

std::vector<Point> subset_members(const std::vector<Point>& sample, unsigned long long mask) {
    std::vector<Point> members;
    for (std::size_t i = 0; i < sample.size(); ++i)
        if (mask & (1ULL << i)) members.push_back(sample[i]);
    return members;
}

std::vector<int> outside_indices(const std::vector<Point>& flat,
                                 const std::vector<Point>& path_centers, double radius) {
    std::vector<int> out;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        bool outside = true;
        for (const Point& c : path_centers) {
            if (distance(flat[i], c) <= radius) {
                outside = false;
                break;
            }
        }
        if (outside) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<Point> sample_from(const std::vector<Point>& flat, const std::vector<int>& outside,
                               int sample_size, std::uint64_t seed) {
    std::vector<Point> sample;
    if (outside.empty() || sample_size <= 0) return sample;
    Rng rng = make_rng(seed);
    if (static_cast<int>(outside.size()) >= sample_size) {
        // Partial Fisher-Yates: first sample_size entries of a shuffle.
        std::vector<int> idx = outside;
        for (int i = 0; i < sample_size; ++i) {
            std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i),
                                                            idx.size() - 1);
            std::swap(idx[static_cast<std::size_t>(i)], idx[pick(rng)]);
            sample.push_back(flat[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
        }
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, outside.size() - 1);
        for (int i = 0; i < sample_size; ++i)
            sample.push_back(flat[static_cast<std::size_t>(outside[pick(rng)])]);
    }
    return sample;
}

// Shared candidate generator; `raw_cap` guards the pre-dedup output so
// infeasible configurations abort fast instead of thrashing.
std::vector<Point> children_means_impl(const std::vector<Point>& path,
                                       const std::vector<Point>& sample, double epsilon,
                                       const SimplexGridParams& grid_params, long long subset_cap,
                                       long long raw_cap) {
    SimplexGridParams grid = grid_params;
    grid.epsilon = epsilon * epsilon / 4.0;  // covering scale for child grids

    std::vector<Point> out;
    const auto add_grid = [&](const std::vector<Point>& vertices) {
        std::vector<Point> g = simplex_grid(vertices, grid);
        if (static_cast<long long>(out.size() + g.size()) > raw_cap)
            throw BudgetExceededError("candidate generation exceeded the node budget");
        out.insert(out.end(), std::make_move_iterator(g.begin()),
                   std::make_move_iterator(g.end()));
    };

    if (!path.empty()) add_grid(path);
    if (!sample.empty()) {
        const std::size_t d = path.empty() ? sample.front().size() : path.front().size();
        const unsigned long long nmasks =
            sample.size() >= 63 ? ~0ULL : ((1ULL << sample.size()) - 1);
        const unsigned long long to_enumerate =
            std::min(nmasks, static_cast<unsigned long long>(subset_cap));
        std::vector<Point> vertices = path;
        vertices.emplace_back();
        for (unsigned long long mask = 1; mask <= to_enumerate; ++mask) {
            vertices.back() = subset_mean(sample, mask, d);
            add_grid(vertices);
            // Grids of sibling simplices have near-identical sizes; project
            // the total once and bail out before allocating gigabytes.
            if (mask == 1) {
                const double projected = static_cast<double>(out.size()) *
                                         static_cast<double>(to_enumerate);
                if (projected > static_cast<double>(raw_cap))
                    throw BudgetExceededError(
                        "candidate generation would exceed the node budget "
                        "(lower --sample-cap or set --beam)");
            }
        }
    }
    sort_dedup_points(out);
    return out;
}

std::vector<Point> children_medians_impl(const std::vector<Point>& path,
                                         const std::vector<Point>& sample, double median_tol,
                                         long long subset_cap, long long raw_cap) {
    std::vector<Point> out = path;  // the appendix's "another j children"
    if (!sample.empty()) {
        unsigned long long enumerated = 0;
        const unsigned long long nmasks =
            sample.size() >= 63 ? ~0ULL : ((1ULL << sample.size()) - 1);
        for (unsigned long long mask = 1; mask <= nmasks; ++mask) {
            if (enumerated++ >= static_cast<unsigned long long>(subset_cap)) break;
            if (static_cast<long long>(out.size()) >= raw_cap)
                throw BudgetExceededError("candidate generation exceeded the node budget");
            out.push_back(geometric_median_best_effort(subset_members(sample, mask), median_tol));
        }
    }
    sort_dedup_points(out);
    return out;
}

struct TreeBest {
    double objective = std::numeric_limits<double>::infinity();
    CenterTuple centers;
};

// One sphere-peeling tree, grown level by level. Children of a node are
// united over the radius candidates; samples are derived per distinct
// outside-set so equal peelings collapse in the dedup.
class TreeSearch {
public:
    TreeSearch(const Instance& inst, const std::vector<Point>& flat, const PeelingConfig& cfg,
               Objective kind, int sample_size, const BaselineResult& baseline,
               std::uint64_t tree_seed, long long& nodes_used)
        : inst_(inst),
          flat_(flat),
          cfg_(cfg),
          kind_(kind),
          sample_size_(sample_size),
          baseline_(baseline),
          tree_seed_(tree_seed),
          nodes_used_(nodes_used) {}

    TreeBest run(double delta) {
        TreeBest best;
        std::vector<CenterTuple> frontier{CenterTuple{}};
        for (int level = 0; level < inst_.k; ++level) {
            std::vector<CenterTuple> next;
            for (std::size_t node = 0; node < frontier.size(); ++node) {
                const std::vector<Point> children =
                    node_children(frontier[node], delta, level, static_cast<long long>(node));
                charge(static_cast<long long>(children.size()));
                for (const Point& c : children) {
                    CenterTuple path = frontier[node];
                    path.push_back(c);
                    if (level + 1 == inst_.k) {
                        const double obj = scratch_.cost(inst_, path, weight_kind(kind_));
                        if (obj < best.objective) {
                            best.objective = obj;
                            best.centers = std::move(path);
                        }
                    } else {
                        next.push_back(std::move(path));
                    }
                }
            }
            if (level + 1 == inst_.k) break;
            if (cfg_.beam_width && static_cast<int>(next.size()) > *cfg_.beam_width)
                next = beam_select(std::move(next), level + 1);
            frontier = std::move(next);
        }
        return best;
    }

private:
    void charge(long long nodes) {
        nodes_used_ += nodes;
        if (nodes_used_ > cfg_.max_nodes && !cfg_.beam_width)
            throw BudgetExceededError("peeling tree exceeded max_nodes=" +
                                      std::to_string(cfg_.max_nodes) +
                                      " (set --beam or raise --max-nodes)");
    }

    std::vector<Point> node_children(const std::vector<Point>& path, double delta, int level,
                                     long long node_index) {
        const long long raw_cap = cfg_.max_nodes;
        const std::uint64_t node_seed =
            derive_seed(tree_seed_, "node", static_cast<std::uint64_t>(level),
                        static_cast<std::uint64_t>(node_index));
        if (path.empty()) {
            // Height 0: the radius formula collapses to {0} and there are no
            // balls, so a single vacuous pass over the whole instance.
            const auto sample = sample_from(flat_, all_indices(), sample_size_,
                                            derive_seed(node_seed, "sample", 0));
            return make_children(path, sample, raw_cap);
        }
        const std::vector<double> radii =
            radius_candidates(static_cast<int>(path.size()), inst_.n(), inst_.k, cfg_.epsilon,
                              delta);
        std::vector<Point> out;
        std::map<std::vector<int>, int> seen;  // outside-set -> first-appearance index
        for (double r : radii) {
            std::vector<int> outside = outside_indices(flat_, path, r);
            const auto [it, inserted] = seen.emplace(std::move(outside), seen.size());
            if (!inserted) continue;  // identical peeling, identical children
            const auto sample = sample_from(flat_, it->first, sample_size_,
                                            derive_seed(node_seed, "sample", it->second));
            std::vector<Point> cands = make_children(path, sample, raw_cap);
            out.insert(out.end(), std::make_move_iterator(cands.begin()),
                       std::make_move_iterator(cands.end()));
        }
        sort_dedup_points(out);
        return out;
    }

    std::vector<Point> make_children(const std::vector<Point>& path,
                                     const std::vector<Point>& sample, long long raw_cap) {
        if (kind_ == Objective::means)
            return children_means_impl(path, sample, cfg_.epsilon, cfg_.grid, cfg_.subset_cap,
                                       raw_cap);
        return children_medians_impl(path, sample, 1e-9, cfg_.subset_cap, raw_cap);
    }

    std::vector<int> all_indices() const {
        std::vector<int> idx(flat_.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        return idx;
    }

    // Heuristic mode: score partial paths padded with the baseline's
    // remaining centers and keep the best beam_width of them.
    std::vector<CenterTuple> beam_select(std::vector<CenterTuple> paths, int level) {
        std::vector<std::pair<double, std::size_t>> scored(paths.size());
        for (std::size_t i = 0; i < paths.size(); ++i) {
            CenterTuple padded = paths[i];
            for (int slot = level; slot < inst_.k; ++slot)
                padded.push_back(baseline_.centers[static_cast<std::size_t>(slot)]);
            scored[i] = {scratch_.cost(inst_, padded, weight_kind(kind_)), i};
        }
        std::sort(scored.begin(), scored.end());
        scored.resize(static_cast<std::size_t>(*cfg_.beam_width));
        std::sort(scored.begin(), scored.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
        std::vector<CenterTuple> kept;
        kept.reserve(scored.size());
        for (const auto& [obj, idx] : scored) kept.push_back(std::move(paths[idx]));
        return kept;
    }

    const Instance& inst_;
    const std::vector<Point>& flat_;
    const PeelingConfig& cfg_;
    Objective kind_;
    int sample_size_;
    const BaselineResult& baseline_;
    std::uint64_t tree_seed_;
    long long& nodes_used_;
    AssignmentScratch scratch_;
};

SolveReport finalize_report(const Instance& inst, CenterTuple centers, Objective kind,
                            const PeelingConfig& cfg, const char* algorithm,
                            std::chrono::steady_clock::time_point t0) {
    auto [partition, objective] = assign_all(inst, centers, weight_kind(kind));
    SolveReport report;
    report.centers = std::move(centers);
    report.partition = std::move(partition);
    report.objective = objective;
    report.kind = kind;
    report.seed = cfg.seed;
    report.algorithm = algorithm;
    report.heuristic = cfg.beam_width.has_value();
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

SolveReport solve_peeling(const Instance& inst, const PeelingConfig& cfg, Objective kind) {
    const auto t0 = std::chrono::steady_clock::now();
    inst.validate();
    check_config(cfg);
    const int k = inst.k;
    const std::vector<Point> flat = flatten(inst);
    if (static_cast<int>(flat.size()) < k)
        throw TooFewPointsError("peeling: instance has fewer points than clusters");

    const std::uint64_t baseline_seed = derive_seed(cfg.seed, "baseline");
    const BaselineResult baseline =
        kind == Objective::means ? kmeans_baseline(flat, k, baseline_seed, cfg.baseline_restarts)
                                 : kmedians_baseline(flat, k, baseline_seed, cfg.baseline_restarts);
    const SolveReport fallback = kind == Objective::means ? constant_kcmeans(inst, baseline)
                                                          : constant_kcmedians(inst, baseline);

    // Per-point scale of the search: Delta (means, squared) or Omega
    // (medians, plain distance).
    const double scale = baseline.objective / static_cast<double>(flat.size());
    const double steps_factor = kind == Objective::means ? 2.0 : 4.0;
    const int steps = cfg.delta_steps > 0
                          ? cfg.delta_steps
                          : static_cast<int>(std::ceil(steps_factor * k / cfg.epsilon));
    const int m = effective_sample_size(cfg, k);

    std::vector<TreeBest> run_best(static_cast<std::size_t>(cfg.runs));
    for_each_index(static_cast<std::size_t>(cfg.runs), cfg.threads, [&](std::size_t run) {
        long long nodes_used = 0;
        TreeBest best;
        for (int i = 1; i <= steps; ++i) {
            const double delta =
                kind == Objective::means
                    ? std::sqrt(scale) / (2.0 * k) + i * (cfg.epsilon / (2.0 * k)) * std::sqrt(scale)
                    : scale / (4.0 * k) + i * (cfg.epsilon / (4.0 * k)) * scale;
            TreeSearch search(inst, flat, cfg, kind, m, baseline,
                              derive_seed(cfg.seed, "peel", run, static_cast<std::size_t>(i)),
                              nodes_used);
            TreeBest tree = search.run(delta);
            if (tree.objective < best.objective) best = std::move(tree);
        }
        run_best[run] = std::move(best);
    });

    TreeBest best;
    for (const TreeBest& b : run_best)
        if (b.objective < best.objective) best = b;

    // Fallback injection keeps the solver monotone versus the constant
    // approximation.
    CenterTuple chosen =
        best.objective <= fallback.objective ? best.centers : fallback.centers;
    return finalize_report(inst, std::move(chosen), kind, cfg,
                           kind == Objective::means ? "peel-means" : "peel-medians", t0);
}

}  // namespace

std::vector<double> radius_candidates(int j, int n, int k, double epsilon, double delta) {
    if (j < 1) throw BadSpecError("radius_candidates: j must be >= 1");
    if (delta < 0.0) throw BadSpecError("radius_candidates: delta must be >= 0");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw BadSpecError("radius_candidates: epsilon must be in (0, 1]");
    const int tmax = ceil_log2(static_cast<long long>(k) * n);
    const int lmax = static_cast<int>(std::floor(4.0 + 2.0 / epsilon + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>((tmax + 1) * (lmax + 1)));
    for (int t = 0; t <= tmax; ++t) {
        const double pow2 = std::exp2(0.5 * t);
        for (int l = 0; l <= lmax; ++l) {
            const double factor = (1.0 + l * epsilon / 2.0) / (2.0 * (1.0 + epsilon));
            out.push_back(factor * j * pow2 * std::sqrt(epsilon) * delta);
        }
    }
    std::sort(out.begin(), out.end());
    const auto near = [](double a, double b) {
        return std::abs(a - b) <= kDedupTol * std::max({1.0, std::abs(a), std::abs(b)});
    };
    out.erase(std::unique(out.begin(), out.end(), near), out.end());
    return out;
}

std::vector<Point> peel_sample(const Instance& inst, const std::vector<Point>& path_centers,
                               double radius, int sample_size, std::uint64_t seed) {
    if (radius < 0.0) throw BadSpecError("peel_sample: radius must be >= 0");
    const std::vector<Point> flat = flatten(inst);
    return sample_from(flat, outside_indices(flat, path_centers, radius), sample_size, seed);
}

std::vector<Point> candidate_children_means(const std::vector<Point>& path_centers,
                                            const std::vector<Point>& sample, double epsilon,
                                            const SimplexGridParams& grid_params,
                                            long long subset_cap) {
    return children_means_impl(path_centers, sample, epsilon, grid_params, subset_cap,
                               std::numeric_limits<long long>::max());
}

SolveReport solve_kcmeans_peeling(const Instance& inst, const PeelingConfig& cfg) {
    return solve_peeling(inst, cfg, Objective::means);
}

SolveReport solve_kcmedians_peeling(const Instance& inst, const PeelingConfig& cfg) {
    return solve_peeling(inst, cfg, Objective::medians);
}

SolveReport solve_full_kcmeans_sampling(const Instance& inst, const PeelingConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    inst.validate();
    check_config(cfg);
    if (!inst.full())
        throw NotFullInstanceError("full sampling requires every group to have exactly k points");

    const int k = inst.k;
    const std::vector<Point> flat = flatten(inst);
    const double eps = cfg.epsilon;
    const int subset_size = static_cast<int>(std::ceil(1.0 / eps));
    const double formula = std::ceil((k / eps) * std::log(1.0 / eps));
    int sample_size =
        std::min(cfg.sample_size_cap, std::max(subset_size, static_cast<int>(formula)));
    sample_size = std::min<int>(sample_size, static_cast<int>(flat.size()));

    AssignmentScratch scratch;
    TreeBest best;
    for (int run = 0; run < cfg.runs; ++run) {
        // One sample and candidate-mean set per cluster slot.
        std::vector<std::vector<Point>> slot_cands(static_cast<std::size_t>(k));
        for (int slot = 0; slot < k; ++slot) {
            std::vector<int> all(flat.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
            const auto sample =
                sample_from(flat, all, sample_size,
                            derive_seed(cfg.seed, "full", run, slot));
            std::vector<Point>& cands = slot_cands[static_cast<std::size_t>(slot)];
            // Subsets of size 1..ceil(1/eps), smallest first.
            long long enumerated = 0;
            const int q = std::min<int>(subset_size, static_cast<int>(sample.size()));
            std::vector<int> pick;
            const auto emit = [&](const std::vector<int>& idx) {
                Point m(static_cast<std::size_t>(inst.d), 0.0);
                for (int i : idx)
                    kernels::accumulate(m.data(), sample[static_cast<std::size_t>(i)].data(),
                                        m.size());
                for (double& x : m) x /= static_cast<double>(idx.size());
                cands.push_back(std::move(m));
            };
            for (int size = 1; size <= q && enumerated < cfg.subset_cap; ++size) {
                pick.assign(static_cast<std::size_t>(size), 0);
                for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
                for (;;) {
                    if (enumerated++ >= cfg.subset_cap) break;
                    emit(pick);
                    int pos = size - 1;
                    while (pos >= 0 &&
                           pick[static_cast<std::size_t>(pos)] ==
                               static_cast<int>(sample.size()) - size + pos)
                        --pos;
                    if (pos < 0) break;
                    ++pick[static_cast<std::size_t>(pos)];
                    for (int i = pos + 1; i < size; ++i)
                        pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
                }
            }
            sort_dedup_points(cands);
        }

        double tuples = 1.0;
        for (const auto& c : slot_cands) tuples *= static_cast<double>(c.size());
        if (tuples > static_cast<double>(cfg.max_nodes))
            throw BudgetExceededError("full sampling would score " + std::to_string(tuples) +
                                      " tuples; raise --max-nodes or lower the caps");

        std::vector<std::size_t> digits(static_cast<std::size_t>(k), 0);
        CenterTuple tuple(static_cast<std::size_t>(k));
        for (;;) {
            for (int slot = 0; slot < k; ++slot)
                tuple[static_cast<std::size_t>(slot)] =
                    slot_cands[static_cast<std::size_t>(slot)][digits[static_cast<std::size_t>(slot)]];
            const double obj = scratch.cost(inst, tuple, WeightKind::squared_distance);
            if (obj < best.objective) {
                best.objective = obj;
                best.centers = tuple;
            }
            int slot = k - 1;
            while (slot >= 0 &&
                   ++digits[static_cast<std::size_t>(slot)] ==
                       slot_cands[static_cast<std::size_t>(slot)].size()) {
                digits[static_cast<std::size_t>(slot)] = 0;
                --slot;
            }
            if (slot < 0) break;
        }
    }

    return finalize_report(inst, std::move(best.centers), Objective::means, cfg, "full-sampling",
                           t0);
}

}  // namespace chromaclust
