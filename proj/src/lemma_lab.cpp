#include "chromaclust/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "chromaclust/parallel.hpp"
#include "chromaclust/simplex_grid.hpp"

namespace chromaclust {

std::vector<Point> random_point_set(Rng& rng, int n, int d) {
    std::uniform_int_distribution<int> ncomp_dist(1, 3);
    std::uniform_real_distribution<double> center_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> sigma_dist(0.1, 2.0);
    std::uniform_real_distribution<double> half_dist(0.2, 3.0);
    std::bernoulli_distribution gaussian(0.5);

    const int ncomp = ncomp_dist(rng);
    struct Component {
        bool gauss;
        Point center;
        std::vector<double> scale;  // per-axis sigma or half-width
    };
    std::vector<Component> comps;
    for (int c = 0; c < ncomp; ++c) {
        Component comp;
        comp.gauss = gaussian(rng);
        comp.center.resize(static_cast<std::size_t>(d));
        comp.scale.resize(static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) {
            comp.center[static_cast<std::size_t>(a)] = center_dist(rng);
            comp.scale[static_cast<std::size_t>(a)] =
                comp.gauss ? sigma_dist(rng) : half_dist(rng);
        }
        comps.push_back(std::move(comp));
    }

    std::uniform_int_distribution<int> comp_pick(0, ncomp - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Component& comp = comps[static_cast<std::size_t>(comp_pick(rng))];
        Point p(static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) {
            const double off = comp.gauss ? gauss(rng) : unit(rng);
            p[static_cast<std::size_t>(a)] =
                comp.center[static_cast<std::size_t>(a)] +
                off * comp.scale[static_cast<std::size_t>(a)];
        }
        points.push_back(std::move(p));
    }
    return points;
}

namespace {

int random_dim(Rng& rng, int max_d = 50) {
    return std::uniform_int_distribution<int>(1, max_d)(rng);
}

template <class Trial>
std::vector<double> run_trials(int trials, std::uint64_t seed, int threads, Trial&& trial) {
    std::vector<double> results(static_cast<std::size_t>(trials));
    for_each_index(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
        Rng rng = make_rng(derive_seed(seed, "trial", i));
        results[i] = trial(rng);
    });
    return results;
}

}  // namespace

double check_sampling_mean(int trials, int n, int t, double eta, std::uint64_t seed,
                           int threads) {
    if (t > n) throw BadSpecError("check_sampling_mean requires t <= n");
    if (!(eta > 0.0 && eta < 1.0)) throw BadSpecError("eta must be in (0, 1)");
    const auto results = run_trials(trials, seed, threads, [&](Rng& rng) -> double {
        const int d = random_dim(rng);
        const std::vector<Point> s = random_point_set(rng, n, d);
        // Uniform t-subset without replacement.
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < t; ++i) {
            std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i),
                                                            idx.size() - 1);
            std::swap(idx[static_cast<std::size_t>(i)], idx[pick(rng)]);
        }
        std::vector<Point> sub;
        sub.reserve(static_cast<std::size_t>(t));
        for (int i = 0; i < t; ++i)
            sub.push_back(s[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
        const double diff = squared_distance(mean(sub), mean(s));
        const double bound = variance0(s) / (eta * t);
        return diff > bound ? 1.0 : 0.0;
    });
    return std::accumulate(results.begin(), results.end(), 0.0) / trials;
}

double check_subset_hitting(int trials, int set_size, double alpha, int t, double eta,
                            std::uint64_t seed, int threads) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw BadSpecError("alpha must be in (0, 1]");
    if (!(eta > 0.0 && eta < 1.0)) throw BadSpecError("eta must be in (0, 1)");
    const int marked = static_cast<int>(std::ceil(alpha * set_size));
    const int draws =
        static_cast<int>(std::ceil(t * std::log(t / eta) / std::log1p(alpha)));
    const auto results = run_trials(trials, seed, threads, [&](Rng& rng) -> double {
        std::uniform_int_distribution<int> pick(0, set_size - 1);
        int hits = 0;
        for (int i = 0; i < draws; ++i)
            if (pick(rng) < marked) ++hits;
        return hits < t ? 1.0 : 0.0;
    });
    return std::accumulate(results.begin(), results.end(), 0.0) / trials;
}

double check_mean_shift_identity(int trials, std::uint64_t seed, int threads) {
    const auto results = run_trials(trials, seed, threads, [&](Rng& rng) -> double {
        const int d = random_dim(rng);
        const int n = std::uniform_int_distribution<int>(1, 80)(rng);
        const std::vector<Point> p = random_point_set(rng, n, d);
        std::vector<Point> shifted = random_point_set(rng, 1, d);
        const Point& m_prime = shifted.front();
        const Point m = mean(p);
        double lhs = 0.0, within = 0.0;
        for (const Point& q : p) {
            lhs += squared_distance(q, m_prime);
            within += squared_distance(q, m);
        }
        const double rhs = within + n * squared_distance(m, m_prime);
        return std::abs(lhs - rhs) / std::max(lhs, 1.0);
    });
    return *std::max_element(results.begin(), results.end());
}

double check_subset_mean_bound(int trials, std::uint64_t seed, int threads) {
    const auto results = run_trials(trials, seed, threads, [&](Rng& rng) -> double {
        const int d = random_dim(rng);
        const int n = std::uniform_int_distribution<int>(2, 80)(rng);
        const std::vector<Point> p = random_point_set(rng, n, d);
        const int sub_size = std::uniform_int_distribution<int>(1, n)(rng);
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<Point> sub;
        for (int i = 0; i < sub_size; ++i)
            sub.push_back(p[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
        const double alpha = static_cast<double>(sub_size) / n;
        const double delta = std::sqrt(variance0(p));
        const double bound = std::sqrt((1.0 - alpha) / alpha) * delta;
        const double actual = distance(mean(sub), mean(p));
        return bound - actual;
    });
    return *std::min_element(results.begin(), results.end());
}

namespace {

// Random partition into j parts, each holding at least a ceil(eps/(4j) * n)
// share of the points, the regime of the lattice construction.
std::vector<std::vector<Point>> random_sized_partition(Rng& rng, int n, int d, int j,
                                                       double eps) {
    const int min_part = std::max(1, static_cast<int>(std::ceil(eps / (4.0 * j) * n)));
    for (;;) {
        const std::vector<Point> pts = random_point_set(rng, n, d);
        std::vector<std::vector<Point>> parts(static_cast<std::size_t>(j));
        std::uniform_int_distribution<int> pick(0, j - 1);
        for (const Point& p : pts) parts[static_cast<std::size_t>(pick(rng))].push_back(p);
        bool ok = true;
        for (const auto& part : parts) ok = ok && static_cast<int>(part.size()) >= min_part;
        if (ok) return parts;
    }
}

int count_violations(int cases, std::uint64_t seed, int threads, bool perturbed) {
    std::vector<double> flags(static_cast<std::size_t>(cases), 0.0);
    for_each_index(static_cast<std::size_t>(cases), threads, [&](std::size_t i) {
        Rng rng = make_rng(derive_seed(seed, "simplex", i, perturbed ? 1 : 0));
        const int j = std::uniform_int_distribution<int>(1, 4)(rng);
        const int d = i % 10 == 0 ? 50 : std::uniform_int_distribution<int>(2, 10)(rng);
        const int n = std::uniform_int_distribution<int>(30, 100)(rng);
        const double eps = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
        const auto parts = random_sized_partition(rng, n, d, j, eps);

        if (!perturbed) {
            const auto [dist, bound] = grid_covers_mean_check(parts, eps);
            flags[i] = dist > bound + 1e-12 ? 1.0 : 0.0;
            return;
        }
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double radius = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
        std::vector<Point> vertices;
        for (const auto& part : parts) {
            Point v = mean(part);
            Point dir(static_cast<std::size_t>(d));
            for (double& x : dir) x = gauss(rng);
            const double norm = std::sqrt(kernels::dot(dir.data(), dir.data(), dir.size()));
            if (norm > 0.0) {
                const double len = std::uniform_real_distribution<double>(0.0, radius)(rng);
                kernels::axpy(v.data(), len / norm, dir.data(), v.size());
            }
            vertices.push_back(std::move(v));
        }
        const auto [dist, bound] = grid_covers_mean_check_perturbed(parts, eps, vertices, radius);
        flags[i] = dist > bound + 1e-12 ? 1.0 : 0.0;
    });
    int violations = 0;
    for (double f : flags) violations += f > 0.5 ? 1 : 0;
    return violations;
}

}  // namespace

int check_simplex_cover(int cases, std::uint64_t seed, int threads) {
    return count_violations(cases, seed, threads, false);
}

int check_simplex_cover_perturbed(int cases, std::uint64_t seed, int threads) {
    return count_violations(cases, seed, threads, true);
}

double check_median_anchor(int trials, std::uint64_t seed, int threads) {
    const auto results = run_trials(trials, seed, threads, [&](Rng& rng) -> double {
        const int d = std::uniform_int_distribution<int>(1, 10)(rng);
        const int j = std::uniform_int_distribution<int>(1, 4)(rng);
        const int n = std::uniform_int_distribution<int>(j, 60)(rng);
        const std::vector<Point> p = random_point_set(rng, n, d);

        // Random partition with every part nonempty.
        std::vector<int> part_of(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            part_of[static_cast<std::size_t>(i)] =
                i < j ? i : std::uniform_int_distribution<int>(0, j - 1)(rng);
        std::shuffle(part_of.begin(), part_of.end(), rng);
        std::vector<std::vector<Point>> parts(static_cast<std::size_t>(j));
        for (int i = 0; i < n; ++i)
            parts[static_cast<std::size_t>(part_of[static_cast<std::size_t>(i)])].push_back(
                p[static_cast<std::size_t>(i)]);

        const Point o = geometric_median(p, 1e-9);
        const double mu = summed_distance(p, o) / n;
        double min_dist = std::numeric_limits<double>::infinity();
        for (const auto& part : parts)
            min_dist = std::min(min_dist, distance(geometric_median(part, 1e-9), o));

        double scale = 0.0;
        for (const Point& q : p) scale = std::max(scale, distance(q, p.front()));
        scale = std::max(scale, 1e-12);
        return (4.0 * mu - min_dist) / scale;
    });
    return *std::min_element(results.begin(), results.end());
}

}  // namespace chromaclust
