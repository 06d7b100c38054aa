#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "chromaclust/matching.hpp"
#include "chromaclust/rng.hpp"

using namespace chromaclust;

namespace {

double brute_force_group_cost(const ColorGroup& g, const CenterTuple& centers, WeightKind kind,
                              std::vector<int>* best_assignment = nullptr) {
    std::vector<int> perm(centers.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_vec;
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < g.points.size(); ++i) {
            const double sq = squared_distance(g.points[i], centers[static_cast<std::size_t>(perm[i])]);
            cost += kind == WeightKind::squared_distance ? sq : std::sqrt(sq);
        }
        std::vector<int> vec(perm.begin(), perm.begin() + static_cast<long>(g.points.size()));
        if (cost < best - 1e-12 || (cost <= best + 1e-12 && vec < best_vec)) {
            best = cost;
            best_vec = vec;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best_assignment) *best_assignment = best_vec;
    return best;
}

ColorGroup random_group(Rng& rng, int id, int ki, int d) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    ColorGroup g{id, {}};
    for (int i = 0; i < ki; ++i) {
        Point p(static_cast<std::size_t>(d));
        for (double& x : p) x = u(rng);
        g.points.push_back(std::move(p));
    }
    return g;
}

}  // namespace

TEST_CASE("assign_group: pinned examples") {
    ColorGroup g{0, {{0.0, 0.0}, {10.0, 0.0}}};
    const CenterTuple centers{{1.0, 0.0}, {9.0, 0.0}};
    const auto a = assign_group(g, centers, WeightKind::squared_distance);
    CHECK(a == std::vector<int>{0, 1});
    double cost = squared_distance(g.points[0], centers[0]) +
                  squared_distance(g.points[1], centers[1]);
    CHECK(cost == doctest::Approx(2.0));

    ColorGroup single{1, {{5.0, 5.0}}};
    CHECK(assign_group(single, {{0.0, 0.0}, {5.0, 5.0}}, WeightKind::squared_distance) ==
          std::vector<int>{1});
}

TEST_CASE("assign_group matches the k! brute force") {
    Rng rng = make_rng(31);
    AssignmentScratch scratch;
    for (int trial = 0; trial < 200; ++trial) {
        const int k = std::uniform_int_distribution<int>(2, 6)(rng);
        const int ki = std::uniform_int_distribution<int>(1, k)(rng);
        const int d = std::uniform_int_distribution<int>(1, 4)(rng);
        const ColorGroup g = random_group(rng, 0, ki, d);
        CenterTuple centers;
        for (int c = 0; c < k; ++c)
            centers.push_back(random_group(rng, 0, 1, d).points.front());
        const WeightKind kind =
            trial % 2 ? WeightKind::squared_distance : WeightKind::distance;

        const double oracle = brute_force_group_cost(g, centers, kind);
        const double fast = scratch.group_cost(g, centers, kind);
        CHECK(fast == doctest::Approx(oracle).epsilon(1e-9));

        const auto assignment = assign_group(g, centers, kind);
        // Valid injective assignment with the optimal cost.
        std::vector<char> used(static_cast<std::size_t>(k), 0);
        double cost = 0.0;
        for (std::size_t i = 0; i < g.points.size(); ++i) {
            REQUIRE(assignment[i] >= 0);
            REQUIRE(assignment[i] < k);
            CHECK_FALSE(used[static_cast<std::size_t>(assignment[i])]);
            used[static_cast<std::size_t>(assignment[i])] = 1;
            const double sq =
                squared_distance(g.points[i], centers[static_cast<std::size_t>(assignment[i])]);
            cost += kind == WeightKind::squared_distance ? sq : std::sqrt(sq);
        }
        CHECK(cost == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("assign_group breaks ties lexicographically") {
    // Two equidistant centers: both assignments cost the same, the smaller
    // index must win.
    ColorGroup g{0, {{0.0, 0.0}}};
    const CenterTuple centers{{1.0, 0.0}, {-1.0, 0.0}};
    CHECK(assign_group(g, centers, WeightKind::squared_distance) == std::vector<int>{0});

    // Symmetric 2-point, 2-center case with equal total either way.
    ColorGroup pair{0, {{0.0, 0.0}, {2.0, 0.0}}};
    const CenterTuple mid{{1.0, 0.0}, {1.0, 0.0}};
    CHECK(assign_group(pair, mid, WeightKind::squared_distance) == std::vector<int>{0, 1});
}

TEST_CASE("assign_all assembles a valid partition with the summed objective") {
    Instance inst;
    inst.k = 2;
    inst.d = 2;
    inst.groups = {ColorGroup{0, {{0.0, 0.0}, {10.0, 0.0}}},
                   ColorGroup{1, {{10.0, 1.0}, {0.0, 1.0}}}};
    const CenterTuple centers{{1.0, 0.0}, {9.0, 0.0}};
    const auto [part, objective] = assign_all(inst, centers, WeightKind::squared_distance);
    CHECK(is_valid_partition(inst, part));
    CHECK(objective == doctest::Approx(means_objective(inst, centers, part)).epsilon(1e-12));
    // Hand sum: group 0 costs 1+1, group 1 costs 2+2, divided by n = 2.
    CHECK(objective == doctest::Approx(3.0));

    // Centers placed exactly on all points of a full instance: objective 0.
    Instance exact;
    exact.k = 2;
    exact.d = 1;
    exact.groups = {ColorGroup{0, {{1.0}, {7.0}}}, ColorGroup{1, {{1.0}, {7.0}}}};
    const auto [p2, obj2] = assign_all(exact, {{1.0}, {7.0}}, WeightKind::squared_distance);
    CHECK(obj2 == doctest::Approx(0.0));
    CHECK(is_valid_partition(exact, p2));
}

TEST_CASE("adding an unused center never increases the objective") {
    Rng rng = make_rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = std::uniform_int_distribution<int>(2, 5)(rng);
        Instance inst;
        inst.k = k;
        inst.d = 3;
        const int n = std::uniform_int_distribution<int>(1, 5)(rng);
        for (int g = 0; g < n; ++g)
            inst.groups.push_back(
                random_group(rng, g, std::uniform_int_distribution<int>(1, k)(rng), 3));
        CenterTuple centers;
        for (int c = 0; c < k; ++c) centers.push_back(random_group(rng, 0, 1, 3).points.front());

        const double before = assignment_cost(inst, centers, WeightKind::squared_distance);

        Instance wider = inst;
        wider.k = k + 1;
        CenterTuple extended = centers;
        extended.push_back(random_group(rng, 0, 1, 3).points.front());
        const double after = assignment_cost(wider, extended, WeightKind::squared_distance);
        CHECK(after <= before + 1e-9);
    }
}

TEST_CASE("assign_group rejects dimension mismatches") {
    ColorGroup g{0, {{0.0, 0.0}}};
    CHECK_THROWS_AS(assign_group(g, {{1.0}, {2.0}}, WeightKind::distance),
                    DimensionMismatchError);
}
