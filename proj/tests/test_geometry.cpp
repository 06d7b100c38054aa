#include "doctest.h"

#include <cmath>
#include <random>

#include "chromaclust/geometry.hpp"
#include "chromaclust/rng.hpp"

using namespace chromaclust;

namespace {

// The two-group instance used across the suite: left pair near x=0, right
// pair near x=10.
Instance rectangle_instance() {
    Instance inst;
    inst.k = 2;
    inst.d = 2;
    inst.groups = {ColorGroup{0, {{0.0, 0.0}, {10.0, 0.0}}},
                   ColorGroup{1, {{0.0, 1.0}, {10.0, 1.0}}}};
    return inst;
}

std::vector<Point> random_points(Rng& rng, int n, int d, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<Point> pts(static_cast<std::size_t>(n), Point(static_cast<std::size_t>(d)));
    for (auto& p : pts)
        for (double& x : p) x = u(rng);
    return pts;
}

}  // namespace

TEST_CASE("mean: coordinate averages and errors") {
    CHECK(mean({{0.0, 0.0}, {2.0, 0.0}, {4.0, 0.0}}) == Point{2.0, 0.0});
    CHECK(mean({{1.0, 1.0}}) == Point{1.0, 1.0});
    CHECK_THROWS_AS(mean({}), EmptySetError);

    // Against a naive summation oracle on random data.
    Rng rng = make_rng(42);
    const auto pts = random_points(rng, 100, 5);
    const Point m = mean(pts);
    for (int c = 0; c < 5; ++c) {
        double s = 0.0;
        for (const auto& p : pts) s += p[static_cast<std::size_t>(c)];
        CHECK(m[static_cast<std::size_t>(c)] ==
              doctest::Approx(s / 100.0).epsilon(1e-12));
    }
}

TEST_CASE("variance0: mean squared distance to the mean") {
    CHECK(variance0({{0.0, 0.0}, {2.0, 0.0}}) == doctest::Approx(1.0));
    CHECK(variance0({{5.0, 5.0}}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(variance0({}), EmptySetError);

    Rng rng = make_rng(7);
    const auto pts = random_points(rng, 60, 4);
    const Point m = mean(pts);
    double s = 0.0;
    for (const auto& p : pts) s += squared_distance(p, m);
    CHECK(variance0(pts) == doctest::Approx(s / 60.0).epsilon(1e-12));
}

TEST_CASE("geometric_median: collinear, singleton, grid oracle") {
    const Point med = geometric_median({{0.0, 0.0}, {1.0, 0.0}, {10.0, 0.0}}, 1e-9);
    CHECK(med[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(med[1] == doctest::Approx(0.0).epsilon(1e-5));

    CHECK(geometric_median({{3.0, 3.0}}, 1e-6) == Point{3.0, 3.0});
    CHECK_THROWS_AS(geometric_median({}, 1e-6), EmptySetError);

    // 2-D grid search oracle at resolution 1e-3.
    const std::vector<Point> tri{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    const double tol = 1e-6;
    const Point ours = geometric_median(tri, tol);
    double grid_best = std::numeric_limits<double>::infinity();
    for (double x = -0.2; x <= 1.2; x += 1e-3)
        for (double y = -0.2; y <= 1.2; y += 1e-3)
            grid_best = std::min(grid_best, summed_distance(tri, Point{x, y}));
    CHECK(summed_distance(tri, ours) <= (1.0 + tol) * grid_best);
}

TEST_CASE("geometric_median never beats the mean by losing") {
    Rng rng = make_rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 40)(rng);
        const int d = std::uniform_int_distribution<int>(1, 8)(rng);
        const auto pts = random_points(rng, n, d, -3.0, 3.0);
        const Point med = geometric_median(pts, 1e-7);
        CHECK(summed_distance(pts, med) <= summed_distance(pts, mean(pts)) + 1e-9);
    }
}

TEST_CASE("objectives on the rectangle instance") {
    const Instance inst = rectangle_instance();
    const CenterTuple centers{{0.0, 0.5}, {10.0, 0.5}};
    ChromaticPartition part;
    part.labels = {{0, 1}, {0, 1}};
    CHECK(means_objective(inst, centers, part) == doctest::Approx(0.5));
    CHECK(medians_objective(inst, centers, part) == doctest::Approx(1.0));
}

TEST_CASE("objective is zero when centers sit on the points") {
    Instance inst;
    inst.k = 2;
    inst.d = 1;
    inst.groups = {ColorGroup{0, {{1.0}, {5.0}}}};
    ChromaticPartition part;
    part.labels = {{0, 1}};
    CHECK(means_objective(inst, {{1.0}, {5.0}}, part) == doctest::Approx(0.0));
    CHECK(medians_objective(inst, {{1.0}, {5.0}}, part) == doctest::Approx(0.0));
}

TEST_CASE("objectives match an independent re-summation oracle") {
    Rng rng = make_rng(2024);
    Instance inst;
    inst.k = 3;
    inst.d = 4;
    for (int g = 0; g < 5; ++g) {
        const int ki = std::uniform_int_distribution<int>(1, 3)(rng);
        ColorGroup group{g, random_points(rng, ki, 4, -2.0, 2.0)};
        inst.groups.push_back(group);
    }
    const CenterTuple centers = random_points(rng, 3, 4, -2.0, 2.0);
    ChromaticPartition part;
    for (const auto& g : inst.groups) {
        std::vector<int> slots{0, 1, 2};
        std::shuffle(slots.begin(), slots.end(), rng);
        part.labels.push_back(
            std::vector<int>(slots.begin(), slots.begin() + static_cast<long>(g.points.size())));
    }
    double sq = 0.0, lin = 0.0;
    for (std::size_t g = 0; g < inst.groups.size(); ++g)
        for (std::size_t i = 0; i < inst.groups[g].points.size(); ++i) {
            const auto& p = inst.groups[g].points[i];
            const auto& c = centers[static_cast<std::size_t>(part.labels[g][i])];
            sq += squared_distance(p, c);
            lin += distance(p, c);
        }
    CHECK(means_objective(inst, centers, part) == doctest::Approx(sq / 5.0).epsilon(1e-12));
    CHECK(medians_objective(inst, centers, part) == doctest::Approx(lin / 5.0).epsilon(1e-12));
}

TEST_CASE("objectives are invariant under consistent relabeling") {
    const Instance inst = rectangle_instance();
    const CenterTuple centers{{0.0, 0.5}, {10.0, 0.5}};
    ChromaticPartition part;
    part.labels = {{0, 1}, {0, 1}};
    const CenterTuple swapped{centers[1], centers[0]};
    ChromaticPartition swapped_part;
    swapped_part.labels = {{1, 0}, {1, 0}};
    CHECK(means_objective(inst, centers, part) ==
          doctest::Approx(means_objective(inst, swapped, swapped_part)));
}

TEST_CASE("partition validity enforces the chromatic constraint") {
    const Instance inst = rectangle_instance();
    ChromaticPartition bad;
    bad.labels = {{0, 0}, {0, 1}};  // two points of group 0 share a cluster
    CHECK_FALSE(is_valid_partition(inst, bad));
    CHECK_THROWS_AS(means_objective(inst, {{0.0, 0.5}, {10.0, 0.5}}, bad), BadSpecError);
}

TEST_CASE("mean-shift identity holds to 1e-9 relative") {
    // Hand case: P = {(0,0),(2,0)}, m' = origin.
    const std::vector<Point> p{{0.0, 0.0}, {2.0, 0.0}};
    const Point m = mean(p);
    double lhs = 0.0;
    for (const auto& q : p) lhs += squared_distance(q, Point{0.0, 0.0});
    double within = 0.0;
    for (const auto& q : p) within += squared_distance(q, m);
    CHECK(lhs == doctest::Approx(within + 2.0 * squared_distance(m, {0.0, 0.0})));

    Rng rng = make_rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 60)(rng);
        const int d = std::uniform_int_distribution<int>(1, 20)(rng);
        const auto pts = random_points(rng, n, d, -4.0, 4.0);
        const auto shift = random_points(rng, 1, d, -4.0, 4.0).front();
        const Point mm = mean(pts);
        double l = 0.0, w = 0.0;
        for (const auto& q : pts) {
            l += squared_distance(q, shift);
            w += squared_distance(q, mm);
        }
        const double r = w + n * squared_distance(mm, shift);
        CHECK(std::abs(l - r) <= 1e-9 * std::max(l, 1.0));
    }
}

TEST_CASE("subset-mean bound holds with slack >= -1e-9") {
    // Tight two-point case: P = {0, 2} on a line, P1 = {0}.
    const std::vector<Point> p{{0.0}, {2.0}};
    const double delta = std::sqrt(variance0(p));
    CHECK(distance(mean({p[0]}), mean(p)) <= std::sqrt((1.0 - 0.5) / 0.5) * delta + 1e-9);

    Rng rng = make_rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(2, 50)(rng);
        const int d = std::uniform_int_distribution<int>(1, 10)(rng);
        auto pts = random_points(rng, n, d, -4.0, 4.0);
        const int m = std::uniform_int_distribution<int>(1, n)(rng);
        std::shuffle(pts.begin(), pts.end(), rng);
        const std::vector<Point> sub(pts.begin(), pts.begin() + m);
        const double alpha = static_cast<double>(m) / n;
        const double bound = std::sqrt((1.0 - alpha) / alpha) * std::sqrt(variance0(pts));
        CHECK(distance(mean(sub), mean(pts)) <= bound + 1e-9);
    }
}

TEST_CASE("median stability: approximate median vs subset median") {
    Rng rng = make_rng(8);
    const double eps = 1e-6;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = std::uniform_int_distribution<int>(2, 40)(rng);
        const int d = std::uniform_int_distribution<int>(1, 6)(rng);
        auto pts = random_points(rng, n, d, -4.0, 4.0);
        const int sub_n = std::uniform_int_distribution<int>(1, n)(rng);
        std::shuffle(pts.begin(), pts.end(), rng);
        const std::vector<Point> sub(pts.begin(), pts.begin() + sub_n);

        const Point m = geometric_median(pts, eps);       // the (1+eps)-approximate median
        const Point m1 = geometric_median(sub, 1e-9);     // converged subset median
        const double alpha = static_cast<double>(sub_n) / n;
        const double mu = summed_distance(pts, m) / n;    // converged point as proxy optimum
        const double bound = ((2.0 + eps) / alpha) * mu;
        CHECK(distance(m1, m) <= bound + 1e-3 * std::max(bound, 1.0));
    }
}

TEST_CASE("instance validation catches structural problems") {
    Instance inst = rectangle_instance();
    inst.validate();
    CHECK(inst.full());
    CHECK(inst.total_points() == 4);

    Instance bad = rectangle_instance();
    bad.groups[0].points.push_back({1.0, 1.0});
    bad.groups[0].points.push_back({2.0, 2.0});  // 4 points > k = 2
    CHECK_THROWS_AS(bad.validate(), BadSpecError);

    Instance dup = rectangle_instance();
    dup.groups[1].id = 0;
    CHECK_THROWS_AS(dup.validate(), BadSpecError);

    Instance wrong_d = rectangle_instance();
    wrong_d.groups[0].points[0] = {1.0};
    CHECK_THROWS_AS(wrong_d.validate(), DimensionMismatchError);
}
