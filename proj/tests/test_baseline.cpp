#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "chromaclust/baseline.hpp"
#include "chromaclust/oracle.hpp"
#include "chromaclust/rng.hpp"

using namespace chromaclust;

namespace {

const std::vector<Point> kRectangle{{0.0, 0.0}, {0.0, 1.0}, {10.0, 0.0}, {10.0, 1.0}};

std::vector<Point> random_points(Rng& rng, int n, int d) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<Point> pts(static_cast<std::size_t>(n), Point(static_cast<std::size_t>(d)));
    for (auto& p : pts)
        for (double& x : p) x = u(rng);
    return pts;
}

bool consistent(const BaselineResult& r, const std::vector<Point>& pts, bool squared) {
    double total = 0.0;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < r.clusters.size(); ++c) {
        for (int i : r.clusters[c]) {
            const double sq = squared_distance(pts[static_cast<std::size_t>(i)], r.centers[c]);
            total += squared ? sq : std::sqrt(sq);
            ++assigned;
        }
    }
    return assigned == pts.size() && std::abs(total - r.objective) <= 1e-9 * (1.0 + total);
}

}  // namespace

TEST_CASE("kmeans_baseline solves the separated rectangle") {
    const auto r = kmeans_baseline(kRectangle, 2, 123, 10);
    CHECK(r.objective == doctest::Approx(1.0));
    CHECK(consistent(r, kRectangle, true));
    // Centers are the two side midpoints, in some order.
    std::vector<Point> centers = r.centers;
    std::sort(centers.begin(), centers.end());
    CHECK(centers[0][0] == doctest::Approx(0.0));
    CHECK(centers[0][1] == doctest::Approx(0.5));
    CHECK(centers[1][0] == doctest::Approx(10.0));
    CHECK(centers[1][1] == doctest::Approx(0.5));
}

TEST_CASE("kmeans_baseline with k = |points| reaches zero") {
    const auto r = kmeans_baseline(kRectangle, 4, 5, 10);
    CHECK(r.objective == doctest::Approx(0.0));
    CHECK(consistent(r, kRectangle, true));
}

TEST_CASE("kmeans_baseline never beats the exhaustive optimum") {
    Rng rng = make_rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pts = random_points(rng, 12, 2);
        const auto lloyd = kmeans_baseline(pts, 2, derive_seed(1000, "t", trial), 10);
        const auto opt = exact_unconstrained(pts, 2, Objective::means);
        CHECK(lloyd.objective >= opt.objective - 1e-9);
        // With 10 restarts on 12 points the measured ratio stays modest.
        CHECK(lloyd.objective <= 5.0 * opt.objective + 1e-9);
    }
}

TEST_CASE("kmeans_baseline objective trace is monotone non-increasing") {
    Rng rng = make_rng(18);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = random_points(rng, 30, 3);
        const auto r = kmeans_baseline(pts, 3, derive_seed(2000, "t", trial), 3);
        REQUIRE(!r.objective_trace.empty());
        for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
            CHECK(r.objective_trace[i] <= r.objective_trace[i - 1] + 1e-9);
        CHECK(r.objective == doctest::Approx(r.objective_trace.back()));
    }
}

TEST_CASE("kmeans centers are the means of their clusters") {
    Rng rng = make_rng(19);
    const auto pts = random_points(rng, 25, 2);
    const auto r = kmeans_baseline(pts, 3, 42, 5);
    for (std::size_t c = 0; c < r.clusters.size(); ++c) {
        if (r.clusters[c].empty()) continue;
        std::vector<Point> members;
        for (int i : r.clusters[c]) members.push_back(pts[static_cast<std::size_t>(i)]);
        const Point m = mean(members);
        CHECK(distance(m, r.centers[c]) <= 1e-9);
    }
}

TEST_CASE("kmedians_baseline on the rectangle") {
    const auto r = kmedians_baseline(kRectangle, 2, 7, 10);
    CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(consistent(r, kRectangle, false));
}

TEST_CASE("kmedians_baseline with k = |points| reaches zero") {
    const auto r = kmedians_baseline(kRectangle, 4, 3, 10);
    CHECK(r.objective == doctest::Approx(0.0));
}

TEST_CASE("kmedians_baseline never beats the exhaustive optimum") {
    Rng rng = make_rng(20);
    for (int trial = 0; trial < 5; ++trial) {
        const auto pts = random_points(rng, 10, 2);
        const auto alt = kmedians_baseline(pts, 2, derive_seed(3000, "t", trial), 10);
        const auto opt = exact_unconstrained(pts, 2, Objective::medians);
        CHECK(alt.objective >= opt.objective - 1e-6 * (1.0 + opt.objective));
    }
}

TEST_CASE("kmedians trace is monotone non-increasing") {
    Rng rng = make_rng(21);
    const auto pts = random_points(rng, 20, 2);
    const auto r = kmedians_baseline(pts, 3, 11, 3);
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
        CHECK(r.objective_trace[i] <= r.objective_trace[i - 1] + 1e-9);
}

TEST_CASE("baseline rejects too few points") {
    CHECK_THROWS_AS(kmeans_baseline({{0.0}}, 2, 1, 1), TooFewPointsError);
    CHECK_THROWS_AS(kmedians_baseline({{0.0}}, 2, 1, 1), TooFewPointsError);
}
