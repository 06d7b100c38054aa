#include "doctest.h"

#include "chromaclust/baseline.hpp"
#include "chromaclust/constant_approx.hpp"
#include "chromaclust/matching.hpp"
#include "chromaclust/oracle.hpp"
#include "chromaclust/rng.hpp"

using namespace chromaclust;

namespace {

Instance rectangle_instance() {
    Instance inst;
    inst.k = 2;
    inst.d = 2;
    inst.groups = {ColorGroup{0, {{0.0, 0.0}, {10.0, 0.0}}},
                   ColorGroup{1, {{0.0, 1.0}, {10.0, 1.0}}}};
    return inst;
}

Instance random_tiny(Rng& rng, int n, int k, int d) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    Instance inst;
    inst.k = k;
    inst.d = d;
    for (int g = 0; g < n; ++g) {
        const int ki = std::uniform_int_distribution<int>(1, k)(rng);
        ColorGroup group{g, {}};
        for (int i = 0; i < ki; ++i) {
            Point p(static_cast<std::size_t>(d));
            for (double& x : p) x = u(rng);
            group.points.push_back(std::move(p));
        }
        inst.groups.push_back(std::move(group));
    }
    return inst;
}

}  // namespace

TEST_CASE("constant_kcmeans finds the natural tuple on the rectangle") {
    const Instance inst = rectangle_instance();
    const auto base = kmeans_baseline(flatten(inst), 2, 9, 10);
    const auto rep = constant_kcmeans(inst, base);
    CHECK(rep.objective == doctest::Approx(0.5));
    CHECK(is_valid_partition(inst, rep.partition));
    CHECK(rep.objective ==
          doctest::Approx(means_objective(inst, rep.centers, rep.partition)).epsilon(1e-12));
}

TEST_CASE("constant_kcmedians on the rectangle") {
    const Instance inst = rectangle_instance();
    const auto base = kmedians_baseline(flatten(inst), 2, 9, 10);
    const auto rep = constant_kcmedians(inst, base);
    CHECK(rep.objective == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("identical baseline centers degenerate gracefully") {
    const Instance inst = rectangle_instance();
    BaselineResult base;
    base.centers = {{5.0, 0.5}, {5.0, 0.5}};
    const auto rep = constant_kcmeans(inst, base);
    const auto single = assign_all(inst, base.centers, WeightKind::squared_distance);
    CHECK(rep.objective == doctest::Approx(single.second));
}

TEST_CASE("tuple enumeration meets its bound with the measured baseline factor") {
    Rng rng = make_rng(4242);
    for (int trial = 0; trial < 15; ++trial) {
        const int k = std::uniform_int_distribution<int>(2, 3)(rng);
        const int n = std::uniform_int_distribution<int>(2, 4)(rng);
        const Instance inst = random_tiny(rng, n, k, 2);
        const auto pts = flatten(inst);
        if (static_cast<int>(pts.size()) < k) continue;

        const auto base = kmeans_baseline(pts, k, derive_seed(1, "t", trial), 10);
        const auto unc = exact_unconstrained(pts, k, Objective::means);
        const auto chrom = exact_chromatic(inst, Objective::means);
        const auto rep = constant_kcmeans(inst, base);

        const double c_hat = unc.objective > 1e-12 ? base.objective / unc.objective : 1.0;
        const double bound = (2.0 * c_hat * k * k + 2.0 * k - 1.0) * chrom.objective;
        CHECK(rep.objective <= bound + 1e-9);
        CHECK(rep.objective >= chrom.objective - 1e-9);
    }
}

TEST_CASE("returned objective is the minimum over sampled tuples") {
    Rng rng = make_rng(515);
    const Instance inst = random_tiny(rng, 3, 3, 2);
    const auto base = kmeans_baseline(flatten(inst), 3, 77, 5);
    const auto rep = constant_kcmeans(inst, base);
    // Re-evaluate 10 random tuples; none may beat the reported minimum.
    std::uniform_int_distribution<int> pick(0, 2);
    for (int t = 0; t < 10; ++t) {
        CenterTuple tuple;
        for (int slot = 0; slot < 3; ++slot)
            tuple.push_back(base.centers[static_cast<std::size_t>(pick(rng))]);
        CHECK(assignment_cost(inst, tuple, WeightKind::squared_distance) >=
              rep.objective - 1e-12);
    }
}

TEST_CASE("k > 8 refused without the override") {
    Instance inst;
    inst.k = 9;
    inst.d = 1;
    ColorGroup g{0, {}};
    for (int i = 0; i < 9; ++i) g.points.push_back({static_cast<double>(i)});
    inst.groups = {g};
    BaselineResult base;
    for (int i = 0; i < 9; ++i) base.centers.push_back({static_cast<double>(i)});
    CHECK_THROWS_AS(constant_kcmeans(inst, base), BadSpecError);
}
