#include "chromaclust/constant_approx.hpp"

#include <limits>
#include <string>

#include "chromaclust/matching.hpp"

namespace chromaclust {

namespace {

SolveReport best_tuple(const Instance& inst, const BaselineResult& baseline, Objective kind,
                       bool allow_large_k) {
    inst.validate();
    const int k = inst.k;
    if (static_cast<int>(baseline.centers.size()) != k)
        throw DimensionMismatchError("baseline has " + std::to_string(baseline.centers.size()) +
                                     " centers, instance needs " + std::to_string(k));
    if (k > 8 && !allow_large_k)
        throw BadSpecError("constant approximation enumerates k^k tuples; k=" +
                           std::to_string(k) + " > 8 requires the override");

    const WeightKind w = weight_kind(kind);
    AssignmentScratch scratch;

    long long tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= k;

    // Mixed-radix enumeration; strict improvement keeps the smallest index
    // on ties.
    std::vector<int> digits(static_cast<std::size_t>(k), 0);
    CenterTuple tuple(static_cast<std::size_t>(k));
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_digits;
    for (long long t = 0; t < tuples; ++t) {
        for (int slot = 0; slot < k; ++slot)
            tuple[static_cast<std::size_t>(slot)] =
                baseline.centers[static_cast<std::size_t>(digits[static_cast<std::size_t>(slot)])];
        const double obj = scratch.cost(inst, tuple, w);
        if (obj < best) {
            best = obj;
            best_digits = digits;
        }
        for (int slot = k - 1; slot >= 0; --slot) {
            if (++digits[static_cast<std::size_t>(slot)] < k) break;
            digits[static_cast<std::size_t>(slot)] = 0;
        }
    }

    CenterTuple chosen(static_cast<std::size_t>(k));
    for (int slot = 0; slot < k; ++slot)
        chosen[static_cast<std::size_t>(slot)] =
            baseline.centers[static_cast<std::size_t>(best_digits[static_cast<std::size_t>(slot)])];

    SolveReport report;
    auto [partition, objective] = assign_all(inst, chosen, w);
    report.centers = std::move(chosen);
    report.partition = std::move(partition);
    report.objective = objective;
    report.kind = kind;
    report.algorithm = kind == Objective::means ? "constant-means" : "constant-medians";
    return report;
}

}  // namespace

SolveReport constant_kcmeans(const Instance& inst, const BaselineResult& baseline,
                             bool allow_large_k) {
    return best_tuple(inst, baseline, Objective::means, allow_large_k);
}

SolveReport constant_kcmedians(const Instance& inst, const BaselineResult& baseline,
                               bool allow_large_k) {
    return best_tuple(inst, baseline, Objective::medians, allow_large_k);
}

}  // namespace chromaclust
