#pragma once

#include "chromaclust/baseline.hpp"
#include "chromaclust/geometry.hpp"

namespace chromaclust {

// Ground truth for tiny instances: enumerates every chromatic assignment
// (per group, every injective map of its points into [0, k), groups in id
// order, maps in lexicographic order). Centers are cluster means (means) or
// Weiszfeld-converged medians (medians, tolerance `tol`). Throws TooLarge
// when the total assignment count exceeds 1e6.
SolveReport exact_chromatic(const Instance& inst, Objective kind, double tol = 1e-9);

// Exhaustive unconstrained optimum over all k^|points| labelings; bound 1e6.
BaselineResult exact_unconstrained(const std::vector<Point>& points, int k, Objective kind,
                                   double tol = 1e-9);

// Number of chromatic assignments, +inf-safe (used for the TooLarge bound).
double chromatic_assignment_count(const Instance& inst);

}  // namespace chromaclust
