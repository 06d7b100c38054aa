#pragma once

#include "chromaclust/baseline.hpp"
#include "chromaclust/geometry.hpp"

namespace chromaclust {

// Lifts an unconstrained baseline into a constant-factor chromatic solution:
// enumerates all k^k tuples of the baseline's centers (mixed-radix order),
// scores each with the optimal chromatic assignment, and returns the best.
// With a c-approximate baseline the result is a (2ck^2 + 2k - 1)-
// approximation for means, and ((2+eps)ck^2 + (2+eps)k + 1) for medians
// where eps is the baseline's median tolerance.
//
// Refuses k > 8 (8^8 tuples) unless allow_large_k is set.
SolveReport constant_kcmeans(const Instance& inst, const BaselineResult& baseline,
                             bool allow_large_k = false);

SolveReport constant_kcmedians(const Instance& inst, const BaselineResult& baseline,
                               bool allow_large_k = false);

}  // namespace chromaclust
