#pragma once

#include <utility>
#include <vector>

#include "chromaclust/geometry.hpp"

namespace chromaclust {

struct SimplexGridParams {
    double epsilon = 0.5;               // in (0, 1]
    long long max_points = 2'000'000;   // hard cap on emitted grid points
    // Keep only points inside the simplex hull (requires affinely
    // independent vertices); the covering argument is stated for the whole
    // ball, so this is off by default.
    bool filter_to_simplex = false;
};

// Lattice of candidate approximate means inside the ball centered at
// vertices[0] with radius r = max_l ||v_l - v_0||, spacing eps*r/(4j) along
// an orthonormal basis (Gram-Schmidt, rank tolerance 1e-10) of the vertices'
// affine span. j = 1 or zero radius yields exactly {v_0}. Grid size is
// bounded by 1.5 * (8j/eps)^j; GridTooLarge when max_points would be
// exceeded.
std::vector<Point> simplex_grid(const std::vector<Point>& vertices,
                                const SimplexGridParams& params);

// Verification harness: builds the grid on the exact part means of the
// partition and returns (min distance from grid to mean(P), sqrt(eps)*delta)
// with delta^2 = variance0(P). The first must not exceed the second.
std::pair<double, double> grid_covers_mean_check(const std::vector<std::vector<Point>>& parts,
                                                 double epsilon,
                                                 const SimplexGridParams& params = {});

// Perturbed-vertex variant: the grid is built on `perturbed_vertices`
// (each within distance L of the corresponding part mean) and the bound is
// sqrt(eps)*delta + (1+eps)*L.
std::pair<double, double> grid_covers_mean_check_perturbed(
    const std::vector<std::vector<Point>>& parts, double epsilon,
    const std::vector<Point>& perturbed_vertices, double L,
    const SimplexGridParams& params = {});

}  // namespace chromaclust
