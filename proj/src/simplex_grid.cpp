#include "chromaclust/simplex_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace chromaclust {

namespace {

void check_params(const SimplexGridParams& p) {
    if (!(p.epsilon > 0.0 && p.epsilon <= 1.0))
        throw BadSpecError("simplex_grid: epsilon must be in (0, 1]");
    if (p.max_points < 1) throw BadSpecError("simplex_grid: max_points must be >= 1");
}

// Orthonormal basis of span{v_l - v_0} by Gram-Schmidt in index order.
std::vector<Point> span_basis(const std::vector<Point>& vertices, double r) {
    const std::size_t d = vertices.front().size();
    std::vector<Point> basis;
    for (std::size_t l = 1; l < vertices.size(); ++l) {
        Point w(d);
        for (std::size_t c = 0; c < d; ++c) w[c] = vertices[l][c] - vertices[0][c];
        for (const Point& b : basis) {
            const double proj = kernels::dot(w.data(), b.data(), d);
            kernels::axpy(w.data(), -proj, b.data(), d);
        }
        const double norm = std::sqrt(kernels::dot(w.data(), w.data(), d));
        if (norm > 1e-10 * r) {
            for (double& x : w) x /= norm;
            basis.push_back(std::move(w));
        }
    }
    return basis;
}

// Barycentric weights of q (given in span coordinates) w.r.t. the vertex
// span coordinates; only called when the vertices are affinely independent.
bool inside_simplex(const std::vector<std::vector<double>>& vertex_coords,
                    const std::vector<double>& q) {
    const std::size_t s = q.size();  // = #vertices - 1 here
    // Solve sum_{l>=1} w_l * (vc[l] - vc[0]) = q - vc[0], w_l >= 0, sum <= 1.
    std::vector<std::vector<double>> a(s, std::vector<double>(s + 1, 0.0));
    for (std::size_t row = 0; row < s; ++row) {
        for (std::size_t l = 0; l < s; ++l)
            a[row][l] = vertex_coords[l + 1][row] - vertex_coords[0][row];
        a[row][s] = q[row] - vertex_coords[0][row];
    }
    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < s; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < s; ++row)
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
        if (std::abs(a[piv][col]) < 1e-14) return false;
        std::swap(a[col], a[piv]);
        for (std::size_t row = 0; row < s; ++row) {
            if (row == col) continue;
            const double f = a[row][col] / a[col][col];
            for (std::size_t c = col; c <= s; ++c) a[row][c] -= f * a[col][c];
        }
    }
    double wsum = 0.0;
    constexpr double slack = 1e-9;
    for (std::size_t l = 0; l < s; ++l) {
        const double w = a[l][s] / a[l][l];
        if (w < -slack) return false;
        wsum += w;
    }
    return wsum <= 1.0 + slack;
}

struct LatticeEnum {
    LatticeEnum(const std::vector<Point>& basis_, const Point& anchor_, double h_,
                double r_enum_sq_, long long cap_, bool filter_,
                const std::vector<std::vector<double>>* vertex_coords_)
        : basis(basis_),
          anchor(anchor_),
          h(h_),
          r_enum_sq(r_enum_sq_),
          cap(cap_),
          filter(filter_),
          vertex_coords(vertex_coords_) {}

    const std::vector<Point>& basis;
    const Point& anchor;
    double h;
    double r_enum_sq;
    long long cap;
    bool filter;
    const std::vector<std::vector<double>>* vertex_coords;
    std::vector<Point> out;
    std::vector<double> coords;  // span coordinates of the current prefix

    void run() {
        coords.assign(basis.size(), 0.0);
        recurse(0, 0.0);
    }

    void recurse(std::size_t axis, double sumsq) {
        if (axis == basis.size()) {
            emit();
            return;
        }
        const double remaining = r_enum_sq - sumsq;
        const long long zmax = static_cast<long long>(std::floor(std::sqrt(remaining) / h));
        for (long long z = -zmax; z <= zmax; ++z) {
            const double x = static_cast<double>(z) * h;
            if (x * x > remaining) continue;
            coords[axis] = x;
            recurse(axis + 1, sumsq + x * x);
        }
    }

    void emit() {
        if (filter && vertex_coords && !inside_simplex(*vertex_coords, coords)) return;
        if (static_cast<long long>(out.size()) >= cap)
            throw GridTooLargeError("simplex_grid: lattice exceeds max_points=" +
                                    std::to_string(cap));
        Point p = anchor;
        for (std::size_t b = 0; b < basis.size(); ++b)
            kernels::axpy(p.data(), coords[b], basis[b].data(), p.size());
        out.push_back(std::move(p));
    }
};

}  // namespace

std::vector<Point> simplex_grid(const std::vector<Point>& vertices,
                                const SimplexGridParams& params) {
    check_params(params);
    if (vertices.empty()) throw EmptySetError("simplex_grid: no vertices");
    const std::size_t d = vertices.front().size();
    for (const Point& v : vertices)
        if (v.size() != d) throw DimensionMismatchError("simplex_grid: mixed vertex dimensions");

    const std::size_t j = vertices.size();
    if (j == 1) return {vertices.front()};

    double r = 0.0;
    for (std::size_t l = 1; l < j; ++l) r = std::max(r, distance(vertices[l], vertices[0]));
    if (r == 0.0) return {vertices.front()};  // all vertices coincide

    const std::vector<Point> basis = span_basis(vertices, r);
    if (basis.empty()) return {vertices.front()};

    const double h = params.epsilon * r / (4.0 * static_cast<double>(j));
    // Inflate the enumeration radius by half the lattice covering radius so
    // every point of the ball has its nearest lattice point included.
    const double r_enum =
        r * (1.0 + 1e-12) + 0.5 * h * std::sqrt(static_cast<double>(basis.size()));

    std::vector<std::vector<double>> vertex_coords;
    bool filter = params.filter_to_simplex;
    if (filter) {
        if (basis.size() != j - 1) {
            filter = false;  // affinely dependent vertices: keep the whole ball
        } else {
            vertex_coords.resize(j, std::vector<double>(basis.size()));
            for (std::size_t l = 0; l < j; ++l) {
                Point diff(d);
                for (std::size_t c = 0; c < d; ++c) diff[c] = vertices[l][c] - vertices[0][c];
                for (std::size_t b = 0; b < basis.size(); ++b)
                    vertex_coords[l][b] = kernels::dot(diff.data(), basis[b].data(), d);
            }
        }
    }

    LatticeEnum e(basis, vertices.front(), h, r_enum * r_enum, params.max_points, filter,
                  filter ? &vertex_coords : nullptr);
    e.run();
    return std::move(e.out);
}

namespace {

std::vector<Point> gather(const std::vector<std::vector<Point>>& parts) {
    std::vector<Point> all;
    for (const auto& part : parts) {
        if (part.empty()) throw EmptySetError("grid_covers_mean_check: empty part");
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

double min_grid_distance(const std::vector<Point>& grid, const Point& target) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& g : grid) best = std::min(best, distance(g, target));
    return best;
}

}  // namespace

std::pair<double, double> grid_covers_mean_check(const std::vector<std::vector<Point>>& parts,
                                                 double epsilon,
                                                 const SimplexGridParams& params) {
    const std::vector<Point> all = gather(parts);
    const Point o = mean(all);
    const double delta = std::sqrt(variance0(all));

    std::vector<Point> vertices;
    vertices.reserve(parts.size());
    for (const auto& part : parts) vertices.push_back(mean(part));

    SimplexGridParams p = params;
    p.epsilon = epsilon;
    const std::vector<Point> grid = simplex_grid(vertices, p);
    return {min_grid_distance(grid, o), std::sqrt(epsilon) * delta};
}

std::pair<double, double> grid_covers_mean_check_perturbed(
    const std::vector<std::vector<Point>>& parts, double epsilon,
    const std::vector<Point>& perturbed_vertices, double L, const SimplexGridParams& params) {
    if (perturbed_vertices.size() != parts.size())
        throw DimensionMismatchError("perturbed vertex count must match part count");
    const std::vector<Point> all = gather(parts);
    const Point o = mean(all);
    const double delta = std::sqrt(variance0(all));

    SimplexGridParams p = params;
    p.epsilon = epsilon;
    const std::vector<Point> grid = simplex_grid(perturbed_vertices, p);
    return {min_grid_distance(grid, o), std::sqrt(epsilon) * delta + (1.0 + epsilon) * L};
}

}  // namespace chromaclust
