#pragma once

// Finite-difference oracle for the dimensionless equation
//
//     -psi'' + v / cos^2(xi) psi = eps psi,   psi(+-pi/2) = 0,
//
// on a uniform grid with Dirichlet walls at +-pi/2. The lowest levels of the
// symmetric tridiagonal matrix are found by Sturm-sequence bisection and
// refined by Richardson extrapolation over a doubled grid. Nothing here uses
// the closed-form spectrum.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "pt/core.hpp"
#include "pt/parallel.hpp"

namespace pt {

inline constexpr std::size_t min_grid_points = 16;
inline constexpr double potential_clamp = 1e300;

/// Uniform grid xi_i = -pi/2 + i h, i = 1..N, h = pi/(N+1).
struct GridSpec {
    std::size_t N = 0;
    double v = 0.0;

    double h() const { return std::numbers::pi / static_cast<double>(N + 1); }
    double node(std::size_t i) const { return -0.5 * std::numbers::pi + static_cast<double>(i) * h(); }
};

inline void validate(const GridSpec& spec)
{
    if (spec.N < min_grid_points) {
        throw ValidationError("grid: N must be >= 16 (got " + std::to_string(spec.N) + ")");
    }
    if (!std::isfinite(spec.v) || spec.v < 0.0) {
        throw ValidationError("grid: v must be finite and >= 0 (got " + std::to_string(spec.v) + ")");
    }
}

/// Symmetric tridiagonal matrix: diagonal d (size N), constant off-diagonal.
struct TridiagonalOperator {
    std::vector<double> diagonal;
    double off_diagonal = 0.0;
    bool clamped = false;  // some potential samples were capped at potential_clamp

    std::size_t size() const { return diagonal.size(); }
};

inline TridiagonalOperator assemble(const GridSpec& spec)
{
    validate(spec);
    const double h = spec.h();
    const double inv_h2 = 1.0 / (h * h);
    TridiagonalOperator op;
    op.diagonal.resize(spec.N);
    op.off_diagonal = -inv_h2;
    for (std::size_t i = 1; i <= spec.N; ++i) {
        double pot = 0.0;
        if (spec.v > 0.0) {
            // cos(-pi/2 + i h) = sin(i h), measured from the nearer wall so the grid stays symmetric
            const std::size_t from_wall = std::min(i, spec.N + 1 - i);
            const double c = std::sin(static_cast<double>(from_wall) * h);
            pot = spec.v / (c * c);
            if (!(pot <= potential_clamp)) {
                pot = potential_clamp;
                op.clamped = true;
            }
        }
        op.diagonal[i - 1] = 2.0 * inv_h2 + pot;
    }
    return op;
}

/// Number of eigenvalues strictly below mu.
inline std::size_t sturm_count(const TridiagonalOperator& op, double mu)
{
    const double e2 = op.off_diagonal * op.off_diagonal;
    const double pivmin = DBL_MIN * std::max(1.0, e2);
    std::size_t count = 0;
    double q = op.diagonal[0] - mu;
    for (std::size_t i = 0;;) {
        if (std::fabs(q) < pivmin) {
            q = -pivmin;
        }
        if (q < 0.0) {
            ++count;
        }
        if (++i == op.size()) {
            break;
        }
        q = op.diagonal[i] - mu - e2 / q;
    }
    return count;
}

inline std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op)
{
    const double e = std::fabs(op.off_diagonal);
    double lo = op.diagonal[0];
    double hi = op.diagonal[0];
    for (std::size_t i = 0; i < op.size(); ++i) {
        const double radius = (i == 0 || i + 1 == op.size()) ? e : 2.0 * e;
        lo = std::min(lo, op.diagonal[i] - radius);
        hi = std::max(hi, op.diagonal[i] + radius);
    }
    return {lo, hi};
}

struct Bracket {
    double value = 0.0;
    double half_width = 0.0;
};

/// The (index+1)-th smallest eigenvalue by bisection.
inline Bracket bisect_eigenvalue(const TridiagonalOperator& op, std::size_t index, double lower)
{
    const std::size_t wanted = index + 1;
    double lo = lower;
    double hi = std::max(1.0, 2.0 * std::fabs(lower));
    while (sturm_count(op, hi) < wanted) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw NumericError("bisection: no upper bound found for eigenvalue " + std::to_string(index));
        }
    }
    for (int iter = 0; iter < 4096; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double tol = 2.0 * DBL_EPSILON * std::max(std::fabs(lo), std::fabs(hi)) + DBL_MIN;
        if (hi - lo <= tol || mid <= lo || mid >= hi) {
            break;
        }
        if (sturm_count(op, mid) >= wanted) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

struct GridSolution {
    std::vector<double> eigenvalues;  // ascending
    std::vector<double> residuals;    // half-width of the final bisection bracket
    std::size_t N = 0;
    bool clamped = false;
};

inline GridSolution lowest_eigenvalues(const GridSpec& spec, std::size_t k)
{
    validate(spec);
    if (k == 0 || k > spec.N / 4) {
        throw ValidationError("lowest_eigenvalues: need 1 <= k <= N/4 (k = " + std::to_string(k) +
                              ", N = " + std::to_string(spec.N) + ")");
    }
    const TridiagonalOperator op = assemble(spec);
    const double lower = gershgorin_bounds(op).first;

    GridSolution sol;
    sol.N = spec.N;
    sol.clamped = op.clamped;
    sol.eigenvalues.resize(k);
    sol.residuals.resize(k);
    parallel_for(k, [&](std::size_t j) {
        const Bracket b = bisect_eigenvalue(op, j, lower);
        sol.eigenvalues[j] = b.value;
        sol.residuals[j] = b.half_width;
    });
    for (std::size_t j = 1; j < k; ++j) {
        if (!(sol.eigenvalues[j] > sol.eigenvalues[j - 1])) {
            throw NumericError("lowest_eigenvalues: eigenvalues " + std::to_string(j - 1) + " and " +
                               std::to_string(j) + " are not separated");
        }
    }
    return sol;
}

/// (4 eps(N2) - eps(N1)) / 3 per level; requires N2 = 2 N1.
inline std::vector<double> richardson(const GridSolution& coarse, const GridSolution& fine)
{
    if (fine.N != 2 * coarse.N) {
        throw ValidationError("richardson: grids must double exactly (N1 = " + std::to_string(coarse.N) +
                              ", N2 = " + std::to_string(fine.N) + ")");
    }
    const std::size_t k = std::min(coarse.eigenvalues.size(), fine.eigenvalues.size());
    std::vector<double> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        out[j] = (4.0 * fine.eigenvalues[j] - coarse.eigenvalues[j]) / 3.0;
    }
    return out;
}

inline std::vector<double> refined_eigenvalues(double v, std::size_t k, std::pair<std::size_t, std::size_t> grids)
{
    const auto [n1, n2] = grids;
    if (n2 != 2 * n1) {
        throw ValidationError("refined_eigenvalues: grids must double exactly (N1 = " + std::to_string(n1) +
                              ", N2 = " + std::to_string(n2) + ")");
    }
    const GridSolution coarse = lowest_eigenvalues({n1, v}, k);
    const GridSolution fine = lowest_eigenvalues({n2, v}, k);
    return richardson(coarse, fine);
}

inline std::vector<double> refined_eigenvalues(double v, std::size_t k, std::size_t n1)
{
    return refined_eigenvalues(v, k, {n1, 2 * n1});
}

}  // namespace pt
