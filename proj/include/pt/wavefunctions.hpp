#pragma once

// Eigenfunctions Psi_n(xi) = C_n (cos xi)^lambda G_n^(lambda)(sin xi) on
// xi in [-pi/2, pi/2], normalized in xi. The physical-x normalization
// differs by a factor sqrt(alpha): psi(x) = sqrt(alpha) Psi(alpha x).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pt/core.hpp"
#include "pt/quadrature.hpp"
#include "pt/spectrum.hpp"

namespace pt {

inline constexpr double half_pi = 0.5 * std::numbers::pi;

/// Gegenbauer polynomial C_n^(lambda)(t) by the three-term recurrence.
inline double gegenbauer(QuantumNumber n, double lambda, double t)
{
    if (!std::isfinite(lambda) || lambda <= 0.0) {
        throw DomainError("gegenbauer: lambda must be > 0 (got " + std::to_string(lambda) + ")");
    }
    if (!(std::fabs(t) <= 1.0)) {
        throw DomainError("gegenbauer: t must lie in [-1, 1] (got " + std::to_string(t) + ")");
    }
    double g0 = 1.0;
    if (n == 0) {
        return g0;
    }
    double g1 = 2.0 * lambda * t;
    for (QuantumNumber k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double g2 = (2.0 * (kd + lambda - 1.0) * t * g1 - (kd + 2.0 * lambda - 2.0) * g0) / kd;
        g0 = g1;
        g1 = g2;
    }
    return g1;
}

/// (cos xi)^lambda with 0 at the walls and on underflow.
inline double cos_power(double xi, double lambda)
{
    if (std::fabs(xi) == half_pi) {
        return 0.0;
    }
    const double c = std::cos(xi);
    if (!(c > 0.0)) {
        return 0.0;
    }
    const double r = std::exp(lambda * std::log(c));
    return std::isfinite(r) ? r : 0.0;
}

/// Unnormalized eigenfunction (cos xi)^lambda G_n^(lambda)(sin xi).
inline double psi_raw(QuantumNumber n, double xi, double lambda)
{
    detail::require_lambda(lambda);
    if (!(std::fabs(xi) <= half_pi)) {
        throw DomainError("psi_raw: |xi| must be <= pi/2 (got " + std::to_string(xi) + ")");
    }
    const double envelope = cos_power(xi, lambda);
    if (envelope == 0.0) {
        return 0.0;
    }
    return envelope * gegenbauer(n, lambda, std::sin(xi));
}

namespace detail {

inline const GaussLegendre& gauss_rule(std::size_t order)
{
    static const GaussLegendre r128(128);
    static const GaussLegendre r256(256);
    static const GaussLegendre r512(512);
    switch (order) {
    case 128: return r128;
    case 256: return r256;
    case 512: return r512;
    default: throw std::invalid_argument("gauss_rule: unsupported order " + std::to_string(order));
    }
}

inline constexpr std::array<std::size_t, 3> quadrature_orders{128, 256, 512};

/// Integral over (-pi/2, pi/2) with order escalation 128 -> 256 -> 512.
template <class F>
double integrate_well(F&& f, const char* who)
{
    double previous = gauss_rule(quadrature_orders[0]).integrate(f, -half_pi, half_pi);
    double diff = 0.0;
    for (std::size_t i = 1; i < quadrature_orders.size(); ++i) {
        const double current = gauss_rule(quadrature_orders[i]).integrate(f, -half_pi, half_pi);
        diff = std::fabs(current - previous);
        const double scale = std::max(std::fabs(current), 1.0);
        if (diff <= 1e-12 * scale) {
            return current;
        }
        previous = current;
    }
    if (diff > 1e-8 * std::max(std::fabs(previous), 1.0)) {
        throw NumericError(std::string(who) + ": quadrature did not converge (residual " + std::to_string(diff) +
                           " after order 512)");
    }
    return previous;
}

}  // namespace detail

/// Normalization constant C_n > 0 with integral of (C_n psi_raw)^2 dxi equal to 1.
inline double normalize(QuantumNumber n, double lambda)
{
    detail::require_lambda(lambda);
    const double norm2 = detail::integrate_well(
        [&](double xi) {
            const double y = psi_raw(n, xi, lambda);
            return y * y;
        },
        "normalize");
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw NumericError("normalize: squared norm is not a positive finite number");
    }
    return 1.0 / std::sqrt(norm2);
}

/// Normalized eigenfunction with its constant precomputed.
class Eigenfunction {
public:
    Eigenfunction(QuantumNumber n, double lambda)
        : n_(n), lambda_(lambda), norm_(normalize(n, lambda))
    {
    }

    QuantumNumber n() const { return n_; }
    double lambda() const { return lambda_; }
    double normalization() const { return norm_; }
    double epsilon() const { return epsilon_n(n_, lambda_); }

    double operator()(double xi) const { return norm_ * psi_raw(n_, xi, lambda_); }

private:
    QuantumNumber n_;
    double lambda_;
    double norm_;
};

/// <Psi_a | Psi_b> over xi.
inline double overlap(const Eigenfunction& a, const Eigenfunction& b)
{
    return detail::integrate_well([&](double xi) { return a(xi) * b(xi); }, "overlap");
}

namespace detail {

inline std::size_t sign_changes(QuantumNumber n, double lambda, std::size_t grid_points)
{
    const double h = std::numbers::pi / static_cast<double>(grid_points + 1);
    std::size_t count = 0;
    int last_sign = 0;
    for (std::size_t i = 1; i <= grid_points; ++i) {
        const double y = psi_raw(n, -half_pi + static_cast<double>(i) * h, lambda);
        const int sign = (y > 0.0) - (y < 0.0);
        if (sign != 0 && last_sign != 0 && sign != last_sign) {
            ++count;
        }
        if (sign != 0) {
            last_sign = sign;
        }
    }
    return count;
}

}  // namespace detail

/// Interior sign changes of Psi_n. A count is accepted once a 4x finer grid reproduces it.
inline std::size_t count_nodes(QuantumNumber n, double lambda, std::size_t grid_points = 4096)
{
    detail::require_lambda(lambda);
    if (grid_points < 2) {
        throw ValidationError("count_nodes: need at least 2 grid points");
    }
    std::size_t coarse = detail::sign_changes(n, lambda, grid_points);
    for (int attempt = 0; attempt < 2; ++attempt) {
        grid_points *= 4;
        const std::size_t fine = detail::sign_changes(n, lambda, grid_points);
        if (fine == coarse) {
            return fine;
        }
        coarse = fine;
    }
    throw NumericError("count_nodes: grid too coarse to separate the nodes of level " + std::to_string(n));
}

/// Psi'' + (eps - v / cos^2 xi) Psi at xi, with Psi'' by a central difference of step h.
inline double schrodinger_residual(const Eigenfunction& psi, double xi, double h = 1e-4)
{
    const double lambda = psi.lambda();
    const double v = lambda * (lambda - 1.0);
    const double c = std::cos(xi);
    const double center = psi(xi);
    const double second = (psi(xi + h) - 2.0 * center + psi(xi - h)) / (h * h);
    return second + (psi.epsilon() - v / (c * c)) * center;
}

}  // namespace pt
