#pragma once

// Closed-form spectrum E_n = W (n^2 + 2 lambda n + lambda), n = 0, 1, 2, ...
//
// Each level splits into a box part W n^2 and an oscillator part
// hbar*omega (n + 1/2) with hbar*omega = 2 W lambda. In the dimensionless
// variable eps = (E + V0)/W the levels are eps_n = (n + lambda)^2.
//
// Quantum numbers: PT levels start at n = 0, box levels at n = 1. At V0 = 0
// the two are related by n_box = n + 1 (see box_level_index).

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pt/core.hpp"

namespace pt {

using QuantumNumber = std::uint64_t;

struct SpectrumEntry {
    QuantumNumber n = 0;
    double epsilon = 0.0;
    double E = 0.0;
    double E_box_part = 0.0;
    double E_osc_part = 0.0;
};

namespace detail {

inline double checked(double value, const char* what, QuantumNumber n)
{
    if (!std::isfinite(value)) {
        throw NumericError(std::string(what) + ": result overflows for n = " + std::to_string(n));
    }
    return value;
}

inline void require_lambda(double lambda)
{
    if (!std::isfinite(lambda) || lambda < 1.0) {
        throw DomainError("lambda must be finite and >= 1 (got " + std::to_string(lambda) + ")");
    }
}

}  // namespace detail

inline double epsilon_n(QuantumNumber n, double lambda)
{
    detail::require_lambda(lambda);
    const double s = static_cast<double>(n) + lambda;
    return detail::checked(s * s, "epsilon_n", n);
}

namespace detail {

// (n + 1 + delta)^2 with delta = lambda - 1 kept separate, so shallow wells do not lose delta to rounding of n + lambda
inline double epsilon_from_excess(QuantumNumber n, double delta)
{
    const double m = static_cast<double>(n) + 1.0;
    return checked(std::fma(delta, 2.0 * m + delta, m * m), "epsilon_n", n);
}

}  // namespace detail

inline double h_omega(const PhysicalParams& p)
{
    const DimensionlessParams d = reduce(p);
    return 2.0 * d.W * d.lambda;
}

inline SpectrumEntry energy_level(QuantumNumber n, const PhysicalParams& p)
{
    const DimensionlessParams d = reduce(p);
    const double nd = static_cast<double>(n);
    SpectrumEntry e;
    e.n = n;
    e.epsilon = detail::epsilon_from_excess(n, d.lambda_excess);
    e.E = detail::checked(d.W * (nd * nd + 2.0 * d.lambda * nd + d.lambda), "energy_level", n);
    e.E_box_part = detail::checked(d.W * (nd * nd), "energy_level", n);
    e.E_osc_part = detail::checked(2.0 * d.W * d.lambda * (nd + 0.5), "energy_level", n);
    return e;
}

/// Levels n = 0..n_max inclusive.
inline std::vector<SpectrumEntry> spectrum(QuantumNumber n_max, const PhysicalParams& p)
{
    std::vector<SpectrumEntry> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (QuantumNumber n = 0; n <= n_max; ++n) {
        out.push_back(energy_level(n, p));
    }
    return out;
}

/// Free particle in a box of width L, E_n = W n^2 with n = 1, 2, ...
inline double box_levels(QuantumNumber n, const PhysicalParams& p)
{
    validate(p);
    if (n == 0) {
        throw DomainError("box_levels: box quantum number starts at 1 (got 0)");
    }
    const double nd = static_cast<double>(n);
    return detail::checked(box_ground_energy(p) * (nd * nd), "box_levels", n);
}

/// Box quantum number matching PT level n in the V0 -> 0 limit.
constexpr QuantumNumber box_level_index(QuantumNumber n) { return n + 1; }

/// First-order perturbative shift from the quartic term of the small-x
/// expansion, W (n^2 + n + 1/2).
inline double anharmonic_correction(QuantumNumber n, const PhysicalParams& p)
{
    validate(p);
    const double nd = static_cast<double>(n);
    return detail::checked(box_ground_energy(p) * (nd * nd + nd + 0.5), "anharmonic_correction", n);
}

/// Exact anharmonic shift E_n - hbar*omega (n + 1/2), i.e. the box part W n^2.
inline double exact_anharmonic_shift(QuantumNumber n, const PhysicalParams& p)
{
    const SpectrumEntry e = energy_level(n, p);
    return e.E - e.E_osc_part;
}

/// anharmonic_correction - exact_anharmonic_shift; equals W (n + 1/2).
inline double perturbation_gap(QuantumNumber n, const PhysicalParams& p)
{
    return anharmonic_correction(n, p) - exact_anharmonic_shift(n, p);
}

/// dE_n/dL by the chain rule through W(L) and lambda(L).
inline double dE_dL(QuantumNumber n, const PhysicalParams& p)
{
    const DimensionlessParams d = reduce(p);
    const double nd = static_cast<double>(n);
    const double dW_dL = -2.0 * d.W / p.L;
    const double value = dW_dL * (nd * nd + 2.0 * d.lambda * nd + d.lambda) + d.W * (2.0 * nd + 1.0) * dlambda_dL(p);
    return detail::checked(value, "dE_dL", n);
}

}  // namespace pt
