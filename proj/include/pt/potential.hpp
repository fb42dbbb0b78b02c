#pragma once

// V(x) = V0 tan^2(pi x / L) on the open interval (-L/2, L/2) and its two
// asymptotic forms: the anharmonic core near x = 0 and the inverse-square
// wall form near x = +-L/2.

#include <cmath>
#include <string>

#include "pt/core.hpp"

namespace pt {

enum class Regime { exact, harmonic2, harmonic4, near_wall };

enum class HarmonicOrder { quadratic = 2, quartic = 4 };

struct PotentialSample {
    double x = 0.0;
    double value = 0.0;
    Regime regime = Regime::exact;
};

/// Lower edge of the near-wall validity band, as a fraction of L.
inline constexpr double near_wall_band = 0.4;

namespace detail {

inline void require_inside_well(double x, const PhysicalParams& p, const char* who)
{
    validate(p);
    if (!std::isfinite(x) || !(std::fabs(x) < 0.5 * p.L)) {
        throw DomainError(std::string(who) + ": x = " + std::to_string(x) +
                          " lies outside the open interval between the singular walls x = -L/2 = " +
                          std::to_string(-0.5 * p.L) + " and x = +L/2 = " + std::to_string(0.5 * p.L));
    }
}

}  // namespace detail

inline double eval_exact(double x, const PhysicalParams& p)
{
    detail::require_inside_well(x, p, "eval_exact");
    const double alpha = well_alpha(p.L);
    const double ax = std::fabs(x);
    // near the walls cos(alpha x) = sin(alpha (L/2 - |x|)), and L/2 - |x| is exact there
    const double c = ax > 0.25 * p.L ? std::sin(alpha * (0.5 * p.L - ax)) : std::cos(alpha * x);
    const double t = std::sin(alpha * ax) / c;
    return p.V0 * (t * t);
}

inline double eval_harmonic(double x, const PhysicalParams& p, HarmonicOrder order)
{
    detail::require_inside_well(x, p, "eval_harmonic");
    const double u = well_alpha(p.L) * x;
    const double u2 = u * u;
    if (order == HarmonicOrder::quadratic) {
        return p.V0 * u2;
    }
    return p.V0 * u2 * (1.0 + (2.0 / 3.0) * u2);
}

/// Leading cotangent term near the walls, V0 (L^4/pi^2) (x^2 - L^2/4)^-2.
/// Only meaningful for near_wall_band * L < |x| < L/2.
inline double eval_near_wall(double x, const PhysicalParams& p)
{
    detail::require_inside_well(x, p, "eval_near_wall");
    if (!(std::fabs(x) > near_wall_band * p.L)) {
        throw DomainError("eval_near_wall: |x| = " + std::to_string(std::fabs(x)) +
                          " is outside the near-wall band |x| > 0.4 L = " + std::to_string(near_wall_band * p.L));
    }
    const double L2 = p.L * p.L;
    // x^2 - L^2/4 factored to keep precision close to the wall
    const double gap = (0.5 * p.L - std::fabs(x)) * (0.5 * p.L + std::fabs(x));
    return p.V0 * (L2 * L2 / (std::numbers::pi * std::numbers::pi)) / (gap * gap);
}

inline PotentialSample sample(double x, const PhysicalParams& p, Regime regime)
{
    switch (regime) {
    case Regime::exact: return {x, eval_exact(x, p), regime};
    case Regime::harmonic2: return {x, eval_harmonic(x, p, HarmonicOrder::quadratic), regime};
    case Regime::harmonic4: return {x, eval_harmonic(x, p, HarmonicOrder::quartic), regime};
    case Regime::near_wall: return {x, eval_near_wall(x, p), regime};
    }
    throw DomainError("sample: unknown regime");
}

/// Spring constant of the harmonic limit, k = 2 V0 alpha^2 = 2 pi^2 V0 / L^2.
inline double spring_constant(const PhysicalParams& p)
{
    validate(p);
    const double alpha = well_alpha(p.L);
    return 2.0 * p.V0 * alpha * alpha;
}

/// V0 that produces spring constant k at width L.
inline double depth_for_spring_constant(double k, double L)
{
    const double alpha = well_alpha(L);
    return k / (2.0 * alpha * alpha);
}

}  // namespace pt
