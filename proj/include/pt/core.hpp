#pragma once

// Parameters of the Pöschl-Teller well and the dimensionless reduction
// (alpha, W, v, lambda) every other header consumes.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pt {

/// Bad input: non-finite or out-of-range parameter, malformed request.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain where a formula is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Numerical procedure failed to reach its accuracy target.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace si {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double electron_mass = 9.1093837015e-31; // kg
}  // namespace si

/**
 * Physical inputs of the model. Units are whatever the caller uses
 * consistently; the defaults are natural units with hbar = m = 1.
 * V0 == 0 is the particle-in-a-box case.
 */
struct PhysicalParams {
    double mass = 1.0;
    double hbar = 1.0;
    double V0 = 0.0;
    double L = std::numbers::pi;

    static PhysicalParams natural(double V0, double L) { return {1.0, 1.0, V0, L}; }
    static PhysicalParams si_electron(double V0_joule, double L_metre)
    {
        return {si::electron_mass, si::hbar, V0_joule, L_metre};
    }
};

inline void validate(const PhysicalParams& p)
{
    auto require = [](bool ok, const char* what, double value) {
        if (!ok) {
            throw ValidationError(std::string("invalid parameter: ") + what + " (got " +
                                  std::to_string(value) + ")");
        }
    };
    require(std::isfinite(p.mass) && p.mass > 0.0, "mass must be finite and > 0", p.mass);
    require(std::isfinite(p.hbar) && p.hbar > 0.0, "hbar must be finite and > 0", p.hbar);
    require(std::isfinite(p.V0) && p.V0 >= 0.0, "V0 must be finite and >= 0", p.V0);
    require(std::isfinite(p.L) && p.L > 0.0, "L must be finite and > 0", p.L);
}

/// Derived quantities: alpha = pi/L, W = box ground energy, v = V0/W,
/// lambda the positive root of lambda*(lambda-1) = v.
struct DimensionlessParams {
    double alpha = 0.0;
    double W = 0.0;
    double v = 0.0;
    double lambda = 1.0;
    double lambda_excess = 0.0;  // lambda - 1 to full relative precision
};

/// Above this depth the closed form is replaced by sqrt(v) + 1/2 (error < 1e-15 relative).
inline constexpr double lambda_asymptotic_threshold = 1e30;

inline double lambda_of_v(double v)
{
    if (!std::isfinite(v) || v < 0.0) {
        throw DomainError("lambda_of_v: v must be finite and >= 0 (got " + std::to_string(v) + ")");
    }
    if (v >= lambda_asymptotic_threshold) {
        return std::sqrt(v) + 0.5;
    }
    return 0.5 * (1.0 + std::sqrt(std::fma(4.0, v, 1.0)));
}

/// lambda - 1 = 2v / (1 + sqrt(1 + 4v)), free of the cancellation in lambda_of_v(v) - 1.
inline double lambda_excess(double v)
{
    if (!std::isfinite(v) || v < 0.0) {
        throw DomainError("lambda_excess: v must be finite and >= 0 (got " + std::to_string(v) + ")");
    }
    if (v >= lambda_asymptotic_threshold) {
        return std::sqrt(v) - 0.5;
    }
    return 2.0 * v / (1.0 + std::sqrt(std::fma(4.0, v, 1.0)));
}

inline double well_alpha(double L) { return std::numbers::pi / L; }

inline double box_ground_energy(const PhysicalParams& p)
{
    const double alpha = well_alpha(p.L);
    return p.hbar * p.hbar / (2.0 * p.mass) * alpha * alpha;
}

inline DimensionlessParams reduce(const PhysicalParams& p)
{
    validate(p);
    DimensionlessParams d;
    d.alpha = well_alpha(p.L);
    d.W = box_ground_energy(p);
    if (!(d.W > 0.0) || !std::isfinite(d.W)) {
        throw ValidationError("invalid parameter combination: W = hbar^2 alpha^2 / 2m is not a positive finite number");
    }
    d.v = p.V0 / d.W;
    if (!std::isfinite(d.v)) {
        throw ValidationError("invalid parameter combination: v = V0/W overflows");
    }
    d.lambda = lambda_of_v(d.v);
    d.lambda_excess = lambda_excess(d.v);
    return d;
}

/// d(lambda)/dL in closed form; v grows like L^2 at fixed V0, hence the factor 2v/L.
inline double dlambda_dL(const PhysicalParams& p)
{
    const DimensionlessParams d = reduce(p);
    if (d.v == 0.0) {
        return 0.0;
    }
    return (1.0 / p.L) * (2.0 * d.v / std::sqrt(std::fma(4.0, d.v, 1.0)));
}

}  // namespace pt
