#pragma once

// Canonical ensemble over the closed-form spectrum, k_B = 1 (T in energy
// units). Energies are measured from the minimum of V (E_n, not W eps_n);
// that choice shifts F and U by a constant and leaves C_V and P unchanged.
//
// Sums are accumulated relative to the ground level, w_n = exp(-beta (E_n - E_0)),
// so deep-well / low-T cases never underflow. Truncation stops once the
// current term and the Gaussian tail bound
//
//     sum_{m>n} exp(-beta W m^2) <= integral_n^inf exp(-beta W t^2) dt
//
// are both below tol * partial sum. E_m - E_0 >= W m^2 makes the bound valid.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "pt/core.hpp"
#include "pt/spectrum.hpp"

namespace pt {

/// Default truncation tolerance; tight enough for finite differences of F.
inline constexpr double default_thermo_tol = 1e-17;
inline constexpr std::size_t max_thermo_terms = 50'000'000;

struct PartitionFunction {
    double log_z = 0.0;          // ln Z, always valid
    double z = 0.0;              // Z itself, 0 in log mode
    bool log_mode = false;       // beta E_0 > 700; read log_z instead of z
    std::size_t terms = 0;
};

struct ThermoState {
    double T = 0.0;
    double Z = 0.0;  // 0 when the partition function is only available as ln Z
    double log_z = 0.0;
    double F = 0.0;
    double U = 0.0;
    double S = 0.0;
    double C_V = 0.0;
    double P = 0.0;
    bool log_mode = false;
};

namespace detail {

inline void require_temperature(double T)
{
    if (!std::isfinite(T) || !(T > 0.0)) {
        throw ValidationError("temperature must be finite and > 0 (got " + std::to_string(T) + ")");
    }
}

inline double gaussian_tail_bound(double n, double beta_w)
{
    const double s = std::sqrt(beta_w);
    return 0.5 * std::sqrt(std::numbers::pi) / s * std::erfc(n * s);
}

/// Levels E_n (absolute) and shifted Boltzmann factors up to truncation.
struct WeightedLevels {
    std::vector<double> energy;
    std::vector<double> weight;  // exp(-beta (E_n - E_0))
    double sum = 0.0;
};

inline WeightedLevels weighted_levels(double T, const PhysicalParams& p, double tol)
{
    require_temperature(T);
    if (!std::isfinite(tol) || !(tol > 0.0) || tol > 1e-3) {
        throw ValidationError("tolerance must lie in (0, 1e-3] (got " + std::to_string(tol) + ")");
    }
    const DimensionlessParams d = reduce(p);
    const double beta = 1.0 / T;
    const double beta_w = beta * d.W;
    const double e0 = d.W * d.lambda;

    WeightedLevels out;
    for (std::size_t n = 0;; ++n) {
        if (n >= max_thermo_terms) {
            throw NumericError("partition function: no convergence within " + std::to_string(max_thermo_terms) +
                               " terms (beta W = " + std::to_string(beta_w) + ")");
        }
        const double nd = static_cast<double>(n);
        // E_n - E_0 = W (n^2 + 2 lambda n), no cancellation
        const double gap = d.W * nd * (nd + 2.0 * d.lambda);
        const double w = std::exp(-beta * gap);
        out.energy.push_back(e0 + gap);
        out.weight.push_back(w);
        out.sum += w;
        if (w < tol * out.sum && gaussian_tail_bound(nd, beta_w) < tol * out.sum) {
            break;
        }
    }
    return out;
}

}  // namespace detail

inline PartitionFunction partition_function(double T, const PhysicalParams& p, double tol = default_thermo_tol)
{
    const detail::WeightedLevels lv = detail::weighted_levels(T, p, tol);
    const double beta_e0 = lv.energy.front() / T;
    PartitionFunction z;
    z.terms = lv.weight.size();
    z.log_z = -beta_e0 + std::log(lv.sum);
    z.log_mode = beta_e0 > 700.0;
    z.z = z.log_mode ? 0.0 : std::exp(-beta_e0) * lv.sum;
    return z;
}

/// F, U, S, C_V and P from analytically differentiated sums.
inline ThermoState observables(double T, const PhysicalParams& p, double tol = default_thermo_tol)
{
    const detail::WeightedLevels lv = detail::weighted_levels(T, p, tol);
    const double beta = 1.0 / T;
    const double e0 = lv.energy.front();

    ThermoState s;
    s.T = T;
    s.log_mode = beta * e0 > 700.0;
    s.log_z = -beta * e0 + std::log(lv.sum);
    s.Z = s.log_mode ? 0.0 : std::exp(s.log_z);
    s.F = -T * s.log_z;

    double mean_gap = 0.0;
    double pressure = 0.0;
    for (std::size_t n = 0; n < lv.weight.size(); ++n) {
        const double w = lv.weight[n] / lv.sum;
        mean_gap += w * (lv.energy[n] - e0);
        pressure += w * -dE_dL(n, p);
    }
    double var = 0.0;
    for (std::size_t n = 0; n < lv.weight.size(); ++n) {
        const double dev = (lv.energy[n] - e0) - mean_gap;
        var += (lv.weight[n] / lv.sum) * dev * dev;
    }
    s.U = e0 + mean_gap;
    s.S = (s.U - s.F) / T;
    s.C_V = beta * beta * var;
    s.P = pressure;
    return s;
}

/// Confinement pressure P = -dF/dL at fixed T.
inline double pressure(double T, const PhysicalParams& p, double tol = default_thermo_tol)
{
    return observables(T, p, tol).P;
}

}  // namespace pt
