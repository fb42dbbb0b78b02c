#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace pt {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(std::size_t order)
        : nodes(order), weights(order)
    {
        if (order == 0) {
            throw std::invalid_argument("GaussLegendre: order must be positive");
        }
        const std::size_t half = (order + 1) / 2;
        const double n = static_cast<double>(order);
        for (std::size_t i = 0; i < half; ++i) {
            // Tricomi initial guess, then Newton on P_n
            double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (std::size_t k = 2; k <= order; ++k) {
                    const double kd = static_cast<double>(k);
                    const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) <= 1e-16 * std::fabs(x) + 1e-300) {
                    break;
                }
            }
            // recompute derivative at the converged node
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= order; ++k) {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        if (order % 2 == 1) {
            nodes[half - 1] = 0.0;
        }
    }

    std::size_t order() const { return nodes.size(); }

    template <class F>
    double integrate(F&& f, double a, double b) const
    {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            sum += weights[i] * f(mid + half * nodes[i]);
        }
        return half * sum;
    }
};

}  // namespace pt
