// Walks the well from shallow to deep and prints how the lowest levels
// move from box-like n^2 spacing to oscillator-like linear spacing.

#include <cstdio>
#include <numbers>

#include "pt/pt.hpp"

int main()
{
    pt::PhysicalParams p{1.0, 1.0, 0.0, std::numbers::pi};  // W = 1/2
    std::printf("%12s %12s %14s %14s %14s\n", "v", "lambda", "E1-E0", "E2-E1", "hbar*omega");
    for (double v : {0.0, 1e-2, 1.0, 1e2, 1e4, 1e6}) {
        p.V0 = v * pt::box_ground_energy(p);
        const auto levels = pt::spectrum(2, p);
        std::printf("%12.4g %12.6g %14.8g %14.8g %14.8g\n", v, pt::reduce(p).lambda, levels[1].E - levels[0].E,
                    levels[2].E - levels[1].E, pt::h_omega(p));
    }

    p.V0 = 3.0;
    std::printf("\nthermodynamics at V0 = %g, L = pi\n", p.V0);
    std::printf("%10s %14s %14s %14s\n", "T", "U", "C_V", "P");
    for (double T : {0.1, 1.0, 10.0, 100.0}) {
        const auto s = pt::observables(T, p);
        std::printf("%10g %14.8g %14.8g %14.8g\n", T, s.U, s.C_V, s.P);
    }
    return 0;
}
