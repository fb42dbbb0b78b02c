#pragma once

// pt_spectra command-line surface. run() is the whole program: it parses
// argv, writes one table to `out` and at most one single-line JSON error
// object to `err`, and returns the exit status.
//
//   0  success
//   2  flag or parameter validation failure
//   3  numeric failure (quadrature, eigensolve, non-convergent sum, overflow)

#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pt/pt.hpp"
#include "pt/table.hpp"

namespace pt::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_numeric = 3;

struct CommonOptions {
    double mass = 1.0;
    double hbar = 1.0;
    double V0 = 0.0;
    double L = std::numbers::pi;
    std::string units = "natural";
    std::string format = "csv";
    bool mass_set = false;
    bool hbar_set = false;

    PhysicalParams params() const
    {
        PhysicalParams p{mass, hbar, V0, L};
        if (units == "si") {
            if (!mass_set) p.mass = si::electron_mass;
            if (!hbar_set) p.hbar = si::hbar;
        }
        return p;
    }

    Format output_format() const { return format == "json" ? Format::json : Format::csv; }
};

struct TemperatureSweep {
    double lo = 0.0;
    double hi = 0.0;
    bool logarithmic = false;
};

inline TemperatureSweep parse_sweep(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) {
        parts.push_back(item);
    }
    if (parts.size() != 3) {
        throw ValidationError("--T-sweep must look like lo:hi:linear or lo:hi:logarithmic (got \"" + text + "\")");
    }
    TemperatureSweep s;
    try {
        std::size_t pos = 0;
        s.lo = std::stod(parts[0], &pos);
        if (pos != parts[0].size()) throw std::invalid_argument(parts[0]);
        s.hi = std::stod(parts[1], &pos);
        if (pos != parts[1].size()) throw std::invalid_argument(parts[1]);
    } catch (const std::exception&) {
        throw ValidationError("--T-sweep bounds are not numbers (got \"" + text + "\")");
    }
    if (parts[2] == "logarithmic" || parts[2] == "log") {
        s.logarithmic = true;
    } else if (parts[2] != "linear" && parts[2] != "lin") {
        throw ValidationError("--T-sweep scale must be linear or logarithmic (got \"" + parts[2] + "\")");
    }
    if (!(s.lo > 0.0) || !(s.hi >= s.lo) || !std::isfinite(s.hi)) {
        throw ValidationError("--T-sweep needs 0 < lo <= hi (got \"" + text + "\")");
    }
    return s;
}

inline std::vector<double> sweep_points(const TemperatureSweep& s, std::size_t points)
{
    if (points == 0) {
        throw ValidationError("--points must be >= 1");
    }
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        out[i] = s.logarithmic ? s.lo * std::pow(s.hi / s.lo, f) : s.lo + (s.hi - s.lo) * f;
    }
    out.front() = s.lo;
    if (points > 1) {
        out.back() = s.hi;
    }
    return out;
}

namespace detail {

inline void echo_params(Table& t, const std::string& command, const CommonOptions& o)
{
    const PhysicalParams p = o.params();
    const DimensionlessParams d = reduce(p);
    t.params = {{"command", command}, {"units", o.units}, {"m", p.mass}, {"hbar", p.hbar}, {"V0", p.V0},
                {"L", p.L},           {"alpha", d.alpha}, {"W", d.W},   {"v", d.v},       {"lambda", d.lambda}};
}

inline void add_common(CLI::App* sub, CommonOptions& o)
{
    sub->add_option("--m", o.mass, "particle mass")->each([&](const std::string&) { o.mass_set = true; });
    sub->add_option("--hbar", o.hbar, "reduced Planck constant")->each([&](const std::string&) { o.hbar_set = true; });
    sub->add_option("--V0", o.V0, "well depth scale (>= 0)");
    sub->add_option("--L", o.L, "well width (> 0)");
    sub->add_option("--units", o.units, "natural (hbar = m = 1) or si (electron mass, SI hbar)")
        ->check(CLI::IsMember({"natural", "si"}));
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

inline void error_line(std::ostream& err, const char* kind, const std::string& message)
{
    err << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace detail

inline Table potential_table(const CommonOptions& o, std::size_t points)
{
    if (points == 0) {
        throw ValidationError("--points must be >= 1");
    }
    const PhysicalParams p = o.params();
    Table t;
    detail::echo_params(t, "potential", o);
    t.params.emplace_back("near_wall_band", near_wall_band);
    t.columns = {"x", "V_exact", "V_harm2", "V_harm4", "V_nearwall"};
    for (std::size_t i = 0; i < points; ++i) {
        const double x = -0.5 * p.L + static_cast<double>(i + 1) * p.L / static_cast<double>(points + 1);
        Cell wall;
        if (std::fabs(x) > near_wall_band * p.L) {
            wall = eval_near_wall(x, p);
        }
        t.rows.push_back({x, eval_exact(x, p), eval_harmonic(x, p, HarmonicOrder::quadratic),
                          eval_harmonic(x, p, HarmonicOrder::quartic), wall});
    }
    return t;
}

inline Table spectrum_table(const CommonOptions& o, std::uint64_t nmax)
{
    const PhysicalParams p = o.params();
    Table t;
    detail::echo_params(t, "spectrum", o);
    t.params.emplace_back("hbar_omega", h_omega(p));
    t.columns = {"n", "epsilon", "E", "E_box_part", "E_osc_part"};
    for (const SpectrumEntry& e : spectrum(nmax, p)) {
        t.rows.push_back({static_cast<std::int64_t>(e.n), e.epsilon, e.E, e.E_box_part, e.E_osc_part});
    }
    return t;
}

inline Table wavefunction_table(const CommonOptions& o, std::uint64_t n, std::size_t points)
{
    if (points < 2) {
        throw ValidationError("--points must be >= 2");
    }
    const DimensionlessParams d = reduce(o.params());
    const Eigenfunction psi(n, d.lambda);
    Table t;
    detail::echo_params(t, "wavefunction", o);
    t.params.emplace_back("n", static_cast<std::int64_t>(n));
    t.params.emplace_back("C_n", psi.normalization());
    t.columns = {"xi", "psi"};
    for (std::size_t i = 0; i < points; ++i) {
        double xi = -half_pi + std::numbers::pi * static_cast<double>(i) / static_cast<double>(points - 1);
        if (i + 1 == points) {
            xi = half_pi;
        }
        t.rows.push_back({xi, psi(xi)});
    }
    return t;
}

inline Table verify_table(const std::vector<double>& vs, std::size_t levels, std::size_t n1, const std::string& format)
{
    Table t;
    std::string list;
    for (double v : vs) {
        list += (list.empty() ? "" : ";") + format_number(v);
    }
    t.params = {{"command", std::string("verify")}, {"v", list},
                {"levels", static_cast<std::int64_t>(levels)}, {"N1", static_cast<std::int64_t>(n1)},
                {"N2", static_cast<std::int64_t>(2 * n1)}, {"format", format}};
    t.columns = {"v", "lambda", "n", "eps_closed", "eps_refined", "rel_err"};
    std::vector<std::vector<double>> refined(vs.size());
    parallel_for(vs.size(), [&](std::size_t i) {
        if (!std::isfinite(vs[i]) || vs[i] < 0.0) {
            throw ValidationError("--v entries must be finite and >= 0");
        }
        refined[i] = refined_eigenvalues(vs[i], levels, n1);
    });
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const double lambda = lambda_of_v(vs[i]);
        for (std::size_t n = 0; n < levels; ++n) {
            const double closed = epsilon_n(n, lambda);
            const double rel = std::fabs(refined[i][n] - closed) / closed;
            t.rows.push_back({vs[i], lambda, static_cast<std::int64_t>(n), closed, refined[i][n], rel});
        }
    }
    return t;
}

inline Table thermo_table(const CommonOptions& o, const std::vector<double>& temps, double tol)
{
    const PhysicalParams p = o.params();
    Table t;
    detail::echo_params(t, "thermo", o);
    t.params.emplace_back("tol", tol);
    t.params.emplace_back("k_B", 1.0);
    t.columns = {"T", "Z", "F", "U", "C_V", "P"};
    std::vector<ThermoState> states(temps.size());
    parallel_for(temps.size(), [&](std::size_t i) { states[i] = observables(temps[i], p, tol); });
    for (const ThermoState& s : states) {
        t.rows.push_back({s.T, s.Z, s.F, s.U, s.C_V, s.P});
    }
    return t;
}

/// Box rows: V0/W -> 0 at fixed L, E_0 against the box ground level.
/// Bloch rows: L -> infinity at fixed spring constant k, hbar*omega against hbar sqrt(k/m).
inline Table limits_table(const CommonOptions& o, double k)
{
    if (!std::isfinite(k) || !(k > 0.0)) {
        throw ValidationError("--k must be finite and > 0");
    }
    const PhysicalParams base = o.params();
    Table t;
    detail::echo_params(t, "limits", o);
    t.params.emplace_back("k", k);
    t.columns = {"limit", "control", "v", "lambda", "value", "target", "rel_dev"};
    const double W = box_ground_energy(base);
    for (int e = 1; e <= 8; ++e) {
        PhysicalParams p = base;
        p.V0 = std::pow(10.0, -e) * W;
        const DimensionlessParams d = reduce(p);
        const double value = energy_level(0, p).E;
        const double target = box_levels(box_level_index(0), p);
        t.rows.push_back({std::string("box"), d.v, d.v, d.lambda, value, target, std::fabs(value - target) / target});
    }
    const double target = base.hbar * std::sqrt(k / base.mass);
    for (int e = 1; e <= 8; ++e) {
        PhysicalParams p = base;
        p.L = base.L * std::pow(10.0, e);
        p.V0 = depth_for_spring_constant(k, p.L);
        const DimensionlessParams d = reduce(p);
        const double value = h_omega(p);
        t.rows.push_back({std::string("bloch"), p.L, d.v, d.lambda, value, target, std::fabs(value - target) / target});
    }
    return t;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Poschl-Teller oscillator: spectra, eigenfunctions, oracle checks and thermodynamics", "pt_spectra"};
    app.require_subcommand(1);

    CommonOptions common;
    std::size_t points = 101;
    std::uint64_t nmax = 10;
    std::uint64_t level = 0;
    std::vector<double> vs{0.0, 2.0, 6.0, 12.0};
    std::size_t levels = 5;
    std::size_t grid = 2048;
    double temperature = 0.0;
    std::string sweep;
    double tol = default_thermo_tol;
    double k = 1.0;

    auto* pot = app.add_subcommand("potential", "tabulate V(x) with its harmonic and near-wall forms");
    detail::add_common(pot, common);
    pot->add_option("--points", points, "interior sample points");

    auto* spec = app.add_subcommand("spectrum", "closed-form levels n = 0..nmax");
    detail::add_common(spec, common);
    spec->add_option("--nmax", nmax, "highest level");

    auto* wf = app.add_subcommand("wavefunction", "normalized eigenfunction on xi in [-pi/2, pi/2]");
    detail::add_common(wf, common);
    wf->add_option("--n", level, "level index");
    wf->add_option("--points", points, "sample points including both walls");

    auto* ver = app.add_subcommand("verify", "finite-difference oracle against (n + lambda)^2");
    ver->add_option("--v", vs, "comma separated depths v = V0/W")->delimiter(',');
    ver->add_option("--levels", levels, "levels per depth");
    ver->add_option("--N", grid, "coarse grid size N1 (fine grid is 2 N1)");
    ver->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* th = app.add_subcommand("thermo", "canonical observables T, Z, F, U, C_V, P");
    detail::add_common(th, common);
    auto* t_single = th->add_option("--T", temperature, "temperature (k_B = 1)");
    auto* t_sweep = th->add_option("--T-sweep", sweep, "lo:hi:linear|logarithmic");
    t_single->excludes(t_sweep);
    th->add_option("--points", points, "points in the sweep");
    th->add_option("--tol", tol, "truncation tolerance in (0, 1e-3]");

    auto* lim = app.add_subcommand("limits", "box-limit and Bloch-limit convergence tables");
    detail::add_common(lim, common);
    lim->add_option("--k", k, "spring constant held fixed in the Bloch limit");

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) {
            args.emplace_back(argv[i]);
        }
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        detail::error_line(err, "usage", e.what());
        return exit_validation;
    }

    try {
        (void)thread_cap();  // reject a malformed PT_SPECTRA_THREADS up front
        Table table;
        if (*pot) {
            table = potential_table(common, points);
        } else if (*spec) {
            table = spectrum_table(common, nmax);
        } else if (*wf) {
            table = wavefunction_table(common, level, points);
        } else if (*ver) {
            table = verify_table(vs, levels, grid, common.format);
        } else if (*th) {
            std::vector<double> temps;
            if (!sweep.empty()) {
                temps = sweep_points(parse_sweep(sweep), points);
            } else if (t_single->count() > 0) {
                temps = {temperature};
            } else {
                throw ValidationError("thermo needs --T or --T-sweep");
            }
            table = thermo_table(common, temps, tol);
        } else if (*lim) {
            table = limits_table(common, k);
        }
        std::ostringstream buffer;
        write_table(buffer, table, common.output_format());
        out << buffer.str();
        return exit_ok;
    } catch (const ValidationError& e) {
        detail::error_line(err, "validation", e.what());
        return exit_validation;
    } catch (const DomainError& e) {
        detail::error_line(err, "validation", e.what());
        return exit_validation;
    } catch (const NumericError& e) {
        detail::error_line(err, "numeric", e.what());
        return exit_numeric;
    } catch (const std::exception& e) {
        detail::error_line(err, "numeric", e.what());
        return exit_numeric;
    }
}

}  // namespace pt::cli
