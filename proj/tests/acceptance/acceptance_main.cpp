// Acceptance suite: one pass/fail line per criterion, exit code = #failures.
// Usage: rtstab_acceptance [--rt <path-to-rt-binary>]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rtstab/dispersion.hpp"
#include "rtstab/io.hpp"
#include "rtstab/mode_profile.hpp"
#include "rtstab/simulator.hpp"
#include "rtstab/symbol.hpp"
#include "rtstab/witness.hpp"

using namespace rtstab;
namespace fs = std::filesystem;

namespace {

std::string g_rt_path;

struct Check {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

FluidParams random_params(std::mt19937_64& rng, bool unstable) {
    std::uniform_real_distribution<double> U(0.2, 4.0);
    for (;;) {
        const double r1 = U(rng), r2 = U(rng);
        if (unstable ? r2 > 1.05 * r1 : r2 <= r1)
            return FluidParams(r1, r2, U(rng), U(rng), U(rng), U(rng));
    }
}

// -- criterion 1: cutoff exactness -----------------------------------------

Check c1_cutoff() {
    Check c;
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> U(1e-3, 1e3);
    for (int i = 0; i < 50; ++i) {
        double r1 = U(rng), r2 = U(rng);
        if (r2 <= r1) std::swap(r1, r2);
        if (r2 == r1) r2 = r1 * (1.0 + 1e-6);
        const FluidParams p(r1, r2, U(rng), U(rng), U(rng), U(rng));
        const double got = cutoff_wavenumber(p);
        const double want = std::sqrt(p.gamma_a() * (p.rho2() - p.rho1()) / p.sigma());
        if (std::abs(got - want) > 1e-15 * want)
            c.fail("set " + std::to_string(i) + ": rel dev " +
                   fmt(std::abs(got - want) / want));
    }
    return c;
}

// -- criterion 2: curve root residual ---------------------------------------

Check c2_residual() {
    Check c;
    std::mt19937_64 rng(1002);
    for (int s = 0; s < 10; ++s) {
        const FluidParams p = random_params(rng, true);
        const DispersionCurve curve = dispersion_curve(p, 512, 1e-11, 4);
        const double k0 = k_of_zeta(Complex(0.0), p).real();
        for (std::size_t i = 0; i < curve.taus.size(); ++i) {
            const double tau = curve.taus[i];
            const double bound =
                1e-10 * tau * tau * std::abs(psi(tau, p)) * k0;
            if (curve.residuals[i] > bound) {
                c.fail("set " + std::to_string(s) + " tau=" + fmt(tau) +
                       ": residual " + fmt(curve.residuals[i]) + " > " +
                       fmt(bound));
                break;
            }
        }
    }
    return c;
}

// -- criterion 3: asymptotics ------------------------------------------------

Check c3_asymptotics() {
    Check c;
    std::mt19937_64 rng(1003);
    for (int s = 0; s < 5; ++s) {
        const FluidParams p = random_params(rng, true);
        const double tau_star = cutoff_wavenumber(p);
        const auto ac = asymptotic_constants(p);

        const double tau_small = 1e-6 * tau_star;
        const double lam_small = growth_rate(tau_small, p, 1e-12);
        const double dev_small =
            std::abs(lam_small / std::sqrt(tau_small) - ac.c_small) / ac.c_small;
        if (dev_small > 0.01)
            c.fail("set " + std::to_string(s) + ": small-tau dev " + fmt(dev_small));

        const double tau_edge = (1.0 - 1e-3) * tau_star;
        const double lam_edge = growth_rate(tau_edge, p, 1e-12);
        const double dev_edge =
            std::abs(lam_edge / (tau_star - tau_edge) - ac.c_star) / ac.c_star;
        if (dev_edge > 0.02)
            c.fail("set " + std::to_string(s) + ": edge dev " + fmt(dev_edge));
    }
    return c;
}

// -- criterion 4: zero counting ----------------------------------------------

// quadrant-subdivision localization built on count_zeros_rhp only
Complex localize_zero(double tau, const FluidParams& p, Rectangle r) {
    const double fracs[] = {0.5, 0.55, 0.45, 0.6, 0.4, 0.53, 0.47};
    while (std::max(r.width(), r.height()) > 1e-7) {
        const bool split_re = r.width() >= r.height();
        bool advanced = false;
        for (double f : fracs) {
            Rectangle a = r;
            if (split_re)
                a.re_max = r.re_min + f * r.width();
            else
                a.im_max = r.im_min + f * r.height();
            try {
                const ZeroCount za = count_zeros_rhp(tau, p, a);
                if (za.count >= 1) {
                    r = a;
                } else if (split_re) {
                    r.re_min = a.re_max;
                } else {
                    r.im_min = a.im_max;
                }
                advanced = true;
                break;
            } catch (const ZeroOnBoundary&) {
                continue; // split line grazed the zero; try another fraction
            } catch (const ContourTooCoarse&) {
                continue; // same cause when the zero sits on the split line
            }
        }
        if (!advanced) break; // center is the best estimate at this size
    }
    return {0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)};
}

Check c4_zero_counting() {
    Check c;
    std::mt19937_64 rng(1004);
    std::uniform_real_distribution<double> F(0.1, 0.9);

    for (int s = 0; s < 10 && c.ok; ++s) {
        const FluidParams p = random_params(rng, true);
        const double tau_star = cutoff_wavenumber(p);
        const GrowthSummary g = max_growth(p, 1e-8);
        const Rectangle region{1e-6 * g.lambda_inf, 10.0 * g.lambda_inf,
                               -5.0 * g.lambda_inf, 5.0 * g.lambda_inf};
        for (int k = 0; k < 5; ++k) {
            const double tau = F(rng) * tau_star;
            const ZeroCount z = count_zeros_rhp(tau, p, region);
            if (z.count != 1) {
                c.fail("unstable set " + std::to_string(s) + " tau=" + fmt(tau) +
                       ": count " + std::to_string(z.count));
                continue;
            }
            const Complex zero = localize_zero(tau, p, region);
            const double lam = growth_rate(tau, p, 1e-12);
            if (std::abs(zero - Complex(lam, 0.0)) > 1e-6)
                c.fail("set " + std::to_string(s) + " tau=" + fmt(tau) +
                       ": localized zero off by " +
                       fmt(std::abs(zero - Complex(lam, 0.0))));
        }
        for (double f : {1.05, 2.0}) {
            const ZeroCount z = count_zeros_rhp(f * tau_star, p, region);
            if (z.count != 0)
                c.fail("set " + std::to_string(s) + " above cutoff: count " +
                       std::to_string(z.count));
        }
    }

    std::uniform_real_distribution<double> T(0.05, 5.0);
    for (int s = 0; s < 10 && c.ok; ++s) {
        const FluidParams p = random_params(rng, false);
        for (int k = 0; k < 5; ++k) {
            const double tau = T(rng);
            const double scale = std::min(p.mu1() * tau * tau / p.rho1(),
                                          p.mu2() * tau * tau / p.rho2());
            const Rectangle region{1e-6 * scale, 10.0 * scale, -5.0 * scale,
                                   5.0 * scale};
            const ZeroCount z = count_zeros_rhp(tau, p, region);
            if (z.count != 0)
                c.fail("stable set " + std::to_string(s) + " tau=" + fmt(tau) +
                       ": count " + std::to_string(z.count));
        }
    }
    return c;
}

// -- criterion 5: determinant oracle equivalence ------------------------------

Check c5_determinant() {
    Check c;
    std::mt19937_64 rng(1005);
    std::uniform_real_distribution<double> F(0.1, 0.9);
    for (int i = 0; i < 20; ++i) {
        const FluidParams p = random_params(rng, true);
        const double tau = F(rng) * cutoff_wavenumber(p);
        const double a = growth_rate(tau, p, 1e-12);
        const double b = dispersion_from_profile(tau, p, 1e-12);
        if (std::abs(a - b) > 1e-8 * a)
            c.fail("draw " + std::to_string(i) + ": rel dev " +
                   fmt(std::abs(a - b) / a));
    }
    return c;
}

// -- criterion 6: profile residual --------------------------------------------

Check c6_profile_residual() {
    Check c;
    std::mt19937_64 rng(1006);
    std::uniform_real_distribution<double> L(0.2, 5.0), T(0.2, 3.0), H(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const FluidParams p = random_params(rng, i % 2 == 0);
        const double tau = T(rng);
        const Complex lam(L(rng), i % 4 == 0 ? L(rng) * 0.3 : 0.0);
        const Complex h(1.0, H(rng));
        const ModeProfile prof = solve_mode(lam, tau, h, p);
        const double r = residual_check(prof, p, 20);
        if (r > 1e-8)
            c.fail("draw " + std::to_string(i) + ": residual " + fmt(r));
    }
    return c;
}

// -- criteria 7 & 8: witness scaling -------------------------------------------

double slope3(const std::vector<double>& eps, const std::vector<double>& ratio) {
    const double n = static_cast<double>(eps.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const double x = std::log(eps[i]), y = std::log(ratio[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Check c7_witness_scaling() {
    Check c;
    const FluidParams p(1.0, 3.0, 1.0, 1.0, 1.0, 1.0);

    // d = 1 at 2^12
    {
        const GridSpec spec{1, 4096, 16.0 * 3.14159265358979323846 / 0.02};
        const std::vector<double> eps{0.2, 0.1, 0.05};
        std::vector<double> ratios;
        for (double e : eps)
            ratios.push_back(witness_residual({1.0}, e, p, 2.0, spec));
        const double s = slope3(eps, ratios);
        if (std::abs(s - 1.0) > 0.2) c.fail("d=1 slope " + fmt(s));

        // negative control at the smallest feasible eps on this grid
        const SnappedCarrier car = snap_wavevector(spec, {1.0});
        const double lam_off = 1.1 * growth_rate(car.magnitude, p, 1e-12);
        const double s_mag =
            std::abs(symbol_s(Complex(lam_off, 0.0), car.magnitude, p));
        const double control =
            witness_residual({1.0}, 0.02, p, 2.0, spec, lam_off);
        if (std::abs(control - s_mag) > 0.05 * s_mag)
            c.fail("negative control dev " +
                   fmt(std::abs(control - s_mag) / s_mag));
        for (double e : eps) {
            const double r = witness_residual({1.0}, e, p, 2.0, spec, lam_off);
            if (r < 0.5 * s_mag)
                c.fail("control ratio dipped below |s|/2 at eps " + fmt(e));
        }
    }

    // d = 2 at 512^2
    {
        const GridSpec spec{2, 512, 16.0 * 3.14159265358979323846 / 0.05};
        const std::vector<double> eps{0.2, 0.1, 0.05};
        std::vector<double> ratios;
        for (double e : eps)
            ratios.push_back(witness_residual({1.0, 0.0}, e, p, 2.0, spec));
        const double s = slope3(eps, ratios);
        if (std::abs(s - 1.0) > 0.2) c.fail("d=2 slope " + fmt(s));
    }
    return c;
}

Check c8_norm_scaling() {
    Check c;
    const GridSpec spec{1, 4096, 16.0 * 3.14159265358979323846 / 0.02};
    for (double pnorm : {2.0, 4.0}) {
        std::vector<double> scaled;
        for (double eps : {0.2, 0.1, 0.05, 0.02}) {
            const WindowFunction w = build_window(eps, spec);
            const GridField h = build_heps({1.0}, eps, w);
            scaled.push_back(std::pow(eps, 1.0 / pnorm) * h.norm_p(pnorm));
        }
        for (double s : scaled)
            if (std::abs(s - scaled.front()) > 0.02 * scaled.front())
                c.fail("p=" + fmt(pnorm) + ": spread " +
                       fmt(std::abs(s - scaled.front()) / scaled.front()));
    }
    return c;
}

// -- criterion 9: simulator invariants ----------------------------------------

Check c9_simulator() {
    Check c;
    const FluidParams p(1.0, 3.0, 1.0, 1.0, 1.0, 1.0);
    const GridSpec grid{1, 256, 80.0};
    const GridField f0 = make_white_noise(grid, 2024, 1e-6);
    const SimulationRun run = make_run(f0, {}, p, 1e-10, 4);

    // linearity
    {
        std::vector<Complex> doubled = f0.values();
        for (auto& z : doubled) z *= 2.0;
        const SimulationRun run2{GridField::from_values(grid, std::move(doubled)),
                                 {},
                                 p,
                                 run.table,
                                 {}};
        const GridField a = evolve(run, 1.1), b = evolve(run2, 1.1);
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < a.values().size(); ++i) {
            worst = std::max(worst, std::abs(b.values()[i] - 2.0 * a.values()[i]));
            scale = std::max(scale, std::abs(b.values()[i]));
        }
        if (worst > 1e-12 * scale) c.fail("linearity " + fmt(worst / scale));
    }
    // semigroup
    {
        const GridField mid = evolve(run, 0.6);
        const SimulationRun run3{mid, {}, p, run.table, {}};
        const GridField a = evolve(run3, 0.5), b = evolve(run, 1.1);
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < a.values().size(); ++i) {
            worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
            scale = std::max(scale, std::abs(b.values()[i]));
        }
        if (worst > 1e-12 * scale) c.fail("semigroup " + fmt(worst / scale));
    }
    // mean conservation
    {
        const GridField later = evolve(run, 3.0);
        const double dev = std::abs(later.spectrum()[0] - f0.spectrum()[0]);
        if (dev > 1e-12 * std::max(1.0, std::abs(f0.spectrum()[0])))
            c.fail("mean conservation " + fmt(dev));
    }
    // isotropy (d = 2)
    {
        const GridSpec grid2{2, 32, 30.0};
        const GridField g0 = make_white_noise(grid2, 7, 1e-4);
        const SimulationRun rrun = make_run(g0, {}, p, 1e-8, 4);
        const std::size_t n = grid2.n;
        auto rotate = [&](const std::vector<Complex>& v) {
            std::vector<Complex> out(v.size());
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t cc = 0; cc < n; ++cc)
                    out[r * n + cc] = v[cc * n + (n - 1 - r)];
            return out;
        };
        const SimulationRun rot_run{
            GridField::from_values(grid2, rotate(g0.values())), {}, p, rrun.table, {}};
        const GridField a =
            GridField::from_values(grid2, rotate(evolve(rrun, 0.9).values()));
        const GridField b = evolve(rot_run, 0.9);
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < a.values().size(); ++i) {
            worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
            scale = std::max(scale, std::abs(b.values()[i]));
        }
        if (worst > 1e-12 * scale) c.fail("isotropy " + fmt(worst / scale));
    }
    // white-noise spectral peak
    {
        const GrowthSummary g = max_growth(p, 1e-8);
        const Diagnostics d = diagnostics(run, 10.0 / g.lambda_inf);
        if (std::abs(d.peak_wavenumber - g.tau_max) > grid.dxi() + 1e-12)
            c.fail("peak at " + fmt(d.peak_wavenumber) + " vs tau_max " +
                   fmt(g.tau_max));
    }
    return c;
}

// -- criterion 10: CLI determinism ---------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Check c10_determinism() {
    Check c;
    if (g_rt_path.empty()) {
        c.fail("rt binary path not provided (--rt)");
        return c;
    }
    const fs::path base = fs::temp_directory_path() / "rtstab_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    const fs::path cfg_path = base / "config.json";
    {
        std::ofstream f(cfg_path);
        f << R"({
  "params": {"rho1": 1.0, "rho2": 3.0, "mu1": 1.0, "mu2": 1.0,
             "sigma": 1.0, "gamma_a": 1.0},
  "curve": {"n_points": 64, "tol": 1e-10},
  "simulate": {
    "grid": {"dim": 1, "n": 64, "box": 40.0},
    "initial": {"kind": "white-noise", "amplitude": 1e-6},
    "times": [0.0, 2.0, 4.0],
    "table_tol": 1e-10
  },
  "seed": 7
})";
    }
    for (const std::string cmd : {std::string("curve"), std::string("simulate")}) {
        const fs::path d1 = base / (cmd + "_1"), d2 = base / (cmd + "_2");
        for (const fs::path& d : {d1, d2}) {
            const std::string call = "\"" + g_rt_path + "\" " + cmd +
                                     " --config \"" + cfg_path.string() +
                                     "\" --out \"" + d.string() + "\" 2>/dev/null";
            if (std::system(call.c_str()) != 0) {
                c.fail(cmd + ": nonzero exit");
                return c;
            }
        }
        for (const auto& entry : fs::directory_iterator(d1)) {
            const fs::path other = d2 / entry.path().filename();
            if (!fs::exists(other)) {
                c.fail(cmd + ": missing " + other.filename().string());
                continue;
            }
            if (slurp(entry.path()) != slurp(other))
                c.fail(cmd + ": " + entry.path().filename().string() +
                       " differs between runs");
        }
    }
    return c;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--rt") g_rt_path = argv[i + 1];

    struct Criterion {
        int id;
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "cutoff-exactness", c1_cutoff},
        {2, "curve-root-residual", c2_residual},
        {3, "band-edge-asymptotics", c3_asymptotics},
        {4, "zero-counting", c4_zero_counting},
        {5, "determinant-symbol-equivalence", c5_determinant},
        {6, "profile-residual", c6_profile_residual},
        {7, "witness-scaling", c7_witness_scaling},
        {8, "norm-scaling", c8_norm_scaling},
        {9, "simulator-invariants", c9_simulator},
        {10, "cli-determinism", c10_determinism},
    };

    int failures = 0;
    for (const auto& cr : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Check result;
        try {
            result = cr.run();
        } catch (const std::exception& e) {
            result.fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (result.ok) {
            std::printf("[PASS] %2d %-32s (%.2fs)\n", cr.id, cr.name, secs);
        } else {
            ++failures;
            std::printf("[FAIL] %2d %-32s (%.2fs): %s\n", cr.id, cr.name, secs,
                        result.detail.c_str());
        }
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures;
}
