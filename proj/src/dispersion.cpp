#include "rtstab/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace rtstab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || n < 4) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    const int nt = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += nt) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

// d phi / d zeta on the real axis, for Newton acceleration.
double phi_real_derivative(double z, const FluidParams& p) {
    const double w1 = std::sqrt(p.rho1() * z + p.mu1());
    const double w2 = std::sqrt(p.rho2() * z + p.mu2());
    const double e1 = std::sqrt(p.mu1()) * w1 + p.mu2();
    const double e2 = std::sqrt(p.mu2()) * w2 + p.mu1();
    const double de1 = std::sqrt(p.mu1()) * p.rho1() / (2.0 * w1);
    const double de2 = std::sqrt(p.mu2()) * p.rho2() / (2.0 * w2);
    const double sum = e1 + e2;
    const double E = e1 * e2 / sum;
    const double dE = (de1 * e2 + e1 * de2) / sum - e1 * e2 * (de1 + de2) / (sum * sum);
    return 2.0 * z + (4.0 / p.rho_sum()) * (E + z * dE);
}

// Chebyshev-type interior nodes of (0, tau_star), clustered at both edges.
std::vector<double> clustered_grid(double tau_star, int n) {
    std::vector<double> taus(n);
    for (int i = 0; i < n; ++i)
        taus[i] = tau_star * 0.5 * (1.0 - std::cos(kPi * (i + 1) / (n + 1)));
    return taus;
}

struct ContourResult {
    int count;
    double residual;
    double min_modulus;
    double max_modulus;
};

// Argument-principle count around a rectangle: accumulate principal phase
// increments of f along the boundary, refining any segment whose increment
// exceeds pi/2. Log-derivative free (no differentiation through the
// square roots).
ContourResult winding_count(const std::function<Complex(Complex)>& f,
                            const Rectangle& r, std::size_t budget = 400000) {
    const Complex corners[5] = {
        {r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max},
        {r.re_min, r.im_max}, {r.re_min, r.im_min}};
    double total = 0.0;
    double min_mod = 1e308, max_mod = 0.0;
    std::size_t evals = 0;

    struct Seg {
        double t0, t1;
        Complex f0, f1;
        int depth;
    };

    for (int e = 0; e < 4; ++e) {
        const Complex a = corners[e];
        const Complex b = corners[e + 1];
        std::vector<Seg> stack;
        const Complex fa = f(a), fb = f(b);
        if (!(std::abs(fa) > 0.0) || !(std::abs(fb) > 0.0))
            throw ZeroOnBoundary("contour passes through a zero");
        stack.push_back({0.0, 1.0, fa, fb, 0});
        while (!stack.empty()) {
            Seg s = stack.back();
            stack.pop_back();
            const double m0 = std::abs(s.f0), m1 = std::abs(s.f1);
            min_mod = std::min({min_mod, m0, m1});
            max_mod = std::max({max_mod, m0, m1});
            const double dphi = std::arg(s.f1 / s.f0);
            if (std::abs(dphi) <= kPi / 2.0 && s.depth >= 4) {
                total += dphi;
                continue;
            }
            if (s.depth > 52 || ++evals > budget)
                throw ContourTooCoarse(
                    "winding residual not resolvable within subdivision budget");
            const double tm = 0.5 * (s.t0 + s.t1);
            const Complex fm = f(a + (b - a) * tm);
            if (!(std::abs(fm) > 0.0))
                throw ZeroOnBoundary("contour passes through a zero");
            stack.push_back({tm, s.t1, fm, s.f1, s.depth + 1});
            stack.push_back({s.t0, tm, s.f0, fm, s.depth + 1});
        }
    }
    if (min_mod < 1e-10 * max_mod)
        throw ZeroOnBoundary("boundary modulus below 1e-10 of contour scale");
    const double k = std::round(total / (2.0 * kPi));
    const double residual = std::abs(total - 2.0 * kPi * k);
    if (residual > 0.1)
        throw ContourTooCoarse("winding residual above 0.1 after refinement");
    return {static_cast<int>(k), residual, min_mod, max_mod};
}

// As winding_count, but nudges the rectangle outward by a small
// deterministic amount when an edge lands on (or grazes) a zero.
ContourResult winding_count_nudged(const std::function<Complex(Complex)>& f,
                                   Rectangle r, double nudge_scale) {
    for (int attempt = 0;; ++attempt) {
        try {
            return winding_count(f, r);
        } catch (const ZeroOnBoundary&) {
            if (attempt >= 6) throw;
        } catch (const ContourTooCoarse&) {
            if (attempt >= 6) throw; // zero pinned on an edge looks the same
        }
        const double d = nudge_scale * (attempt + 1) * 1.3e-3;
        r.re_min -= d;
        r.re_max += d * 1.7;
        r.im_min -= d * 0.9;
        r.im_max += d * 1.1;
    }
}

} // namespace

double cutoff_wavenumber(const FluidParams& p) {
    if (!p.is_heavy_on_top())
        throw StableConfiguration("rho2 <= rho1: no unstable band");
    return std::sqrt(p.gamma_a() * p.jump() / p.sigma());
}

AsymptoticConstants asymptotic_constants(const FluidParams& p) {
    if (!p.is_heavy_on_top())
        throw StableConfiguration("rho2 <= rho1: no unstable band");
    return {std::sqrt(p.jump() * p.gamma_a() / p.rho_sum()),
            p.sigma() / p.mu_sum()};
}

double growth_rate(double tau, const FluidParams& p, double tol) {
    const double tau_star = cutoff_wavenumber(p);
    if (!(tau > 0.0) || !(tau < tau_star))
        throw OutOfBand("tau outside the unstable band (0, tau*)");
    if (!(tol > 0.0)) throw DegenerateInput("growth_rate requires tol > 0");

    const double target = -psi(tau, p); // > 0 on (0, tau*)

    // exponential bracket growth on the monotone phi
    double lo = 0.0, hi = 1.0;
    int steps = 0;
    while (phi_real(hi, p) < target) {
        lo = hi;
        hi *= 2.0;
        if (++steps > 200) throw NoConvergence("bracket growth exhausted");
    }

    // safeguarded Newton within [lo, hi]
    double z = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double val = phi_real(z, p) - target;
        if (std::abs(val) <= tol * target) return tau * tau * z;
        if (val < 0.0)
            lo = z;
        else
            hi = z;
        if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi)
            return tau * tau * z; // monotone function, bracket at machine width
        double znext = z - val / phi_real_derivative(z, p);
        if (!(znext > lo) || !(znext < hi)) znext = 0.5 * (lo + hi);
        z = znext;
    }
    throw NoConvergence("growth_rate iteration budget (200) exhausted");
}

DispersionCurve dispersion_curve(const FluidParams& p, int n_points, double tol,
                                 int threads) {
    if (n_points < 2) throw DegenerateInput("dispersion_curve needs n_points >= 2");
    const double tau_star = cutoff_wavenumber(p);
    DispersionCurve curve{clustered_grid(tau_star, n_points),
                          std::vector<double>(n_points),
                          std::vector<double>(n_points),
                          tau_star,
                          p,
                          tol};
    parallel_for(n_points, threads, [&](int i) {
        const double tau = curve.taus[i];
        const double lam = growth_rate(tau, p, tol);
        curve.lambdas[i] = lam;
        curve.residuals[i] = std::abs(symbol_s(Complex(lam, 0.0), tau, p));
    });
    return curve;
}

GrowthSummary max_growth(const FluidParams& p, double tol) {
    const double tau_star = cutoff_wavenumber(p);
    if (!(tol > 0.0)) throw DegenerateInput("max_growth requires tol > 0");
    constexpr int kCoarse = 256;
    const double solver_tol = 1e-12;

    const auto taus = clustered_grid(tau_star, kCoarse);
    double best_tau = taus[0], best_lam = -1.0;
    int idx = 0;
    for (int i = 0; i < kCoarse; ++i) {
        const double lam = growth_rate(taus[i], p, solver_tol);
        if (lam > best_lam) {
            best_lam = lam;
            best_tau = taus[i];
            idx = i;
        }
    }
    double a = idx > 0 ? taus[idx - 1] : tau_star * 1e-12;
    double b = idx + 1 < kCoarse ? taus[idx + 1] : tau_star * (1.0 - 1e-12);

    // golden-section; track the best evaluation ever seen
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = growth_rate(x1, p, solver_tol), f2 = growth_rate(x2, p, solver_tol);
    auto track = [&](double t, double f) {
        if (f > best_lam) {
            best_lam = f;
            best_tau = t;
        }
    };
    track(x1, f1);
    track(x2, f2);
    int guard = 0;
    while (b - a > tol * tau_star && ++guard < 400) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = growth_rate(x2, p, solver_tol);
            track(x2, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = growth_rate(x1, p, solver_tol);
            track(x1, f1);
        }
    }
    return {best_tau, best_lam, b - a};
}

ZeroCount count_zeros_rhp(double tau, const FluidParams& p,
                          const Rectangle& region) {
    if (!(tau > 0.0)) throw DegenerateInput("count_zeros_rhp requires tau > 0");
    if (!(region.re_min > 0.0))
        throw DegenerateInput("region must lie in the open right half-plane");
    if (!(region.re_max > region.re_min) || !(region.im_max > region.im_min))
        throw DegenerateInput("empty region");
    auto f = [&](Complex z) { return symbol_s(z, tau, p); };
    const ContourResult r = winding_count(f, region);
    return {region, r.count, r.residual, r.min_modulus};
}

double analyticity_floor(double tau, const FluidParams& p) {
    const double m = std::min(p.mu1() * tau * tau / p.rho1(),
                              p.mu2() * tau * tau / p.rho2());
    return -kStripSafety * m;
}

std::optional<Complex> rightmost_root(double tau, const FluidParams& p,
                                      double floor_re, double im_bound,
                                      double right_edge, int* strip_count) {
    if (!(tau > 0.0)) throw DegenerateInput("rightmost_root requires tau > 0");
    if (!(floor_re > analyticity_floor(tau, p)) || !(floor_re < 0.0))
        throw DegenerateInput("floor must lie in (analyticity_floor(tau), 0)");

    if (right_edge <= 0.0 || im_bound <= 0.0) {
        double lambda_inf = 0.0;
        if (p.is_heavy_on_top()) {
            // coarse upper bound on the real roots
            const double tau_star = cutoff_wavenumber(p);
            if (tau < tau_star) {
                lambda_inf = growth_rate(tau, p, 1e-10);
            } else {
                for (int i = 1; i < 64; ++i) {
                    const double t = tau_star * i / 64.0;
                    lambda_inf = std::max(lambda_inf, growth_rate(t, p, 1e-8));
                }
            }
        }
        if (right_edge <= 0.0) right_edge = 2.0 * lambda_inf + std::abs(floor_re);
        if (im_bound <= 0.0)
            im_bound = 10.0 * std::max(std::abs(floor_re), lambda_inf);
    }
    const double scale = std::max(std::abs(floor_re), right_edge);

    auto f = [&](Complex z) { return symbol_cleared(z, tau, p); };

    Rectangle strip{floor_re, right_edge, -im_bound, im_bound};
    const ContourResult whole = winding_count_nudged(f, strip, scale);
    if (strip_count) *strip_count = whole.count;
    if (whole.count == 0) return std::nullopt;

    // bisect on the real part: largest x with a zero in [x, right] x strip
    double lo = floor_re, hi = right_edge;
    for (int it = 0; it < 60 && hi - lo > 1e-9 * scale; ++it) {
        const double mid = 0.5 * (lo + hi);
        Rectangle right{mid, right_edge, -im_bound, im_bound};
        const ContourResult c = winding_count_nudged(f, right, scale);
        if (c.count > 0)
            lo = mid;
        else
            hi = mid;
    }

    // localize the imaginary part inside the thin slab; conjugate symmetry
    // lets us search the closed upper half only
    const double slab_lo = lo - 1e-6 * scale;
    double im_lo = 0.0, im_hi = im_bound;
    {
        Rectangle upper{slab_lo, right_edge, 1e-9 * scale, im_bound};
        ContourResult cu{0, 0.0, 0.0, 0.0};
        bool have_upper = false;
        try {
            cu = winding_count(f, upper);
            have_upper = cu.count > 0;
        } catch (const ZeroOnBoundary&) {
            have_upper = false; // root pinned to the real axis
        }
        if (have_upper) {
            for (int it = 0; it < 60 && im_hi - im_lo > 1e-9 * scale; ++it) {
                const double mid = 0.5 * (im_lo + im_hi);
                Rectangle low{slab_lo, right_edge, im_lo == 0.0 ? 1e-9 * scale : im_lo, mid};
                ContourResult c{0, 0.0, 0.0, 0.0};
                bool ok = true;
                try {
                    c = winding_count(f, low);
                } catch (const ZeroOnBoundary&) {
                    ok = false;
                }
                if (ok && c.count > 0)
                    im_hi = mid;
                else
                    im_lo = mid;
            }
        } else {
            im_lo = im_hi = 0.0;
        }
    }

    // polish with a damped secant iteration on the cleared form
    Complex root(lo, 0.5 * (im_lo + im_hi));
    {
        Complex z0 = root, z1 = root + Complex(1e-7 * scale, 1e-7 * scale);
        Complex f0 = f(z0), f1 = f(z1);
        for (int it = 0; it < 60 && std::abs(f1) > 0.0; ++it) {
            const Complex dz = (z1 - z0) * f1 / (f1 - f0);
            Complex z2 = z1 - dz;
            if (!(z2.real() > analyticity_floor(tau, p)))
                z2 = 0.5 * (z1 + Complex(analyticity_floor(tau, p), z1.imag()));
            z0 = z1;
            f0 = f1;
            z1 = z2;
            f1 = f(z1);
            if (std::abs(z1 - z0) <= 1e-14 * std::max(std::abs(z1), scale)) break;
        }
        // accept the polished point only if it improves the residual and
        // stays near the localized cell
        if (std::abs(f(z1)) < std::abs(f(root)) &&
            std::abs(z1 - root) < 1e-2 * scale + 10.0 * (hi - lo))
            root = z1;
    }
    if (root.imag() < 0.0) root = std::conj(root);
    if (std::abs(root.imag()) <= 1e-9 * std::max(std::abs(root.real()), scale))
        root = Complex(root.real(), 0.0);
    return root;
}

} // namespace rtstab
