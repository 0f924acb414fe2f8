#include "rtstab/mode_profile.hpp"

#include <cmath>

#include "rtstab/detail/linalg.hpp"
#include "rtstab/dispersion.hpp"

namespace rtstab {

namespace {

using LComplex = std::complex<long double>;

LComplex widen(Complex z) { return {z.real(), z.imag()}; }

constexpr Complex kI{0.0, 1.0};

} // namespace

Complex ModeProfile::velocity_x(double y) const {
    if (y < 0.0)
        return coeffs_lower[0] * std::exp(tau * y) +
               coeffs_lower[1] * std::exp(m1 * y);
    return coeffs_upper[0] * std::exp(-tau * y) +
           coeffs_upper[1] * std::exp(-m2 * y);
}

Complex ModeProfile::velocity_y(double y) const {
    if (y < 0.0)
        return -kI * coeffs_lower[0] * std::exp(tau * y) -
               kI * tau * coeffs_lower[1] / m1 * std::exp(m1 * y);
    return kI * coeffs_upper[0] * std::exp(-tau * y) +
           kI * tau * coeffs_upper[1] / m2 * std::exp(-m2 * y);
}

Complex ModeProfile::pressure(double y) const {
    if (y < 0.0) return pressure_coeffs[0] * std::exp(tau * y);
    return pressure_coeffs[1] * std::exp(-tau * y);
}

std::complex<long double> ModeProfile::velocity_x_ld(long double y,
                                                     int phase) const {
    const long double t = tau;
    if (phase == 1)
        return widen(coeffs_lower[0]) * std::exp(LComplex(t * y)) +
               widen(coeffs_lower[1]) * std::exp(widen(m1) * y);
    return widen(coeffs_upper[0]) * std::exp(LComplex(-t * y)) +
           widen(coeffs_upper[1]) * std::exp(-widen(m2) * y);
}

std::complex<long double> ModeProfile::velocity_y_ld(long double y,
                                                     int phase) const {
    const LComplex i(0.0L, 1.0L);
    const long double t = tau;
    if (phase == 1)
        return -i * widen(coeffs_lower[0]) * std::exp(LComplex(t * y)) -
               i * t * widen(coeffs_lower[1]) / widen(m1) * std::exp(widen(m1) * y);
    return i * widen(coeffs_upper[0]) * std::exp(LComplex(-t * y)) +
           i * t * widen(coeffs_upper[1]) / widen(m2) * std::exp(-widen(m2) * y);
}

std::complex<long double> ModeProfile::pressure_ld(long double y,
                                                   int phase) const {
    const long double t = tau;
    if (phase == 1) return widen(pressure_coeffs[0]) * std::exp(LComplex(t * y));
    return widen(pressure_coeffs[1]) * std::exp(LComplex(-t * y));
}

TransmissionSystem assemble_transmission(Complex lambda, double tau,
                                         Complex h_amp, const FluidParams& p) {
    const Complex m1 = omega(1, lambda, tau, p) / std::sqrt(p.mu1());
    const Complex m2 = omega(2, lambda, tau, p) / std::sqrt(p.mu2());

    TransmissionSystem sys{};
    auto M = [&sys](int i, int j) -> Complex& {
        return sys.matrix[static_cast<std::size_t>(i) * 6 + j];
    };
    // unknowns x = (a1, A1, a2, A2, P1, P2)

    // [[v]] = 0
    M(0, 0) = -1.0;
    M(0, 1) = -1.0;
    M(0, 2) = 1.0;
    M(0, 3) = 1.0;

    // [[w]] = 0
    M(1, 0) = kI;
    M(1, 1) = kI * tau / m1;
    M(1, 2) = kI;
    M(1, 3) = kI * tau / m2;

    // -[[mu (v' + i tau w)]] = 0, written as the jump itself = 0
    M(2, 0) = -p.mu1() * 2.0 * tau;
    M(2, 1) = -p.mu1() * (m1 * m1 + tau * tau) / m1;
    M(2, 2) = -p.mu2() * 2.0 * tau;
    M(2, 3) = -p.mu2() * (m2 * m2 + tau * tau) / m2;

    // -2[[mu w']] + [[pi]] = (-sigma tau^2 + [[rho]] gamma_a) h
    M(3, 0) = -2.0 * kI * tau * p.mu1();
    M(3, 1) = -2.0 * kI * tau * p.mu1();
    M(3, 2) = 2.0 * kI * tau * p.mu2();
    M(3, 3) = 2.0 * kI * tau * p.mu2();
    M(3, 4) = -1.0;
    M(3, 5) = 1.0;
    sys.rhs[3] = (-p.sigma() * tau * tau + p.jump() * p.gamma_a()) * h_amp;

    // harmonic-pressure closure per phase
    M(4, 0) = p.rho1() * lambda;
    M(4, 4) = kI * tau;
    M(5, 2) = p.rho2() * lambda;
    M(5, 5) = kI * tau;

    return sys;
}

ModeProfile solve_mode(Complex lambda, double tau, Complex h_amp,
                       const FluidParams& p) {
    if (!(tau > 0.0)) throw DegenerateInput("solve_mode requires tau > 0");
    if (lambda == Complex(0.0, 0.0))
        throw DegenerateInput("solve_mode requires lambda != 0 (confluent basis)");
    const double strip = std::min(p.mu1() * tau * tau / p.rho1(),
                                  p.mu2() * tau * tau / p.rho2());
    if (!(lambda.real() > -strip))
        throw DegenerateInput("Re lambda must exceed -min_j(mu_j tau^2/rho_j)");

    const TransmissionSystem sys = assemble_transmission(lambda, tau, h_amp, p);
    std::vector<Complex> a(sys.matrix.begin(), sys.matrix.end());
    const double cond = detail::cond_inf(a, 6);
    if (!(cond < 1e12))
        throw SingularSystem("transmission system condition number above 1e12");

    detail::ComplexLU lu(a, 6);
    const auto x = lu.solve({sys.rhs.begin(), sys.rhs.end()});

    ModeProfile prof;
    prof.tau = tau;
    prof.lambda = lambda;
    prof.h_amp = h_amp;
    prof.coeffs_lower = {x[0], x[1]};
    prof.coeffs_upper = {x[2], x[3]};
    prof.pressure_coeffs = {x[4], x[5]};
    prof.m1 = omega(1, lambda, tau, p) / std::sqrt(p.mu1());
    prof.m2 = omega(2, lambda, tau, p) / std::sqrt(p.mu2());
    return prof;
}

double residual_check(const ModeProfile& profile, const FluidParams& p,
                      int n_samples) {
    if (n_samples < 1) throw DegenerateInput("residual_check needs n_samples >= 1");
    const LComplex i(0.0L, 1.0L);
    const long double t = profile.tau;
    const LComplex lam = widen(profile.lambda);
    // dimensionless step 1e-5 against each phase's fastest variation scale
    const long double h_phase[2] = {
        1e-5L / static_cast<long double>(std::max(profile.tau, std::abs(profile.m1))),
        1e-5L / static_cast<long double>(std::max(profile.tau, std::abs(profile.m2)))};

    double worst = 0.0;
    const double tiny = 1e-290;
    auto score = [&](LComplex res, std::initializer_list<double> scales) {
        double s = tiny;
        for (double v : scales) s = std::max(s, v);
        worst = std::max(worst, static_cast<double>(std::abs(res)) / s);
    };

    auto d2 = [](auto&& f, long double y, long double hh) {
        return (f(y + hh) - 2.0L * f(y) + f(y - hh)) / (hh * hh);
    };
    auto d1c = [](auto&& f, long double y, long double hh) {
        return (f(y + hh) - f(y - hh)) / (2.0L * hh);
    };
    // one-sided 3-point first derivative into the sgn direction
    auto d1s = [](auto&& f, long double y, long double hh, long double sgn) {
        return sgn *
               (-3.0L * f(y) + 4.0L * f(y + sgn * hh) - f(y + 2.0L * sgn * hh)) /
               (2.0L * hh);
    };
    // Richardson pairs cancelling the leading h^2 term
    auto rich2 = [&](auto&& f, long double y, long double h) {
        return (4.0L * d2(f, y, h) - d2(f, y, 2.0L * h)) / 3.0L;
    };
    auto rich1 = [&](auto&& f, long double y, long double h) {
        return (4.0L * d1c(f, y, h) - d1c(f, y, 2.0L * h)) / 3.0L;
    };
    auto rich1s = [&](auto&& f, long double y, long double sgn, long double h) {
        return (4.0L * d1s(f, y, h / 2.0L, sgn) - d1s(f, y, h, sgn)) / 3.0L;
    };

    // interior momentum and incompressibility residuals, sampled over one
    // decay length of the slowest retained mode
    const double decay =
        std::min({profile.tau, profile.m1.real(), profile.m2.real()});
    const long double span = 1.0L / static_cast<long double>(decay);
    for (int phase = 1; phase <= 2; ++phase) {
        const long double sgn = phase == 1 ? -1.0L : 1.0L;
        const long double rho = p.rho(phase), mu = p.mu(phase);
        const auto& cv =
            phase == 1 ? profile.coeffs_lower : profile.coeffs_upper;
        const Complex mm = phase == 1 ? profile.m1 : profile.m2;
        const double pc = std::abs(phase == 1 ? profile.pressure_coeffs[0]
                                              : profile.pressure_coeffs[1]);
        auto v = [&](long double yy) { return profile.velocity_x_ld(yy, phase); };
        auto w = [&](long double yy) { return profile.velocity_y_ld(yy, phase); };
        auto pi = [&](long double yy) { return profile.pressure_ld(yy, phase); };
        // the momentum terms cancel mode by mode; the largest constituent
        // magnitude is the scale the finite differences can resolve against
        auto mode_base = [&](long double y) {
            const double e_tau = std::exp(-std::abs((double)(t * y)));
            const double e_m = std::exp(-mm.real() * std::abs((double)y));
            return std::max(std::abs(cv[0]) * e_tau, std::abs(cv[1]) * e_m);
        };
        auto momentum_floor = [&](long double y) {
            const double e_tau = std::exp(-std::abs((double)(t * y)));
            const double fac = std::max({(double)std::abs(rho * lam),
                                         (double)(mu * t * t),
                                         p.mu(phase) * std::norm(mm)});
            return std::max(fac * mode_base(y), (double)t * pc * e_tau);
        };
        const long double h = h_phase[phase - 1];
        for (int k = 1; k <= n_samples; ++k) {
            const long double y =
                sgn * span * static_cast<long double>(k) / (n_samples + 1);
            const LComplex vv = v(y), ww = w(y), pp = pi(y);
            const double floor_scale = momentum_floor(y);

            // a genuine violation shows at every step size; taking the
            // quieter of two measurements suppresses the roundoff floor
            LComplex r_v_best(0.0L), r_w_best(0.0L), r_d_best(0.0L);
            double s_v = floor_scale, s_w = floor_scale;
            double s_d = (double)t * mode_base(y);
            for (int pass = 0; pass < 2; ++pass) {
                const long double hh = pass == 0 ? h : 2.0L * h;
                const LComplex v2 = rich2(v, y, hh), w2 = rich2(w, y, hh);
                const LComplex p1 = rich1(pi, y, hh), w1 = rich1(w, y, hh);
                const LComplex r_v =
                    rho * lam * vv - mu * (v2 - t * t * vv) + i * t * pp;
                const LComplex r_w = rho * lam * ww - mu * (w2 - t * t * ww) + p1;
                const LComplex r_d = i * t * vv + w1;
                if (pass == 0 || std::abs(r_v) < std::abs(r_v_best)) r_v_best = r_v;
                if (pass == 0 || std::abs(r_w) < std::abs(r_w_best)) r_w_best = r_w;
                if (pass == 0 || std::abs(r_d) < std::abs(r_d_best)) r_d_best = r_d;
                s_v = std::max({s_v, (double)std::abs(rho * lam * vv),
                                (double)std::abs(mu * v2),
                                (double)std::abs(mu * t * t * vv),
                                (double)std::abs(t * pp)});
                s_w = std::max({s_w, (double)std::abs(rho * lam * ww),
                                (double)std::abs(mu * w2),
                                (double)std::abs(mu * t * t * ww),
                                (double)std::abs(p1)});
                s_d = std::max({s_d, (double)std::abs(t * vv),
                                (double)std::abs(w1)});
            }
            score(r_v_best, {s_v});
            score(r_w_best, {s_w});
            score(r_d_best, {s_d});
        }
    }

    // interface conditions at y = 0; traces and one-sided derivatives stay
    // strictly within their phase
    {
        auto v1 = [&](long double yy) { return profile.velocity_x_ld(yy, 1); };
        auto v2f = [&](long double yy) { return profile.velocity_x_ld(yy, 2); };
        auto w1f = [&](long double yy) { return profile.velocity_y_ld(yy, 1); };
        auto w2f = [&](long double yy) { return profile.velocity_y_ld(yy, 2); };

        const LComplex v_lo = v1(0.0L), v_hi = v2f(0.0L);
        const LComplex w_lo = w1f(0.0L), w_hi = w2f(0.0L);
        const LComplex pi_lo = widen(profile.pressure_coeffs[0]);
        const LComplex pi_hi = widen(profile.pressure_coeffs[1]);
        const LComplex dv_lo = rich1s(v1, 0.0L, -1.0L, h_phase[0]);
        const LComplex dv_hi = rich1s(v2f, 0.0L, 1.0L, h_phase[1]);
        const LComplex dw_lo = rich1s(w1f, 0.0L, -1.0L, h_phase[0]);
        const LComplex dw_hi = rich1s(w2f, 0.0L, 1.0L, h_phase[1]);

        const double cscale =
            std::max({std::abs(profile.coeffs_lower[0]), std::abs(profile.coeffs_lower[1]),
                      std::abs(profile.coeffs_upper[0]), std::abs(profile.coeffs_upper[1])});
        // per-side pre-cancellation magnitudes of the trace derivatives
        const double tau_d = profile.tau;
        const double dbase_lo =
            std::max(tau_d * std::abs(profile.coeffs_lower[0]),
                     std::abs(profile.m1) * std::abs(profile.coeffs_lower[1]));
        const double dbase_hi =
            std::max(tau_d * std::abs(profile.coeffs_upper[0]),
                     std::abs(profile.m2) * std::abs(profile.coeffs_upper[1]));
        const double wbase_lo =
            std::max(std::abs(profile.coeffs_lower[0]),
                     tau_d / std::abs(profile.m1) * std::abs(profile.coeffs_lower[1]));
        const double wbase_hi =
            std::max(std::abs(profile.coeffs_upper[0]),
                     tau_d / std::abs(profile.m2) * std::abs(profile.coeffs_upper[1]));

        // [[v]] = 0 and [[w]] = 0
        score(v_hi - v_lo, {(double)std::abs(v_lo), (double)std::abs(v_hi), cscale});
        score(w_hi - w_lo, {(double)std::abs(w_lo), (double)std::abs(w_hi), cscale});

        // tangential stress: [[mu (v' + i tau w)]] = 0, scored against the
        // pre-cancellation constituents
        const LComplex ts_lo = (long double)p.mu1() * (dv_lo + i * t * w_lo);
        const LComplex ts_hi = (long double)p.mu2() * (dv_hi + i * t * w_hi);
        score(ts_hi - ts_lo,
              {(double)std::abs((long double)p.mu1() * dv_lo),
               (double)std::abs((long double)p.mu1() * t * w_lo),
               (double)std::abs((long double)p.mu2() * dv_hi),
               (double)std::abs((long double)p.mu2() * t * w_hi),
               p.mu1() * (dbase_lo + tau_d * wbase_lo),
               p.mu2() * (dbase_hi + tau_d * wbase_hi)});

        // normal stress: -2[[mu w']] + [[pi]] = (-sigma tau^2 + [[rho]] ga) h
        const LComplex jump_mu_wp =
            (long double)p.mu2() * dw_hi - (long double)p.mu1() * dw_lo;
        const LComplex jump_pi = pi_hi - pi_lo;
        const LComplex datum =
            LComplex(-p.sigma() * t * t + p.jump() * p.gamma_a()) *
            widen(profile.h_amp);
        score(-2.0L * jump_mu_wp + jump_pi - datum,
              {(double)std::abs(2.0L * jump_mu_wp), (double)std::abs(pi_hi),
               (double)std::abs(pi_lo), (double)std::abs(datum),
               2.0 * p.mu1() * tau_d * wbase_lo, 2.0 * p.mu2() * tau_d * wbase_hi});
    }
    return worst;
}

Complex profile_determinant(double lambda, double tau, const FluidParams& p) {
    // homogeneous 7x7: the 6 transmission rows with the normal-stress datum
    // moved to the matrix (unknown 7 = h), plus the kinematic row
    // lambda h - w(0) = 0
    const Complex lam(lambda, 0.0);
    const TransmissionSystem sys = assemble_transmission(lam, tau, Complex(1.0), p);
    const Complex m2 = omega(2, lam, tau, p) / std::sqrt(p.mu2());

    std::vector<Complex> a(49, Complex(0.0, 0.0));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            a[static_cast<std::size_t>(i) * 7 + j] =
                sys.matrix[static_cast<std::size_t>(i) * 6 + j];
    // column 6: -(datum coefficient) on the normal-stress row
    a[3 * 7 + 6] = -(-p.sigma() * tau * tau + p.jump() * p.gamma_a());
    // kinematic row: lambda*h - w(0), w(0) from the upper trace
    a[6 * 7 + 2] = -kI;            // -i a2
    a[6 * 7 + 3] = -kI * tau / m2; // -i tau A2/m2
    a[6 * 7 + 6] = lam;

    // row equilibration: positive scaling leaves the sign and zeros intact
    for (int i = 0; i < 7; ++i) {
        double r = 0.0;
        for (int j = 0; j < 7; ++j)
            r = std::max(r, std::abs(a[static_cast<std::size_t>(i) * 7 + j]));
        if (r > 0.0)
            for (int j = 0; j < 7; ++j)
                a[static_cast<std::size_t>(i) * 7 + j] /= r;
    }

    detail::ComplexLU lu(a, 7);
    return lu.det();
}

double dispersion_from_profile(double tau, const FluidParams& p, double tol) {
    const double tau_star = cutoff_wavenumber(p);
    if (!(tau > 0.0) || !(tau < tau_star))
        throw OutOfBand("tau outside the unstable band (0, tau*)");
    if (!(tol > 0.0)) throw DegenerateInput("tol must be > 0");

    const double seed = growth_rate(tau, p, 1e-10);
    double lo = 0.5 * seed, hi = 1.5 * seed;
    double flo = profile_determinant(lo, tau, p).real();
    double fhi = profile_determinant(hi, tau, p).real();
    if (flo * fhi > 0.0)
        throw NoConvergence("no determinant sign change in the seeded bracket");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol * mid) return mid;
        const double fm = profile_determinant(mid, tau, p).real();
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    (void)fhi;
    throw NoConvergence("determinant bisection budget exhausted");
}

Complex pressure_split(Complex f_hat, Complex g0_hat, double tau, double y,
                       const FluidParams& p) {
    if (!(tau > 0.0)) throw DegenerateInput("pressure_split requires tau > 0");
    const double sign_y = y > 0.0 ? 1.0 : (y < 0.0 ? -1.0 : 0.0);
    const Complex riesz = f_hat; // aligned-mode multiplier is the identity
    return riesz + sign_y * std::exp(-tau * std::abs(y)) * g0_hat / p.rho_sum();
}

} // namespace rtstab
