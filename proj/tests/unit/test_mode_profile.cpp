#include <doctest.h>

#include <cmath>
#include <random>

#include "rtstab/dispersion.hpp"
#include "rtstab/mode_profile.hpp"

using namespace rtstab;

namespace {

const FluidParams kUnit(1.0, 3.0, 1.0, 1.0, 1.0, 1.0);

FluidParams random_unstable(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.2, 4.0);
    for (;;) {
        const double r1 = U(rng), r2 = U(rng);
        if (r2 > 1.05 * r1)
            return FluidParams(r1, r2, U(rng), U(rng), U(rng), U(rng));
    }
}

} // namespace

TEST_CASE("solve_mode: homogeneous data gives the zero profile") {
    const ModeProfile prof = solve_mode(Complex(0.8, 0.1), 1.2, Complex(0.0), kUnit);
    for (const Complex& c : prof.coeffs_lower) CHECK(std::abs(c) == 0.0);
    for (const Complex& c : prof.coeffs_upper) CHECK(std::abs(c) == 0.0);
    for (const Complex& c : prof.pressure_coeffs) CHECK(std::abs(c) == 0.0);
    CHECK(residual_check(prof, kUnit, 20) == 0.0);
}

TEST_CASE("solve_mode: linearity in the interface amplitude") {
    const Complex lam(0.6, 0.0);
    const ModeProfile a = solve_mode(lam, 1.0, Complex(1.0, 0.5), kUnit);
    const ModeProfile b = solve_mode(lam, 1.0, Complex(2.0, 1.0), kUnit);
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(b.coeffs_lower[i] - 2.0 * a.coeffs_lower[i]) <=
              1e-13 * std::abs(b.coeffs_lower[i]));
        CHECK(std::abs(b.coeffs_upper[i] - 2.0 * a.coeffs_upper[i]) <=
              1e-13 * std::abs(b.coeffs_upper[i]));
    }
}

TEST_CASE("solve_mode: precondition violations") {
    CHECK_THROWS_AS(solve_mode(Complex(0.0), 1.0, Complex(1.0), kUnit),
                    DegenerateInput);
    CHECK_THROWS_AS(solve_mode(Complex(1.0), 0.0, Complex(1.0), kUnit),
                    DegenerateInput);
    // Re lambda at the branch cut of the radicands
    CHECK_THROWS_AS(solve_mode(Complex(-10.0, 0.0), 1.0, Complex(1.0), kUnit),
                    DegenerateInput);
}

TEST_CASE("residual_check: solved profiles satisfy the PDE to 1e-8") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> L(0.2, 5.0), T(0.3, 2.5);
    for (int rep = 0; rep < 8; ++rep) {
        const FluidParams p = random_unstable(rng);
        const Complex lam(L(rng), rep % 3 == 0 ? 0.4 : 0.0);
        const ModeProfile prof = solve_mode(lam, T(rng), Complex(1.0, 0.3), p);
        CHECK(residual_check(prof, p, 20) <= 1e-8);
    }
}

TEST_CASE("residual_check: sensitive to a perturbed coefficient") {
    const ModeProfile prof = solve_mode(Complex(0.8), 1.0, Complex(1.0), kUnit);
    ModeProfile bad = prof;
    bad.coeffs_upper[0] += Complex(1e-3, 0.0);
    CHECK(residual_check(bad, kUnit, 20) >= 1e-5);

    ModeProfile bad2 = prof;
    bad2.pressure_coeffs[1] += Complex(0.0, 1e-3);
    CHECK(residual_check(bad2, kUnit, 20) >= 1e-5);
}

TEST_CASE("incompressibility holds pointwise for solved profiles") {
    const ModeProfile prof = solve_mode(Complex(1.1), 0.9, Complex(0.7, -0.2), kUnit);
    // finite-difference w' against -i tau v at 20 points per phase
    using LC = std::complex<long double>;
    const long double h = 1e-5L;
    for (int phase = 1; phase <= 2; ++phase) {
        const long double sgn = phase == 1 ? -1.0L : 1.0L;
        auto w = [&](long double yy) { return prof.velocity_y_ld(yy, phase); };
        for (int k = 1; k <= 20; ++k) {
            const long double y = sgn * 0.05L * k;
            auto d1 = [&](long double hh) {
                return (w(y + hh) - w(y - hh)) / (2.0L * hh);
            };
            const LC wp = (4.0L * d1(h) - d1(2.0L * h)) / 3.0L;
            const LC div = LC(0.0L, static_cast<long double>(prof.tau)) *
                               prof.velocity_x_ld(y, phase) +
                           wp;
            const double scale = std::max(
                (double)std::abs(wp),
                (double)std::abs(static_cast<long double>(prof.tau) *
                                 prof.velocity_x_ld(y, phase)));
            if (scale > 0.0) CHECK((double)std::abs(div) / scale <= 1e-10);
        }
    }
}

TEST_CASE("normal-stress balance holds at the interface") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> T(0.3, 2.0), L(0.3, 3.0);
    for (int rep = 0; rep < 6; ++rep) {
        const FluidParams p = random_unstable(rng);
        const double tau = T(rng);
        const Complex h_amp(1.0, 0.4);
        const ModeProfile prof = solve_mode(Complex(L(rng)), tau, h_amp, p);
        // analytic one-sided traces of w' from the ansatz
        const Complex kI(0.0, 1.0);
        const Complex wp_lo = -kI * tau * (prof.coeffs_lower[0] + prof.coeffs_lower[1]);
        const Complex wp_hi = -kI * tau * (prof.coeffs_upper[0] + prof.coeffs_upper[1]);
        const Complex lhs = -2.0 * (p.mu2() * wp_hi - p.mu1() * wp_lo) +
                            (prof.pressure_coeffs[1] - prof.pressure_coeffs[0]);
        const Complex rhs = (-p.sigma() * tau * tau + p.jump() * p.gamma_a()) * h_amp;
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), std::abs(rhs)));
    }
}

TEST_CASE("profile_determinant: real for real lambda") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> L(0.05, 4.0), T(0.2, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        const FluidParams p = random_unstable(rng);
        const Complex det = profile_determinant(L(rng), T(rng), p);
        CHECK(std::abs(det.imag()) <= 1e-10 * std::max(1.0, std::abs(det.real())));
    }
}

TEST_CASE("dispersion_from_profile: agrees with the symbol root") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 6; ++rep) {
        const FluidParams p = random_unstable(rng);
        std::uniform_real_distribution<double> F(0.15, 0.85);
        const double tau = F(rng) * cutoff_wavenumber(p);
        const double from_profile = dispersion_from_profile(tau, p, 1e-12);
        const double from_symbol = growth_rate(tau, p, 1e-12);
        CHECK(std::abs(from_profile - from_symbol) <= 1e-8 * from_symbol);
    }
}

TEST_CASE("dispersion_from_profile: vanishing root toward the cutoff") {
    const double tau_star = cutoff_wavenumber(kUnit);
    const double lam = dispersion_from_profile((1.0 - 1e-4) * tau_star, kUnit, 1e-10);
    CHECK(lam > 0.0);
    CHECK(lam < 1e-3);
}

TEST_CASE("dispersion_from_profile: stable configuration rejected") {
    CHECK_THROWS_AS(dispersion_from_profile(1.0, FluidParams(3, 1, 1, 1, 1, 1), 1e-10),
                    StableConfiguration);
}

TEST_CASE("pressure_split: jump datum, decay and the semigroup value") {
    const FluidParams p(1.0, 3.0, 1.0, 1.0, 1.0, 1.0); // rho_sum = 4

    // [[rho pi2]] recovers g0
    const double h = 1e-13;
    const Complex up = pressure_split(Complex(0.0), Complex(1.0), 1.0, h, p);
    const Complex dn = pressure_split(Complex(0.0), Complex(1.0), 1.0, -h, p);
    CHECK(std::abs(p.rho2() * up - p.rho1() * dn - Complex(1.0)) <= 1e-12);

    // exponential decay at rate tau
    const double tau = 0.7;
    const Complex a = pressure_split(Complex(0.0), Complex(1.0), tau, 2.0, p);
    const Complex b = pressure_split(Complex(0.0), Complex(1.0), tau, 3.0, p);
    CHECK(std::abs(a / b) == doctest::Approx(std::exp(tau)).epsilon(1e-12));

    // semigroup value at y = 1, tau = 1
    const Complex c = pressure_split(Complex(0.0), Complex(1.0), 1.0, 1.0, p);
    CHECK(c.real() == doctest::Approx(std::exp(-1.0) / 4.0).epsilon(1e-14));
    CHECK(c.imag() == 0.0);

    CHECK_THROWS_AS(pressure_split(Complex(0.0), Complex(1.0), 0.0, 1.0, p),
                    DegenerateInput);
}
