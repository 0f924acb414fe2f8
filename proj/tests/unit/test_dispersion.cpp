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

// Brute-force growth-rate oracle: dense scan of phi over [1e-6, 1e3],
// sign-change bracketing of phi(z) + psi(tau), then plain bisection.
// Independent of the solver's Newton path.
double growth_oracle(double tau, const FluidParams& p) {
    const double target = -psi(tau, p);
    const int n = 1000000;
    const double z_lo = 1e-6, z_hi = 1e3;
    double lo = 0.0, hi = -1.0;
    double prev = phi_real(z_lo, p) - target;
    for (int i = 1; i <= n; ++i) {
        const double z = z_lo + (z_hi - z_lo) * i / n;
        const double cur = phi_real(z, p) - target;
        if (prev <= 0.0 && cur > 0.0) {
            lo = z_lo + (z_hi - z_lo) * (i - 1) / n;
            hi = z;
            break;
        }
        prev = cur;
    }
    REQUIRE(hi > 0.0);
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        (phi_real(mid, p) - target <= 0.0 ? lo : hi) = mid;
    }
    return tau * tau * 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("cutoff_wavenumber: formula and stable rejection") {
    CHECK(cutoff_wavenumber(FluidParams(1, 2, 1, 1, 1, 1)) == doctest::Approx(1.0));
    CHECK(cutoff_wavenumber(FluidParams(1, 3, 1, 1, 1, 1)) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(cutoff_wavenumber(FluidParams(2, 2, 1, 1, 1, 1)),
                    StableConfiguration);
}

TEST_CASE("growth_rate: brute-force oracle at tau = 1") {
    const double oracle = growth_oracle(1.0, kUnit);
    // frozen anchor for the unit parameter set
    CHECK(oracle == doctest::Approx(0.195075075017199).epsilon(1e-9));
    const double lam = growth_rate(1.0, kUnit, 1e-12);
    CHECK(std::abs(lam - oracle) <= 1e-9 * oracle);
}

TEST_CASE("growth_rate: band-edge asymptotics") {
    const double tau_star = cutoff_wavenumber(kUnit);
    const auto c = asymptotic_constants(kUnit);

    const double tau_small = 1e-6 * tau_star;
    const double lam_small = growth_rate(tau_small, kUnit, 1e-12);
    CHECK(lam_small / std::sqrt(tau_small) ==
          doctest::Approx(c.c_small).epsilon(0.01));

    const double tau_edge = (1.0 - 1e-3) * tau_star;
    const double lam_edge = growth_rate(tau_edge, kUnit, 1e-12);
    CHECK(lam_edge / (tau_star - tau_edge) ==
          doctest::Approx(c.c_star).epsilon(0.02));
}

TEST_CASE("growth_rate: out-of-band rejection") {
    const double tau_star = cutoff_wavenumber(kUnit);
    CHECK_THROWS_AS(growth_rate(0.0, kUnit, 1e-10), OutOfBand);
    CHECK_THROWS_AS(growth_rate(tau_star, kUnit, 1e-10), OutOfBand);
    CHECK_THROWS_AS(growth_rate(2.0 * tau_star, kUnit, 1e-10), OutOfBand);
    CHECK_THROWS_AS(growth_rate(1.0, FluidParams(2, 1, 1, 1, 1, 1), 1e-10),
                    StableConfiguration);
}

TEST_CASE("dispersion_curve: residuals, positivity, edge behavior") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 3; ++rep) {
        const FluidParams p = random_unstable(rng);
        const auto c = dispersion_curve(p, 64, 1e-11);
        const auto ac = asymptotic_constants(p);
        const double k0 = k_of_zeta(Complex(0.0), p).real();
        for (std::size_t i = 0; i < c.taus.size(); ++i) {
            CHECK(c.lambdas[i] > 0.0);
            if (i) CHECK(c.taus[i] > c.taus[i - 1]);
            const double bound =
                10.0 * 1e-11 * c.taus[i] * c.taus[i] * std::abs(psi(c.taus[i], p)) * k0;
            CHECK(c.residuals[i] <= bound);
        }
        // curve tends to zero at both band edges, matching the asymptotes
        const double t0 = c.taus.front(), t1 = c.taus.back();
        CHECK(c.lambdas.front() / std::sqrt(t0) ==
              doctest::Approx(ac.c_small).epsilon(0.05));
        CHECK(c.lambdas.back() / (c.tau_star - t1) ==
              doctest::Approx(ac.c_star).epsilon(0.05));
    }
}

TEST_CASE("dispersion_curve: stable rejection and minimal grid") {
    CHECK_THROWS_AS(dispersion_curve(FluidParams(3, 1, 1, 1, 1, 1), 16, 1e-10),
                    StableConfiguration);
    const auto c = dispersion_curve(kUnit, 2, 1e-10);
    CHECK(c.taus.size() == 2);
    CHECK(c.lambdas[0] > 0.0);
    CHECK(c.lambdas[1] > 0.0);
}

TEST_CASE("dispersion_curve: thread count does not change results") {
    const auto a = dispersion_curve(kUnit, 33, 1e-11, 1);
    const auto b = dispersion_curve(kUnit, 33, 1e-11, 4);
    for (std::size_t i = 0; i < a.taus.size(); ++i) {
        CHECK(a.taus[i] == b.taus[i]);
        CHECK(a.lambdas[i] == b.lambdas[i]);
    }
}

TEST_CASE("max_growth: dominates a dense independent grid") {
    const GrowthSummary g = max_growth(kUnit, 1e-9);
    CHECK(g.lambda_inf > 0.0);
    CHECK(g.tau_max > 0.0);
    CHECK(g.tau_max < cutoff_wavenumber(kUnit));
    CHECK(g.bracket_width <= 1e-9 * cutoff_wavenumber(kUnit));
    CHECK(g.lambda_inf ==
          doctest::Approx(growth_rate(g.tau_max, kUnit, 1e-12)).epsilon(1e-10));

    const double tau_star = cutoff_wavenumber(kUnit);
    double dense_max = 0.0;
    for (int i = 1; i < 10000; ++i) {
        const double tau = tau_star * i / 10000.0;
        dense_max = std::max(dense_max, growth_rate(tau, kUnit, 1e-10));
    }
    CHECK(g.lambda_inf >= dense_max - 1e-10);
}

TEST_CASE("max_growth: joint sigma/gravity scaling keeps the cutoff") {
    // doubling sigma and gamma_a leaves tau* fixed; lambda_inf re-solves
    const FluidParams scaled(1.0, 3.0, 1.0, 1.0, 2.0, 2.0);
    CHECK(cutoff_wavenumber(scaled) == doctest::Approx(cutoff_wavenumber(kUnit)));
    const GrowthSummary g = max_growth(scaled, 1e-9);
    const double tau_star = cutoff_wavenumber(scaled);
    double dense_max = 0.0;
    for (int i = 1; i < 2000; ++i) {
        const double tau = tau_star * i / 2000.0;
        dense_max = std::max(dense_max, growth_rate(tau, scaled, 1e-10));
    }
    CHECK(g.lambda_inf >= dense_max - 1e-10);
    CHECK(g.lambda_inf == doctest::Approx(dense_max).epsilon(1e-6));
}

TEST_CASE("count_zeros_rhp: one zero inside the band, none outside") {
    const GrowthSummary g = max_growth(kUnit, 1e-8);
    const double tau_star = cutoff_wavenumber(kUnit);
    const Rectangle region{1e-4 * g.lambda_inf, 10.0 * g.lambda_inf,
                           -5.0 * g.lambda_inf, 5.0 * g.lambda_inf};

    for (double f : {0.1, 0.5, 0.9}) {
        const ZeroCount z = count_zeros_rhp(f * tau_star, kUnit, region);
        CHECK(z.count == 1);
        CHECK(z.winding_residual < 0.1);
    }
    for (double f : {1.05, 2.0, 6.0}) {
        const ZeroCount z = count_zeros_rhp(f * tau_star, kUnit, region);
        CHECK(z.count == 0);
    }
    const FluidParams stable(3.0, 1.0, 0.5, 2.0, 1.0, 1.0);
    for (double tau : {0.2, 1.0, 5.0}) {
        const ZeroCount z = count_zeros_rhp(tau, stable, region);
        CHECK(z.count == 0);
    }
}

TEST_CASE("count_zeros_rhp: count stable under doubling the rectangle height") {
    const GrowthSummary g = max_growth(kUnit, 1e-8);
    const double tau = 0.5 * cutoff_wavenumber(kUnit);
    const Rectangle r1{1e-4 * g.lambda_inf, 10.0 * g.lambda_inf,
                       -5.0 * g.lambda_inf, 5.0 * g.lambda_inf};
    const Rectangle r2{r1.re_min, r1.re_max, 2.0 * r1.im_min, 2.0 * r1.im_max};
    CHECK(count_zeros_rhp(tau, kUnit, r1).count ==
          count_zeros_rhp(tau, kUnit, r2).count);
}

TEST_CASE("count_zeros_rhp: rejects regions touching the left half-plane") {
    CHECK_THROWS_AS(count_zeros_rhp(1.0, kUnit, Rectangle{-1.0, 1.0, -1.0, 1.0}),
                    DegenerateInput);
}

TEST_CASE("rightmost_root: matches growth_rate inside the band") {
    const double tau_star = cutoff_wavenumber(kUnit);
    for (double f : {0.3, 0.7}) {
        const double tau = f * tau_star;
        const double floor_re = 0.5 * analyticity_floor(tau, kUnit);
        const auto root = rightmost_root(tau, kUnit, floor_re);
        REQUIRE(root.has_value());
        const double lam = growth_rate(tau, kUnit, 1e-12);
        CHECK(root->imag() == 0.0);
        CHECK(std::abs(root->real() - lam) <= 1e-8 * lam);
    }
}

TEST_CASE("rightmost_root: stable side decays") {
    const double tau_star = cutoff_wavenumber(kUnit);
    const double tau = 1.1 * tau_star;
    const double floor_re = 0.9 * analyticity_floor(tau, kUnit);
    const auto root = rightmost_root(tau, kUnit, floor_re);
    if (root) {
        CHECK(root->real() < 0.0);
        // Schwarz symmetry: the conjugate is a root too
        const Complex s = symbol_s(std::conj(*root), tau, kUnit);
        CHECK(std::abs(s) <= 1e-6 * std::max(1.0, std::abs(root->real())));
    }
}

TEST_CASE("rightmost_root: floor precondition enforced") {
    CHECK_THROWS_AS(rightmost_root(1.0, kUnit, 10.0 * analyticity_floor(1.0, kUnit)),
                    DegenerateInput);
}

TEST_CASE("asymptotic_constants: closed forms") {
    const auto c = asymptotic_constants(kUnit);
    CHECK(c.c_small == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(c.c_star == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(asymptotic_constants(FluidParams(1, 1, 1, 1, 1, 1)),
                    StableConfiguration);
}

TEST_CASE("realness of the band root at finite precision") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 5; ++rep) {
        const FluidParams p = random_unstable(rng);
        const double tau_star = cutoff_wavenumber(p);
        std::uniform_real_distribution<double> F(0.1, 0.9);
        const double tau = F(rng) * tau_star;
        const auto root = rightmost_root(tau, p, 0.5 * analyticity_floor(tau, p));
        REQUIRE(root.has_value());
        CHECK(std::abs(root->imag()) <= 1e-9 * std::abs(root->real()));
    }
}

TEST_CASE("determinant cross-check: profile solver agrees with the symbol") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 5; ++rep) {
        const FluidParams p = random_unstable(rng);
        std::uniform_real_distribution<double> F(0.15, 0.85);
        const double tau = F(rng) * cutoff_wavenumber(p);
        const double a = growth_rate(tau, p, 1e-12);
        const double b = dispersion_from_profile(tau, p, 1e-12);
        CHECK(std::abs(a - b) <= 1e-8 * a);
    }
}
