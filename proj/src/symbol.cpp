#include "rtstab/symbol.hpp"

#include <cmath>

namespace rtstab {

Complex omega(int phase, Complex lambda, double tau, const FluidParams& p) {
    return sqrt_principal(p.rho(phase) * lambda + p.mu(phase) * (tau * tau));
}

Complex eta(int phase, Complex lambda, double tau, const FluidParams& p) {
    if (phase == 1)
        return std::sqrt(p.mu1()) * omega(1, lambda, tau, p) + p.mu2() * tau;
    return std::sqrt(p.mu2()) * omega(2, lambda, tau, p) + p.mu1() * tau;
}

SymbolEval evaluate_symbol(Complex lambda, double tau, const FluidParams& p) {
    SymbolEval e;
    e.lambda = lambda;
    e.tau = tau;
    if (tau == 0.0) {
        if (lambda == Complex(0.0, 0.0))
            throw DegenerateInput("symbol_s undefined at (lambda, tau) = (0, 0)");
        e.omega1 = sqrt_principal(p.rho1() * lambda);
        e.omega2 = sqrt_principal(p.rho2() * lambda);
        e.eta1 = std::sqrt(p.mu1()) * e.omega1;
        e.eta2 = std::sqrt(p.mu2()) * e.omega2;
        e.value = lambda; // continuity limit: the fraction vanishes as tau -> 0+
        return e;
    }
    // fixed rounding order: omega1, omega2, eta1, eta2, denominator, s
    e.omega1 = omega(1, lambda, tau, p);
    e.omega2 = omega(2, lambda, tau, p);
    e.eta1 = std::sqrt(p.mu1()) * e.omega1 + p.mu2() * tau;
    e.eta2 = std::sqrt(p.mu2()) * e.omega2 + p.mu1() * tau;
    const Complex den =
        p.rho_sum() * lambda / tau + 4.0 * e.eta1 * e.eta2 / (e.eta1 + e.eta2);
    if (std::abs(den) < kDenominatorFloor)
        throw DivisionBreakdown("symbol denominator underflow (pole)");
    e.value = lambda + (p.sigma() * tau * tau - p.jump() * p.gamma_a()) / den;
    return e;
}

Complex symbol_s(Complex lambda, double tau, const FluidParams& p) {
    return evaluate_symbol(lambda, tau, p).value;
}

Complex symbol_denominator(Complex lambda, double tau, const FluidParams& p) {
    const Complex e1 = eta(1, lambda, tau, p);
    const Complex e2 = eta(2, lambda, tau, p);
    return p.rho_sum() * lambda / tau + 4.0 * e1 * e2 / (e1 + e2);
}

Complex symbol_cleared(Complex lambda, double tau, const FluidParams& p) {
    return lambda * symbol_denominator(lambda, tau, p) +
           (p.sigma() * tau * tau - p.jump() * p.gamma_a());
}

double psi(double tau, const FluidParams& p) {
    if (!(tau > 0.0)) throw DegenerateInput("psi requires tau > 0");
    const double rs = p.rho_sum();
    return p.sigma() / (rs * tau) - p.jump() * p.gamma_a() / (rs * tau * tau * tau);
}

Complex omega_scaled(int phase, Complex zeta, const FluidParams& p) {
    return sqrt_principal(p.rho(phase) * zeta + p.mu(phase));
}

Complex eta_scaled(int phase, Complex zeta, const FluidParams& p) {
    if (phase == 1)
        return std::sqrt(p.mu1()) * omega_scaled(1, zeta, p) + p.mu2();
    return std::sqrt(p.mu2()) * omega_scaled(2, zeta, p) + p.mu1();
}

Complex k_of_zeta(Complex zeta, const FluidParams& p) {
    const Complex e1 = eta_scaled(1, zeta, p);
    const Complex e2 = eta_scaled(2, zeta, p);
    const Complex inv_k = zeta + (4.0 / p.rho_sum()) * e1 * e2 / (e1 + e2);
    if (std::abs(inv_k) < kDenominatorFloor)
        throw DivisionBreakdown("1/k underflow");
    return 1.0 / inv_k;
}

Complex phi(Complex zeta, const FluidParams& p) {
    const Complex e1 = eta_scaled(1, zeta, p);
    const Complex e2 = eta_scaled(2, zeta, p);
    const Complex inv_k = zeta + (4.0 / p.rho_sum()) * e1 * e2 / (e1 + e2);
    return zeta * inv_k;
}

double phi_real(double zeta, const FluidParams& p) {
    const double e1 =
        std::sqrt(p.mu1()) * std::sqrt(p.rho1() * zeta + p.mu1()) + p.mu2();
    const double e2 =
        std::sqrt(p.mu2()) * std::sqrt(p.rho2() * zeta + p.mu2()) + p.mu1();
    return zeta * (zeta + (4.0 / p.rho_sum()) * e1 * e2 / (e1 + e2));
}

} // namespace rtstab
