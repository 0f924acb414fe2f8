#pragma once

#include "rtstab/complex_branch.hpp"
#include "rtstab/params.hpp"

namespace rtstab {

// Underflow guard for denominators; evaluating below this signals a pole.
inline constexpr double kDenominatorFloor = 1e-300;

// omega_j = sqrt(rho_j*lambda + mu_j*tau^2), principal branch.
Complex omega(int phase, Complex lambda, double tau, const FluidParams& p);

// eta_1 = sqrt(mu1)*omega_1 + mu2*tau,  eta_2 = sqrt(mu2)*omega_2 + mu1*tau.
// Note the crossed viscosity indices in the additive term.
Complex eta(int phase, Complex lambda, double tau, const FluidParams& p);

// One full evaluation of the boundary symbol with its intermediates.
// `value` is reproducible bit-for-bit from (lambda, tau, params): the
// rounding order is fixed (omega_1, omega_2, eta_1, eta_2, then s).
struct SymbolEval {
    Complex lambda;
    double tau;
    Complex value;
    Complex omega1, omega2;
    Complex eta1, eta2;
};

SymbolEval evaluate_symbol(Complex lambda, double tau, const FluidParams& p);

// Boundary symbol
//   s(lambda, tau) = lambda + (sigma*tau^2 - [[rho]]*gamma_a)
//                    / ((rho1+rho2)*lambda/tau + 4*eta1*eta2/(eta1+eta2)),
// extended by continuity to s(lambda, 0) = lambda.
// Throws DegenerateInput at (0, 0), DivisionBreakdown near poles.
Complex symbol_s(Complex lambda, double tau, const FluidParams& p);

// Denominator of the symbol's fraction (tau > 0). Zero-free for
// Re lambda >= 0; its zeros in the left half-plane are poles of s.
Complex symbol_denominator(Complex lambda, double tau, const FluidParams& p);

// Cleared (pole-free) form lambda*denominator + (sigma*tau^2 - [[rho]]*gamma_a).
// Same zeros as s for tau != tau*; analytic wherever the radicands stay off
// the negative real axis.
Complex symbol_cleared(Complex lambda, double tau, const FluidParams& p);

// psi(tau) = sigma/((rho1+rho2)*tau) - (rho2-rho1)*gamma_a/((rho1+rho2)*tau^3).
// Vanishes at the cutoff wavenumber; negative on (0, tau*) when rho2 > rho1.
double psi(double tau, const FluidParams& p);

// Scaled abbreviations in the variable zeta = lambda/tau^2:
//   omega_j(zeta) = sqrt(rho_j*zeta + mu_j)
//   eta_1(zeta)   = sqrt(mu1)*omega_1(zeta) + mu2,   eta_2 crossed likewise.
Complex omega_scaled(int phase, Complex zeta, const FluidParams& p);
Complex eta_scaled(int phase, Complex zeta, const FluidParams& p);

// k(zeta) with 1/k(zeta) = zeta + (4/(rho1+rho2))*eta1*eta2/(eta1+eta2),
// all in scaled variables. Real positive for real zeta >= 0;
// arg k(zeta) in (-pi/2, 0] for arg zeta in [0, pi/2].
Complex k_of_zeta(Complex zeta, const FluidParams& p);

// phi(zeta) = zeta/k(zeta). Zero at zeta = 0, real and strictly increasing
// on [0, inf), ~ zeta^2 at infinity. The scaling identity
//   s(tau^2*zeta, tau) = tau^2*(zeta + psi(tau)*k(zeta))
// ties it back to the unscaled symbol.
Complex phi(Complex zeta, const FluidParams& p);

// Real-axis restriction of phi, used by the growth-rate solver.
double phi_real(double zeta, const FluidParams& p);

} // namespace rtstab
