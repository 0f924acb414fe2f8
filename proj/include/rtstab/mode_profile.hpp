#pragma once

#include <array>

#include "rtstab/params.hpp"
#include "rtstab/symbol.hpp"

namespace rtstab {

// Decaying solution of one Fourier mode of the two-phase Stokes transmission
// problem in the vertical variable y. Phase 1 occupies y < 0, phase 2 y > 0.
//
// Per-phase basis (exponents chosen so every retained mode decays away from
// the interface, Re m_j > 0 with m_j = omega_j/sqrt(mu_j)):
//   phase 1:  v = c[0] e^{tau y} + c[1] e^{m1 y}
//   phase 2:  v = c[0] e^{-tau y} + c[1] e^{-m2 y}
// The vertical velocity amplitudes follow from incompressibility
// (i tau v + w' = 0) and the pressure is the harmonic pair e^{+-tau y}.
struct ModeProfile {
    double tau;
    Complex lambda;
    Complex h_amp;
    std::array<Complex, 2> coeffs_lower;    // {a1, A1}
    std::array<Complex, 2> coeffs_upper;    // {a2, A2}
    std::array<Complex, 2> pressure_coeffs; // {P1, P2}
    Complex m1, m2;                         // decay exponents, Re > 0

    // trace evaluations; y < 0 selects phase 1, y >= 0 phase 2
    Complex velocity_x(double y) const; // v-hat
    Complex velocity_y(double y) const; // w-hat
    Complex pressure(double y) const;   // pi-hat

    // extended-precision, phase-explicit evaluations for the
    // finite-difference oracle (phase in {1, 2}; y = 0 allowed in both,
    // giving the one-sided trace)
    std::complex<long double> velocity_x_ld(long double y, int phase) const;
    std::complex<long double> velocity_y_ld(long double y, int phase) const;
    std::complex<long double> pressure_ld(long double y, int phase) const;
};

// The assembled 6x6 jump/decay system on (a1, A1, a2, A2, P1, P2).
// Rows, in order: [[v]] = 0, [[w]] = 0, tangential stress jump,
// normal stress jump (datum (-sigma tau^2 + [[rho]] gamma_a) h on the rhs),
// and the two incompressibility/pressure closure rows
// rho_j lambda a_j + i tau P_j = 0.
struct TransmissionSystem {
    std::array<Complex, 36> matrix; // row-major
    std::array<Complex, 6> rhs;
};

TransmissionSystem assemble_transmission(Complex lambda, double tau,
                                         Complex h_amp, const FluidParams& p);

// Unique decaying mode solution for interface amplitude h_amp. Requires
// lambda != 0 and Re lambda > -min_j(mu_j tau^2/rho_j) (radicands off the
// cut). Throws SingularSystem when cond_inf of the system exceeds 1e12.
ModeProfile solve_mode(Complex lambda, double tau, Complex h_amp,
                       const FluidParams& p);

// Independent verification of a profile against the mode ODEs and jump
// conditions: momentum equations sampled at n_samples points per phase with
// Richardson-extrapolated finite differences (base step 1e-5), plus all
// interface conditions at y = 0. Returns the maximum relative residual.
double residual_check(const ModeProfile& profile, const FluidParams& p,
                      int n_samples);

// Growth rate recovered from the transmission solve alone: appends the
// kinematic row lambda*h = w(0) to form the homogeneous 7x7 system and
// bisects its (real) determinant in lambda. Bracket seeded from
// growth_rate(tau) +- 50%. The agreement with growth_rate is the module's
// cross-validation of the symbol.
double dispersion_from_profile(double tau, const FluidParams& p, double tol);

// The 7x7 determinant at real lambda; conjugate-symmetric coefficients make
// it real up to rounding (exposed for tests).
Complex profile_determinant(double lambda, double tau, const FluidParams& p);

// Mode-wise two-part pressure: the Riesz-projected forcing part plus the
// odd harmonic extension sign(y) e^{-tau|y|} g0/(rho1+rho2) of the jump
// datum g0. For a mode aligned with its carrier the Riesz multiplier
// xi (x) xi / |xi|^2 is the identity.
Complex pressure_split(Complex f_hat, Complex g0_hat, double tau, double y,
                       const FluidParams& p);

} // namespace rtstab
