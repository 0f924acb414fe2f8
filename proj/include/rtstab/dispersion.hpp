#pragma once

#include <optional>
#include <vector>

#include "rtstab/params.hpp"
#include "rtstab/symbol.hpp"

namespace rtstab {

// Axis-aligned rectangle in the complex lambda-plane.
struct Rectangle {
    double re_min, re_max, im_min, im_max;
    double width() const { return re_max - re_min; }
    double height() const { return im_max - im_min; }
};

// tau* = sqrt(gamma_a*(rho2 - rho1)/sigma). Only exists for rho2 > rho1;
// throws StableConfiguration otherwise.
double cutoff_wavenumber(const FluidParams& p);

// c_small = sqrt([[rho]]*gamma_a/(rho1+rho2)): lambda(tau) ~ c_small*sqrt(tau)
// as tau -> 0. c_star = sigma/(mu1+mu2): lambda(tau) ~ c_star*(tau* - tau)
// as tau -> tau*.
struct AsymptoticConstants {
    double c_small;
    double c_star;
};
AsymptoticConstants asymptotic_constants(const FluidParams& p);

// The unique positive growth rate lambda(tau) = tau^2 * zeta(tau), where
// zeta(tau) solves phi(zeta) = -psi(tau) on the monotone real branch.
// Exponential bracket growth followed by safeguarded Newton/bisection;
// stops when |phi(zeta) + psi| <= tol*|psi|.
// Throws OutOfBand for tau outside (0, tau*), NoConvergence after 200 steps.
double growth_rate(double tau, const FluidParams& p, double tol);

struct DispersionCurve {
    std::vector<double> taus;      // strictly increasing, interior to (0, tau*)
    std::vector<double> lambdas;   // all > 0
    std::vector<double> residuals; // |s(lambda(tau), tau)| per point
    double tau_star;
    FluidParams params;
    double tol;
};

// Samples lambda(tau) on n_points interior Chebyshev-clustered points of
// (0, tau*). Clustering resolves the sqrt behavior at tau -> 0 and the
// linear vanishing at tau*.
DispersionCurve dispersion_curve(const FluidParams& p, int n_points, double tol,
                                 int threads = 1);

struct GrowthSummary {
    double tau_max;       // wavenumber of maximal growth
    double lambda_inf;    // maximal growth rate
    double bracket_width; // final uncertainty on tau_max
};

// Coarse 256-point scan plus golden-section refinement of the growth-rate
// maximum; bracket narrowed to width <= tol*tau*.
GrowthSummary max_growth(const FluidParams& p, double tol);

struct ZeroCount {
    Rectangle region;
    int count;               // zeros inside, by the argument principle
    double winding_residual; // |total phase - nearest multiple of 2*pi|
    double boundary_min_modulus;
};

// Counts zeros of s(., tau) inside `region` (required to lie in the open
// right half-plane) by accumulating and unwrapping arg s along the boundary.
// Steps are refined until every phase increment is below pi/2.
// Throws ContourTooCoarse on budget exhaustion, ZeroOnBoundary if the
// boundary modulus dips below 1e-10 of its maximum.
ZeroCount count_zeros_rhp(double tau, const FluidParams& p,
                          const Rectangle& region);

// Searches the strip {floor_re <= Re lambda, |Im lambda| <= im_bound} for
// zeros of the symbol and returns the one with the largest real part, or
// nullopt if the strip contains none. Winding counts use the pole-free
// cleared form (s has poles left of the imaginary axis). im_bound = 0 and
// right_edge = 0 select automatic, parameter-scaled bounds.
// floor_re must satisfy floor_re > -0.9*min_j(mu_j*tau^2/rho_j) so every
// radicand stays off the branch cut.
// If strip_count is non-null it receives the total zero count of the strip.
std::optional<Complex> rightmost_root(double tau, const FluidParams& p,
                                      double floor_re, double im_bound = 0.0,
                                      double right_edge = 0.0,
                                      int* strip_count = nullptr);

// Analyticity-strip safety factor for leftward searches: the radicand
// rho_j*lambda + mu_j*tau^2 hits the cut at Re lambda = -mu_j*tau^2/rho_j.
inline constexpr double kStripSafety = 0.9;

// Leftmost admissible search abscissa for rightmost_root at this tau.
double analyticity_floor(double tau, const FluidParams& p);

} // namespace rtstab
