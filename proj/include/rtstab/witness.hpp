#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rtstab/grid.hpp"
#include "rtstab/params.hpp"

namespace rtstab {

// Band-limited window chi_eps sampled on the grid: its transform is the
// standard smooth bump exp(-1/(1-|xi/eps|^2)) supported in the ball of
// radius eps, and the field is normalized so chi(0) = 1. The spectral
// support is exact (coefficients vanish identically outside the ball).
struct WindowFunction {
    double epsilon = 0.0;
    GridField grid;
    double fourier_support_radius = 0.0; // <= epsilon by construction
};

// Grid preconditions: the ball of radius eps must span >= 8 spectral bins
// (GridTooCoarse) and the box must satisfy box >= 20/eps (BoxTooSmall).
WindowFunction build_window(double epsilon, const GridSpec& spec);

// Nearest lattice wavevector to xi0 and its magnitude. All witness
// operations use the snapped carrier.
struct SnappedCarrier {
    std::vector<long> index;
    std::vector<double> xi;
    double magnitude;
};
SnappedCarrier snap_wavevector(const GridSpec& spec, const std::vector<double>& xi0);

// h_eps(x) = e^{i xi0.x} chi_eps(x), realized as an exact circular spectral
// shift of the window. Requires eps <= |xi0|/2 (EpsilonTooLarge).
GridField build_heps(const std::vector<double>& xi0, double epsilon,
                     const WindowFunction& window);

// Pointwise spectral multiplication by an arbitrary radial multiplier
// m(|xi|). Exactly-zero bins stay zero: the support is never widened.
GridField apply_radial_multiplier(const GridField& field,
                                  const std::function<Complex(double)>& mult);

// Pointwise spectral multiplication by s(lambda0, |xi|). Fields carrying a
// carrier magnitude are guarded: support reaching below carrier/4 throws
// ZeroFrequencyTouched.
GridField apply_symbol_multiplier(const GridField& field, double lambda0,
                                  const FluidParams& p);

// ||s(lambda0, |xi|) h_eps||_p / ||h_eps||_p on the grid. By default
// lambda0 = growth_rate(|xi0_snapped|); pass lambda0_override for
// off-curve controls. The ratio scales like O(eps) exactly when
// (lambda0, |xi0|) is a dispersion zero.
double witness_residual(const std::vector<double>& xi0, double epsilon,
                        const FluidParams& p, double norm_p,
                        const GridSpec& spec,
                        std::optional<double> lambda0_override = std::nullopt);

} // namespace rtstab
