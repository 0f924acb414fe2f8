#include "rtstab/witness.hpp"

#include <cmath>

#include "rtstab/dispersion.hpp"
#include "rtstab/symbol.hpp"

namespace rtstab {

namespace {

// the standard bump, supported in |u| < 1
double bump(double u) {
    const double q = 1.0 - u * u;
    if (q <= 0.0) return 0.0;
    return std::exp(-1.0 / q);
}

} // namespace

WindowFunction build_window(double epsilon, const GridSpec& spec) {
    spec.validate();
    if (!(epsilon > 0.0)) throw DegenerateInput("epsilon must be > 0");
    if (spec.box < 20.0 / epsilon * (1.0 - 1e-12))
        throw BoxTooSmall("box must be >= 20/epsilon");
    if (epsilon / spec.dxi() < 8.0 * (1.0 - 1e-12))
        throw GridTooCoarse("the ball of radius epsilon must span >= 8 bins");

    std::vector<Complex> spectrum(spec.total(), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < spectrum.size(); ++k)
        spectrum[k] = bump(spec.mode_magnitude(k) / epsilon);

    GridField field = GridField::from_spectrum(spec, std::move(spectrum));
    const Complex origin = field.values()[0];
    if (!(std::abs(origin) > 0.0))
        throw GridTooCoarse("window vanished at the origin");
    std::vector<Complex> values = field.values();
    std::vector<Complex> coeffs = field.spectrum();
    for (auto& z : values) z /= origin;
    for (auto& z : coeffs) z /= origin;

    WindowFunction w;
    w.epsilon = epsilon;
    w.grid = GridField::from_transform_pair(spec, std::move(values), std::move(coeffs));
    w.fourier_support_radius = w.grid.support_radius(1e-300);
    return w;
}

SnappedCarrier snap_wavevector(const GridSpec& spec,
                               const std::vector<double>& xi0) {
    if (static_cast<int>(xi0.size()) != spec.dim)
        throw DegenerateInput("xi0 dimension does not match the grid");
    SnappedCarrier s;
    double mag2 = 0.0;
    for (double c : xi0) {
        const long k = std::lround(c / spec.dxi());
        s.index.push_back(k);
        const double xi = static_cast<double>(k) * spec.dxi();
        s.xi.push_back(xi);
        mag2 += xi * xi;
    }
    s.magnitude = std::sqrt(mag2);
    return s;
}

GridField build_heps(const std::vector<double>& xi0, double epsilon,
                     const WindowFunction& window) {
    const GridSpec& spec = window.grid.spec();
    const SnappedCarrier car = snap_wavevector(spec, xi0);
    if (!(car.magnitude > 0.0))
        throw DegenerateInput("xi0 snaps to the zero mode");
    if (epsilon > car.magnitude / 2.0)
        throw EpsilonTooLarge("requires epsilon <= |xi0|/2");

    const std::vector<Complex>& wspec = window.grid.spectrum();
    std::vector<Complex> shifted(spec.total(), Complex(0.0, 0.0));
    const std::size_t n = spec.n;
    if (spec.dim == 1) {
        const std::size_t shift =
            static_cast<std::size_t>((car.index[0] % (long)n + (long)n) % (long)n);
        for (std::size_t k = 0; k < n; ++k) shifted[(k + shift) % n] = wspec[k];
    } else {
        const std::size_t s1 =
            static_cast<std::size_t>((car.index[0] % (long)n + (long)n) % (long)n);
        const std::size_t s2 =
            static_cast<std::size_t>((car.index[1] % (long)n + (long)n) % (long)n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                shifted[((r + s1) % n) * n + ((c + s2) % n)] = wspec[r * n + c];
    }
    GridField h = GridField::from_spectrum(spec, std::move(shifted));
    h.set_carrier(car.magnitude);
    return h;
}

GridField apply_radial_multiplier(const GridField& field,
                                  const std::function<Complex(double)>& mult) {
    const GridSpec& spec = field.spec();
    std::vector<Complex> out = field.spectrum();
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k] == Complex(0.0, 0.0)) continue;
        out[k] *= mult(spec.mode_magnitude(k));
    }
    GridField g = GridField::from_spectrum(spec, std::move(out));
    g.set_carrier(field.carrier());
    return g;
}

GridField apply_symbol_multiplier(const GridField& field, double lambda0,
                                  const FluidParams& p) {
    if (!(lambda0 > 0.0))
        throw DegenerateInput("apply_symbol_multiplier requires lambda0 > 0");
    if (field.carrier() > 0.0) {
        const double lo = field.support_min_magnitude(1e-300);
        if (lo < field.carrier() / 4.0)
            throw ZeroFrequencyTouched("spectral support reaches below |xi0|/4");
    }
    return apply_radial_multiplier(field, [&](double tau) {
        return symbol_s(Complex(lambda0, 0.0), tau, p);
    });
}

double witness_residual(const std::vector<double>& xi0, double epsilon,
                        const FluidParams& p, double norm_p,
                        const GridSpec& spec,
                        std::optional<double> lambda0_override) {
    const WindowFunction window = build_window(epsilon, spec);
    const GridField h = build_heps(xi0, epsilon, window);
    const double lambda0 = lambda0_override
                               ? *lambda0_override
                               : growth_rate(h.carrier(), p, 1e-12);
    const GridField g = apply_symbol_multiplier(h, lambda0, p);
    return g.norm_p(norm_p) / h.norm_p(norm_p);
}

} // namespace rtstab
