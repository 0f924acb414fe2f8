#pragma once

#include <cstddef>
#include <vector>

#include "rtstab/complex_branch.hpp"
#include "rtstab/errors.hpp"

namespace rtstab {

// Uniform periodic grid over a box of side `box`, n points per axis,
// dimension 1 or 2. n must be a power of two (radix-2 transforms).
struct GridSpec {
    int dim = 1;
    std::size_t n = 0;
    double box = 0.0;

    std::size_t total() const { return dim == 1 ? n : n * n; }
    double dx() const { return box / static_cast<double>(n); }
    double dxi() const; // spectral mode spacing 2*pi/box

    // signed lattice index of an axis position in [0, n)
    long signed_index(std::size_t i) const {
        return i <= n / 2 ? static_cast<long>(i)
                          : static_cast<long>(i) - static_cast<long>(n);
    }
    // squared integer lattice norm of a flat index (row-major in 2-D)
    long long lattice_k2(std::size_t flat) const;
    // |xi| of a flat index: (2*pi/box)*sqrt(lattice_k2)
    double mode_magnitude(std::size_t flat) const;

    void validate() const; // throws DegenerateInput
};

// Sampled complex field with its discrete Fourier transform kept consistent.
// Conventions: spectrum[k] = sum_j values[j] e^{-2*pi*i*j*k/n} (per axis),
// values = inverse transform with the 1/N factor. Physical p-norms carry the
// measure dx^dim.
class GridField {
public:
    GridField() = default;
    static GridField from_values(const GridSpec& spec, std::vector<Complex> v);
    static GridField from_spectrum(const GridSpec& spec, std::vector<Complex> c);
    // caller guarantees (v, c) is an exact transform pair (e.g. a field
    // rescaled by a constant); preserves exact spectral sparsity
    static GridField from_transform_pair(const GridSpec& spec,
                                         std::vector<Complex> v,
                                         std::vector<Complex> c);

    const GridSpec& spec() const { return spec_; }
    const std::vector<Complex>& values() const { return values_; }
    const std::vector<Complex>& spectrum() const { return spectrum_; }

    // carrier magnitude |xi0| for modulated fields (0 = unset); used by the
    // symbol-multiplier support guard
    double carrier() const { return carrier_; }
    void set_carrier(double c) { carrier_ = c; }

    double norm_p(double p) const;
    double norm_l2() const { return norm_p(2.0); }
    double spectral_l2() const; // Parseval route

    // largest |xi| over spectral bins with |coef| > rel_tol * max|coef|
    double support_radius(double rel_tol = 1e-12) const;
    // smallest |xi| over the same support set
    double support_min_magnitude(double rel_tol = 1e-12) const;

private:
    GridSpec spec_;
    std::vector<Complex> values_;
    std::vector<Complex> spectrum_;
    double carrier_ = 0.0;
};

namespace detail {

// In-place radix-2 transforms; `inverse` applies the +i kernel and 1/N.
void fft(std::vector<Complex>& a, bool inverse);
void fft_grid(std::vector<Complex>& a, const GridSpec& spec, bool inverse);

} // namespace detail

} // namespace rtstab
