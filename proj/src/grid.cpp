#include "rtstab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rtstab {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
} // namespace

double GridSpec::dxi() const { return 2.0 * kPi / box; }

long long GridSpec::lattice_k2(std::size_t flat) const {
    if (dim == 1) {
        const long k = signed_index(flat);
        return static_cast<long long>(k) * k;
    }
    const long k1 = signed_index(flat / n);
    const long k2 = signed_index(flat % n);
    return static_cast<long long>(k1) * k1 + static_cast<long long>(k2) * k2;
}

double GridSpec::mode_magnitude(std::size_t flat) const {
    return dxi() * std::sqrt(static_cast<double>(lattice_k2(flat)));
}

void GridSpec::validate() const {
    if (dim != 1 && dim != 2)
        throw DegenerateInput("grid dim must be 1 or 2");
    if (!is_pow2(n)) throw DegenerateInput("grid n must be a power of two");
    if (!(box > 0.0)) throw DegenerateInput("grid box must be > 0");
}

namespace detail {

void fft(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const Complex wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv_n;
    }
}

void fft_grid(std::vector<Complex>& a, const GridSpec& spec, bool inverse) {
    if (spec.dim == 1) {
        fft(a, inverse);
        return;
    }
    const std::size_t n = spec.n;
    std::vector<Complex> row(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::copy(a.begin() + r * n, a.begin() + (r + 1) * n, row.begin());
        fft(row, inverse);
        std::copy(row.begin(), row.end(), a.begin() + r * n);
    }
    std::vector<Complex> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) col[r] = a[r * n + c];
        fft(col, inverse);
        for (std::size_t r = 0; r < n; ++r) a[r * n + c] = col[r];
    }
}

} // namespace detail

GridField GridField::from_values(const GridSpec& spec, std::vector<Complex> v) {
    spec.validate();
    if (v.size() != spec.total())
        throw DegenerateInput("value array size does not match the grid");
    GridField f;
    f.spec_ = spec;
    f.values_ = std::move(v);
    f.spectrum_ = f.values_;
    detail::fft_grid(f.spectrum_, spec, false);
    return f;
}

GridField GridField::from_spectrum(const GridSpec& spec, std::vector<Complex> c) {
    spec.validate();
    if (c.size() != spec.total())
        throw DegenerateInput("spectrum array size does not match the grid");
    GridField f;
    f.spec_ = spec;
    f.spectrum_ = std::move(c);
    f.values_ = f.spectrum_;
    detail::fft_grid(f.values_, spec, true);
    return f;
}

GridField GridField::from_transform_pair(const GridSpec& spec,
                                         std::vector<Complex> v,
                                         std::vector<Complex> c) {
    spec.validate();
    if (v.size() != spec.total() || c.size() != spec.total())
        throw DegenerateInput("array size does not match the grid");
    GridField f;
    f.spec_ = spec;
    f.values_ = std::move(v);
    f.spectrum_ = std::move(c);
    return f;
}

double GridField::norm_p(double p) const {
    if (!(p >= 1.0)) throw DegenerateInput("norm_p requires p >= 1");
    const double measure = std::pow(spec_.dx(), spec_.dim);
    double acc = 0.0;
    for (const auto& z : values_) acc += std::pow(std::abs(z), p);
    return std::pow(acc * measure, 1.0 / p);
}

double GridField::spectral_l2() const {
    const double measure = std::pow(spec_.dx(), spec_.dim);
    double acc = 0.0;
    for (const auto& z : spectrum_) acc += std::norm(z);
    return std::sqrt(acc / static_cast<double>(spec_.total()) * measure);
}

double GridField::support_radius(double rel_tol) const {
    double max_mag = 0.0;
    for (const auto& z : spectrum_) max_mag = std::max(max_mag, std::abs(z));
    const double thr = rel_tol * max_mag;
    double r = 0.0;
    for (std::size_t k = 0; k < spectrum_.size(); ++k)
        if (std::abs(spectrum_[k]) > thr)
            r = std::max(r, spec_.mode_magnitude(k));
    return r;
}

double GridField::support_min_magnitude(double rel_tol) const {
    double max_mag = 0.0;
    for (const auto& z : spectrum_) max_mag = std::max(max_mag, std::abs(z));
    const double thr = rel_tol * max_mag;
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < spectrum_.size(); ++k)
        if (std::abs(spectrum_[k]) > thr)
            r = std::min(r, spec_.mode_magnitude(k));
    return r;
}

} // namespace rtstab
