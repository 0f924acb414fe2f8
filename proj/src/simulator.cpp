#include "rtstab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>
#include <unordered_set>

#include "rtstab/dispersion.hpp"

namespace rtstab {

namespace {

constexpr double kLogAmplitudeCap = 690.77552789821368; // ln(1e300)

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n < 4) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nt) body(i);
        });
    for (auto& th : pool) th.join();
}

// deterministic uniform (0,1) from splitmix64 output
double u64_to_unit(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

const char* to_string(RateProvenance p) {
    switch (p) {
        case RateProvenance::ZeroMode: return "zero-mode";
        case RateProvenance::UnstableRoot: return "unstable-root";
        case RateProvenance::RightmostRoot: return "rightmost-root";
        case RateProvenance::Clamped: return "clamped";
    }
    return "?";
}

const GrowthTable::Entry& GrowthTable::lookup(long long lattice_k2) const {
    return entries[index.at(lattice_k2)];
}

std::size_t GrowthTable::multiplicity_suspect_count() const {
    std::size_t c = 0;
    for (const auto& e : entries)
        if (e.provenance == RateProvenance::RightmostRoot && e.winding_count > 1)
            ++c;
    return c;
}

GrowthTable build_growth_table(const FluidParams& p, const GridSpec& spec,
                               double tol, int threads) {
    spec.validate();
    if (!(tol > 0.0)) throw DegenerateInput("build_growth_table requires tol > 0");

    // distinct squared lattice norms, ascending
    std::vector<long long> k2s;
    {
        std::unordered_set<long long> seen;
        for (std::size_t f = 0; f < spec.total(); ++f)
            seen.insert(spec.lattice_k2(f));
        k2s.assign(seen.begin(), seen.end());
        std::sort(k2s.begin(), k2s.end());
    }

    const bool heavy = p.is_heavy_on_top();
    const double tau_star = heavy ? cutoff_wavenumber(p) : 0.0;
    double lambda_inf = 0.0;
    if (heavy) lambda_inf = max_growth(p, 1e-6).lambda_inf;

    GrowthTable table;
    table.grid = spec;
    table.entries.resize(k2s.size());

    parallel_for(k2s.size(), threads, [&](std::size_t i) {
        const long long k2 = k2s[i];
        GrowthTable::Entry e{};
        e.wavenumber = spec.dxi() * std::sqrt(static_cast<double>(k2));
        if (k2 == 0) {
            e.rate = Complex(0.0, 0.0);
            e.provenance = RateProvenance::ZeroMode;
            e.winding_count = 0;
        } else if (heavy && std::abs(e.wavenumber - tau_star) <= 1e-12 * tau_star) {
            // exactly at cutoff: lambda = 0 is the root
            e.rate = Complex(0.0, 0.0);
            e.provenance = RateProvenance::RightmostRoot;
            e.winding_count = 1;
        } else if (heavy && e.wavenumber < tau_star) {
            e.rate = Complex(growth_rate(e.wavenumber, p, tol), 0.0);
            e.provenance = RateProvenance::UnstableRoot;
            e.winding_count = 1;
        } else {
            const double tau = e.wavenumber;
            const double floor_re = 0.999 * analyticity_floor(tau, p);
            const double right_edge = 2.0 * lambda_inf + std::abs(floor_re);
            const double im_bound = 10.0 * std::max(std::abs(floor_re), lambda_inf);
            int count = 0;
            const auto root =
                rightmost_root(tau, p, floor_re, im_bound, right_edge, &count);
            if (root) {
                e.rate = *root;
                e.provenance = RateProvenance::RightmostRoot;
                e.winding_count = count;
            } else {
                e.rate = Complex(analyticity_floor(tau, p), 0.0);
                e.provenance = RateProvenance::Clamped;
                e.winding_count = 0;
            }
        }
        table.entries[i] = e;
    });

    for (std::size_t i = 0; i < k2s.size(); ++i) table.index[k2s[i]] = i;
    return table;
}

SimulationRun make_run(GridField field0, std::vector<double> times,
                       const FluidParams& p, double table_tol, int threads) {
    GrowthTable table = build_growth_table(p, field0.spec(), table_tol, threads);
    return SimulationRun{std::move(field0), std::move(times), p,
                         std::move(table), {}};
}

GridField evolve(const SimulationRun& run, double t) {
    if (!(t >= 0.0)) throw DegenerateInput("evolve requires t >= 0");
    if (t == 0.0) return run.field0;

    const GridSpec& spec = run.field0.spec();
    std::vector<Complex> spectrum = run.field0.spectrum();

    // overflow scan before touching anything
    double t_blow = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double mag = std::abs(spectrum[k]);
        if (mag == 0.0) continue;
        const double re = run.table.lookup(spec.lattice_k2(k)).rate.real();
        if (re <= 0.0) continue;
        const double limit = (kLogAmplitudeCap - std::log(mag)) / re;
        t_blow = std::min(t_blow, limit);
    }
    if (t > t_blow)
        throw OverflowGuard(t_blow, "modal amplitude would exceed 1e300");

    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        if (spectrum[k] == Complex(0.0, 0.0)) continue;
        const Complex rate = run.table.lookup(spec.lattice_k2(k)).rate;
        spectrum[k] *= std::exp(rate * t);
    }
    GridField out = GridField::from_spectrum(spec, std::move(spectrum));
    out.set_carrier(run.field0.carrier());
    return out;
}

void compute_snapshots(SimulationRun& run) {
    run.snapshots.clear();
    run.snapshots.reserve(run.times.size());
    for (const double t : run.times) run.snapshots.push_back(evolve(run, t));
}

Diagnostics diagnostics(const SimulationRun& run, double t) {
    const GridField field = evolve(run, t);
    const auto& spec0 = run.field0.spectrum();
    const auto& spect = field.spectrum();

    Diagnostics d{0.0, 0.0, 0.0, 0.0};
    d.l2_amplitude = field.norm_l2();
    for (const auto& z : field.values())
        d.max_height = std::max(d.max_height, std::abs(z));

    double peak_mag = 0.0;
    std::size_t peak_idx = 0;
    bool any = false;
    for (std::size_t k = 0; k < spect.size(); ++k) {
        const double m = std::abs(spect[k]);
        if (m > peak_mag) {
            peak_mag = m;
            peak_idx = k;
            any = true;
        }
    }
    if (any && peak_mag > 0.0) {
        d.peak_wavenumber = field.spec().mode_magnitude(peak_idx);
        const double m0 = std::abs(spec0[peak_idx]);
        d.efolds = m0 > 0.0 ? std::log(peak_mag / m0) : 0.0;
    }
    return d;
}

GridField make_pure_mode(const GridSpec& spec, const std::vector<double>& xi,
                         double amplitude) {
    spec.validate();
    if (static_cast<int>(xi.size()) != spec.dim)
        throw DegenerateInput("mode dimension does not match the grid");
    const std::size_t n = spec.n;
    std::size_t flat = 0;
    for (int d = 0; d < spec.dim; ++d) {
        const long k = std::lround(xi[static_cast<std::size_t>(d)] / spec.dxi());
        const std::size_t idx =
            static_cast<std::size_t>((k % static_cast<long>(n) + static_cast<long>(n)) %
                                     static_cast<long>(n));
        flat = flat * n + idx;
    }
    std::vector<Complex> spectrum(spec.total(), Complex(0.0, 0.0));
    // spectral delta normalized so the physical mode has |amplitude|
    spectrum[flat] = amplitude * static_cast<double>(spec.total());
    return GridField::from_spectrum(spec, std::move(spectrum));
}

GridField make_white_noise(const GridSpec& spec, std::uint64_t seed,
                           double amplitude) {
    spec.validate();
    std::vector<Complex> values(spec.total());
    std::uint64_t state = seed;
    for (std::size_t i = 0; i < values.size(); ++i) {
        // Box-Muller on deterministic uniforms; real-valued field
        const double u1 = u64_to_unit(splitmix64(state));
        const double u2 = u64_to_unit(splitmix64(state));
        const double g = std::sqrt(-2.0 * std::log(u1)) *
                         std::cos(2.0 * 3.14159265358979323846 * u2);
        values[i] = Complex(amplitude * g, 0.0);
    }
    return GridField::from_values(spec, std::move(values));
}

} // namespace rtstab
