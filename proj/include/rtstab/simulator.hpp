#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rtstab/grid.hpp"
#include "rtstab/params.hpp"

namespace rtstab {

enum class RateProvenance {
    ZeroMode,      // |xi| = 0: amplitude frozen
    UnstableRoot,  // growth_rate on (0, tau*)
    RightmostRoot, // located by the strip search
    Clamped        // no root in the analyticity strip; decay clamped
};

const char* to_string(RateProvenance p);

// Dominant dispersion rate per distinct grid wavenumber magnitude.
// Pure function of (params, grid): rebuildable bit-identically.
struct GrowthTable {
    struct Entry {
        double wavenumber;
        Complex rate;
        RateProvenance provenance;
        int winding_count; // strip zero count; > 1 marks multiplicity-suspect
    };
    std::vector<Entry> entries; // ascending wavenumber
    GridSpec grid;

    const Entry& lookup(long long lattice_k2) const;
    std::size_t multiplicity_suspect_count() const;

    // internal: lattice |k|^2 -> entries index
    std::unordered_map<long long, std::size_t> index;
};

GrowthTable build_growth_table(const FluidParams& p, const GridSpec& spec,
                               double tol, int threads = 1);

// Linearized interface evolution: each Fourier mode grows or decays by the
// exponential of its dominant dispersion rate. Fidelity claim is the leading
// exponential behavior only; the full linearized semigroup is not a scalar
// multiplier in h.
struct SimulationRun {
    GridField field0;
    std::vector<double> times;
    FluidParams params;
    GrowthTable table;
    std::vector<GridField> snapshots; // filled by compute_snapshots
};

SimulationRun make_run(GridField field0, std::vector<double> times,
                       const FluidParams& p, double table_tol, int threads = 1);

// h-hat(t, xi) = e^{rate(|xi|) t} h-hat(0, xi). t = 0 returns field0
// bit-for-bit. Throws OverflowGuard (with the blow-up time) if any modal
// amplitude would exceed 1e300.
GridField evolve(const SimulationRun& run, double t);

// Fills run.snapshots for run.times.
void compute_snapshots(SimulationRun& run);

struct Diagnostics {
    double peak_wavenumber; // |xi| of the largest spectral coefficient
    double l2_amplitude;
    double max_height;
    double efolds; // log amplitude ratio at the spectral peak
};

Diagnostics diagnostics(const SimulationRun& run, double t);

// Initial fields. The pure mode is a single spectral delta at the snapped
// lattice mode; white noise is real-valued (deterministic Box-Muller from
// the seed), flat in expectation across the spectrum.
GridField make_pure_mode(const GridSpec& spec, const std::vector<double>& xi,
                         double amplitude);
GridField make_white_noise(const GridSpec& spec, std::uint64_t seed,
                           double amplitude);

} // namespace rtstab
