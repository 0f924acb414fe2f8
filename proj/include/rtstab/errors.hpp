#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rtstab {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside the operation's domain (zero/negative where positive required,
// (lambda, tau) = (0, 0), radicand on the branch cut, ...).
struct DegenerateInput : Error {
    using Error::Error;
};

// A denominator fell below the underflow guard (evaluation on/near a pole).
struct DivisionBreakdown : Error {
    using Error::Error;
};

// rho2 <= rho1: no unstable band, the requested quantity does not exist.
struct StableConfiguration : Error {
    using Error::Error;
};

// Wavenumber outside the unstable band (0, tau*).
struct OutOfBand : Error {
    using Error::Error;
};

// Iteration budget exhausted before reaching the requested tolerance.
struct NoConvergence : Error {
    using Error::Error;
};

// Winding residual could not be driven below threshold within the
// subdivision budget.
struct ContourTooCoarse : Error {
    using Error::Error;
};

// Contour boundary passes too close to a zero.
struct ZeroOnBoundary : Error {
    using Error::Error;
};

// Transmission matrix condition number above the guard.
struct SingularSystem : Error {
    using Error::Error;
};

struct GridTooCoarse : Error {
    using Error::Error;
};

struct BoxTooSmall : Error {
    using Error::Error;
};

// epsilon > |xi0|/2.
struct EpsilonTooLarge : Error {
    using Error::Error;
};

// Spectral support of a field reaches below the carrier guard band.
struct ZeroFrequencyTouched : Error {
    using Error::Error;
};

// A modal amplitude would exceed 1e300; carries the first blow-up time.
struct OverflowGuard : Error {
    double blow_up_time;
    explicit OverflowGuard(double t_blow, const std::string& what)
        : Error(what), blow_up_time(t_blow) {}
};

// Config rejected; lists every violated invariant.
struct ConfigInvalid : Error {
    std::vector<std::string> violations;
    explicit ConfigInvalid(std::vector<std::string> v)
        : Error(join(v)), violations(std::move(v)) {}

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid config:";
        for (const auto& s : v) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }
};

} // namespace rtstab
