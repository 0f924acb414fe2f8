#pragma once

#include "rtstab/errors.hpp"

namespace rtstab {

// The six physical constants of the two-fluid configuration. Phase 1 is the
// lower fluid (y < 0), phase 2 the upper one (y > 0). All constants must be
// strictly positive; the density jump rho2 - rho1 may have either sign.
// Units: any coherent system (SI assumed, never enforced).
class FluidParams {
public:
    FluidParams(double rho1, double rho2, double mu1, double mu2,
                double sigma, double gamma_a)
        : rho1_(rho1), rho2_(rho2), mu1_(mu1), mu2_(mu2),
          sigma_(sigma), gamma_a_(gamma_a) {
        if (!(rho1 > 0.0)) throw DegenerateInput("rho1 must be > 0");
        if (!(rho2 > 0.0)) throw DegenerateInput("rho2 must be > 0");
        if (!(mu1 > 0.0)) throw DegenerateInput("mu1 must be > 0");
        if (!(mu2 > 0.0)) throw DegenerateInput("mu2 must be > 0");
        if (!(sigma > 0.0)) throw DegenerateInput("sigma must be > 0");
        if (!(gamma_a > 0.0)) throw DegenerateInput("gamma_a must be > 0");
    }

    double rho1() const { return rho1_; }
    double rho2() const { return rho2_; }
    double mu1() const { return mu1_; }
    double mu2() const { return mu2_; }
    double sigma() const { return sigma_; }
    double gamma_a() const { return gamma_a_; }

    // phase in {1, 2}
    double rho(int phase) const { return phase == 1 ? rho1_ : rho2_; }
    double mu(int phase) const { return phase == 1 ? mu1_ : mu2_; }

    // [[rho]] = rho2 - rho1 (upper minus lower trace convention)
    double jump() const { return rho2_ - rho1_; }

    // Rayleigh-Taylor configuration: heavier fluid above the interface.
    bool is_heavy_on_top() const { return rho2_ > rho1_; }

    double rho_sum() const { return rho1_ + rho2_; }
    double mu_sum() const { return mu1_ + mu2_; }

private:
    double rho1_, rho2_, mu1_, mu2_, sigma_, gamma_a_;
};

} // namespace rtstab
