#pragma once

#include <complex>

namespace rtstab {

using Complex = std::complex<double>;

// Principal square root with a fixed cut convention:
//   Re sqrt_principal(z) >= 0 always, and on the cut (z real negative,
//   Re result = 0) the imaginary part is >= 0.
// Total on all of C; r*r = z to relative 1e-14.
inline Complex sqrt_principal(Complex z) {
    Complex r = std::sqrt(z);
    if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
    return r;
}

} // namespace rtstab
