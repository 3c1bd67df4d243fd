#pragma once

#include <complex>

namespace emkdv {

/// Principal-branch-free complex log Gamma (Lanczos, g = 7, 9 terms) with the
/// reflection formula for Re z < 1/2.  Relative accuracy ~1e-14 away from the
/// poles.  The imaginary part is only meaningful modulo 2*pi.
std::complex<double> log_gamma(std::complex<double> z);

/// arg Gamma(z) wrapped to (-pi, pi].
double arg_gamma(std::complex<double> z);

}  // namespace emkdv
