#include "emkdv/log_gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace emkdv {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

std::complex<double> log_gamma_right(std::complex<double> z) {
  // Gamma(z) = sqrt(2 pi) t^(z - 1/2) e^(-t) A(z),  t = z + g - 1/2, shifted by one.
  z -= 1.0;
  std::complex<double> a = lanczos_c[0];
  for (std::size_t i = 1; i < lanczos_c.size(); ++i) a += lanczos_c[i] / (z + double(i));
  const std::complex<double> t = z + lanczos_g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) -
           log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

double arg_gamma(std::complex<double> z) {
  return std::arg(std::exp(std::complex<double>(0.0, log_gamma(z).imag())));
}

}  // namespace emkdv
