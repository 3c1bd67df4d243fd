#include "emkdv/phase_geometry.hpp"

#include <cmath>

#include "emkdv/error.hpp"

namespace emkdv {

std::string to_string(Region r) {
  switch (r) {
    case Region::oscillatory: return "oscillatory";
    case Region::merged: return "merged";
    case Region::fast_decay: return "fast_decay";
    case Region::positive_xi: return "positive_xi";
    case Region::painleve_sector: return "painleve_sector";
  }
  return "unknown";
}

std::complex<double> phase(std::complex<double> k, double xi, const ModelParams& p) {
  const std::complex<double> k2 = k * k;
  const std::complex<double> poly = k * (-xi + k2 * (16.0 * p.beta * k2 - 4.0 * p.alpha));
  return std::complex<double>(0.0, 2.0) * poly;
}

std::complex<double> phase_derivative(std::complex<double> k, double xi, const ModelParams& p) {
  const std::complex<double> k2 = k * k;
  return std::complex<double>(0.0, 2.0) * (-xi + k2 * (80.0 * p.beta * k2 - 12.0 * p.alpha));
}

double merge_xi(const ModelParams& p) { return -9.0 * p.alpha * p.alpha / (20.0 * p.beta); }

StationaryPointSet stationary_points(double xi, const ModelParams& p) {
  p.validate();
  StationaryPointSet s;
  s.xi = xi;
  if (p.alpha == 0.0) {
    if (std::abs(xi) <= region_guard) {
      s.region = Region::merged;
      s.k1 = s.k2 = 0.0;
    } else if (xi < 0.0) {
      s.region = Region::fast_decay;
    } else {
      s.region = Region::positive_xi;
      s.k0 = std::pow(xi / (80.0 * p.beta), 0.25);
    }
    return s;
  }
  // k^2 = c (1 -+ sqrt(d)),  c = 3 alpha / (40 beta),  d = 1 + 20 beta xi / (9 alpha^2)
  const double c = 3.0 * p.alpha / (40.0 * p.beta);
  const double xc = merge_xi(p);
  if (xi < xc - region_guard) {
    s.region = Region::fast_decay;
    return s;
  }
  if (xi <= xc + region_guard) {
    s.region = Region::merged;
    s.k1 = s.k2 = std::sqrt(c);
    return s;
  }
  const double dm1 = 20.0 * p.beta * xi / (9.0 * p.alpha * p.alpha);  // d - 1
  const double sd = std::sqrt(1.0 + dm1);
  s.k2 = std::sqrt(c * (1.0 + sd));
  if (xi >= -region_guard) {
    s.region = Region::positive_xi;
    return s;
  }
  s.region = Region::oscillatory;
  s.k1 = std::sqrt(c * (-dm1) / (1.0 + sd));  // 1 - sqrt(d) without cancellation
  return s;
}

double SignatureTable::re_at(std::size_t i) const {
  return n < 2 ? re_min : re_min + (re_max - re_min) * double(i) / double(n - 1);
}
double SignatureTable::im_at(std::size_t j) const {
  return n < 2 ? im_min : im_min + (im_max - im_min) * double(j) / double(n - 1);
}

SignatureTable signature_table(double xi, const ModelParams& p, double re_min, double re_max,
                               double im_min, double im_max, std::size_t n, double zero_band) {
  if (n < 2)
    throw Error(ErrorKind::config_error, "phase_geometry", "signature_table", "need n >= 2");
  SignatureTable t{re_min, re_max, im_min, im_max, n, {}};
  t.sign.resize(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const double v = phase({t.re_at(i), t.im_at(j)}, xi, p).real();
      t.sign[j * n + i] = std::abs(v) < zero_band ? 0 : (v > 0.0 ? 1 : -1);
    }
  return t;
}

Region classify_region(double x, double t, const ModelParams& p, double M) {
  p.validate();
  if (!(t > 0.0))
    throw Error(ErrorKind::config_error, "phase_geometry", "classify_region", "t must be > 0");
  if (p.alpha == 0.0 && x > 0.0 && x <= M * std::pow(t, 0.2)) return Region::painleve_sector;
  return stationary_points(x / t, p).region;
}

}  // namespace emkdv
