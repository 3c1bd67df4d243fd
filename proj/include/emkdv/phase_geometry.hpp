#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "emkdv/model.hpp"

namespace emkdv {

enum class Region { oscillatory, merged, fast_decay, positive_xi, painleve_sector };

std::string to_string(Region r);

/// Width of the guard band around region boundaries.
inline constexpr double region_guard = 1e-9;

struct StationaryPointSet {
  Region region = Region::fast_decay;
  std::optional<double> k1, k2, k0;
  double xi = 0.0;
};

/// Phi(k) = 2i(-k xi + 16 beta k^5 - 4 alpha k^3).
std::complex<double> phase(std::complex<double> k, double xi, const ModelParams& p);

/// dPhi/dk.
std::complex<double> phase_derivative(std::complex<double> k, double xi, const ModelParams& p);

/// Critical xi = -9 alpha^2 / (20 beta) where the two positive stationary points merge.
double merge_xi(const ModelParams& p);

/// Closed-form stationary points.  For alpha > 0 and xi > 0 the single positive
/// real root is reported in k2 (it continues the outer branch); k0 is reserved
/// for alpha = 0.
StationaryPointSet stationary_points(double xi, const ModelParams& p);

struct SignatureTable {
  double re_min, re_max, im_min, im_max;
  std::size_t n = 0;
  std::vector<int> sign;  // row-major, index = i_im * n + i_re
  double re_at(std::size_t i) const;
  double im_at(std::size_t j) const;
};

/// Sign of Re Phi on an n x n grid, with a zero band |Re Phi| < zero_band.
SignatureTable signature_table(double xi, const ModelParams& p, double re_min, double re_max,
                               double im_min, double im_max, std::size_t n,
                               double zero_band = 1e-12);

/// painleve_sector takes precedence when alpha = 0 and 0 < x <= M t^{1/5}.
Region classify_region(double x, double t, const ModelParams& p, double M);

}  // namespace emkdv
