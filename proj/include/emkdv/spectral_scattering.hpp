#pragma once

#include <array>
#include <complex>
#include <vector>

#include "emkdv/execution.hpp"
#include "emkdv/model.hpp"

namespace emkdv {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

/// Scattering matrix s(k) = [[conj a, b], [-conj b, a]] for real k, obtained by
/// integrating the x-part of the Lax pair from -X to X (interaction picture,
/// identity at -X).
Mat2 integrate_jost(const InitialProfile& u0, double k, double ode_tol);

/// a(k) for Im k >= 0, from the second Jost column; the oscillatory entry
/// decays for Im k > 0 so the forward integration is stable.
cplx a_continued(const InitialProfile& u0, cplx k, double ode_tol);

struct KGridSpec {
  double half_width = 5.0;
  double step = 0.01;
  bool auto_extend = true;
  double tail_tol = 1e-10;      // extend until |b| < tail_tol at both ends
  double max_half_width = 40.0;
};

struct ReflectionData {
  std::vector<double> k;
  std::vector<cplx> a, b, r;
  double X = 0.0;
  double ode_tol = 0.0;
  double step = 0.0;
  double max_unitarity_defect = 0.0;  // max ||a|^2 + |b|^2 - 1|
  double max_det_defect = 0.0;        // max |det s - 1|
  double tail_b = 0.0;                // max |b| at the two grid ends
  InitialProfile profile = InitialProfile::zero();
  bool profile_available = true;  // false when loaded from a file

  double k_min() const { return k.front(); }
  double k_max() const { return k.back(); }
};

/// Symmetric uniform grid k_i = i * step.  Fails with UnitarityViolation if
/// the defect exceeds unitarity_tol.
ReflectionData compute_scattering(const InitialProfile& u0, const KGridSpec& grid,
                                  double ode_tol, double unitarity_tol = 1e-8,
                                  Exec exec = Exec::parallel);

/// Same, on an explicit grid (must be sorted, at least 4 nodes).
ReflectionData compute_scattering(const InitialProfile& u0, std::vector<double> k_grid,
                                  double ode_tol, double unitarity_tol = 1e-8,
                                  Exec exec = Exec::parallel);

struct ZeroCount {
  int count = 0;
  double K = 0.0, floor = 0.0, height = 0.0;
  std::size_t samples = 0;
  double max_jump = 0.0;  // largest |arg a| increment between adjacent samples
  double min_abs_a = 0.0;
};

/// Argument-principle count of zeros of a in [-K, K] x [floor, height],
/// K = grid hull.  Throws InconclusiveWinding when the boundary cannot be
/// resolved (zero on or too near the boundary).
ZeroCount count_zeros_of_a(const ReflectionData& data, double contour_height = 2.0,
                           double floor = 1e-3, Exec exec = Exec::parallel);

/// Piecewise-cubic (4-point Lagrange) interpolation of Re r and Im r; exact at
/// nodes.
cplx reflection_at(const ReflectionData& data, double k);

/// |r(k)|^2 through the same interpolant.
double reflection_abs2_at(const ReflectionData& data, double k);

}  // namespace emkdv
