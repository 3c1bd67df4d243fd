#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "emkdv/execution.hpp"
#include "emkdv/model.hpp"

namespace emkdv {

/// Periodic grid on [-L_domain, L_domain) with N points.  Products are
/// dealiased by zeroing modes above 2/3 of the Nyquist wavenumber.
struct SpectralGrid {
  double L_domain = 600.0;
  std::size_t N = 16384;

  void validate() const;
  double dx() const { return 2.0 * L_domain / double(N); }
  double x(std::size_t j) const { return -L_domain + dx() * double(j); }
  std::vector<double> xs() const;
  /// Wavenumber of rfft mode m (0 <= m <= N/2).
  double k(std::size_t m) const;
  std::size_t dealias_cutoff() const { return N / 3; }  // keep m <= cutoff
};

/// Absorbing layer -sigma(x) u next to the periodic seam x = +-L_domain:
/// sigma = strength * (1 - cos(pi s)) / 2, s = (|x| - (L - width)) / width.
/// Fast dispersive radiation would otherwise wrap around the period.  Applied
/// as exact factors exp(-sigma dt / 2) on either side of each step (Strang
/// splitting); what it removes is
/// booked in the snapshot ledger.
struct Sponge {
  double width = 100.0;
  double strength = 200.0;  // 0 disables
  double sigma(double x, double L) const;
};

struct PdeOptions {
  SpectralGrid grid;
  double dt = 0.005;
  // The first startup_time is stepped with startup_dt: the short initial
  // transient otherwise dominates the energy drift.
  double startup_dt = 1e-4;
  double startup_time = 0.5;
  Sponge sponge;
  double boundary_tol = 1e-8;     // max |u| allowed at the seam
  double spectral_tol = 1e-12;    // datum spectrum at the dealias cutoff
  int contour_points = 32;        // phi-function contour averaging
  Exec exec = Exec::parallel;
};

struct FieldSnapshot {
  double t = 0.0;
  std::vector<double> x, u;
  double mass = 0.0, energy = 0.0;                    // int u, int u^2
  double absorbed_mass = 0.0, absorbed_energy = 0.0;  // removed by the sponge so far
  double mass0 = 0.0, energy0 = 0.0;                  // of the initial samples

  /// (energy + absorbed_energy - energy0) / energy0; 0 for a zero field.
  double energy_drift() const;
  /// mass + absorbed_mass - mass0.
  double mass_drift() const { return mass + absorbed_mass - mass0; }
  double seam_max = 0.0;                              // max |u| over the 1% of cells at the seam
};

/// i (alpha k^3 - beta k^5): Fourier symbol of -alpha d^3 - beta d^5.
std::complex<double> linear_symbol(double k, const ModelParams& p);

/// -alpha 6u^2u_x - beta(30u^4u_x + 10u_x^3 + 40u u_x u_xx + 10u^2u_xxx), evaluated
/// as -d/dx[2 alpha u^3 + beta(6u^5 + 10u^2u_xx + 10u u_x^2)] with spectral
/// derivatives and the 2/3 rule.  Input is sampled on the grid.
std::vector<double> nonlinear_term(const std::vector<double>& u, const ModelParams& p,
                                   const SpectralGrid& grid, Exec exec = Exec::parallel);

/// (int u dx, int u^2 dx) by the periodic trapezoid rule (spectrally exact).
std::pair<double, double> conserved_quantities(const FieldSnapshot& snap);

/// Trigonometric interpolation of a snapshot at arbitrary points.
std::vector<double> sample_field(const FieldSnapshot& snap, const std::vector<double>& xq);

/// ETDRK4 (Cox-Matthews, Kassam-Trefethen contour averaging).  mass + absorbed_mass
/// and energy + absorbed_energy are the conserved combinations.  Snapshots are
/// returned for each requested time (ascending, > 0).  BlowUp on a non-finite
/// field; BoundaryContamination if the seam value exceeds boundary_tol.
std::vector<FieldSnapshot> evolve(const InitialProfile& u0, const ModelParams& p,
                                  const PdeOptions& opt, const std::vector<double>& t_out);

/// Same, starting from grid samples.
std::vector<FieldSnapshot> evolve_samples(const std::vector<double>& u0, const ModelParams& p,
                                          const PdeOptions& opt,
                                          const std::vector<double>& t_out);

}  // namespace emkdv
