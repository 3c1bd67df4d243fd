#pragma once

#include <array>
#include <complex>
#include <vector>

#include "emkdv/execution.hpp"
#include "emkdv/model.hpp"

namespace emkdv {

/// Discretization of the fourth-order Painleve II RH problem.  The four rays
/// arg z = pi/6, 5pi/6 (jump [[1,0],[s e,1]]) and -pi/6, -5pi/6 (jump
/// [[1,conj(s) e^{-1}],[0,1]]), e = exp(2i(4z^5/5 + yz)), are deformed to the
/// horizontal lines Im z = +c and Im z = -c, both oriented left to right and
/// truncated at |Re z| <= L, with trapezoid nodes of spacing h.  The lines
/// never meet, so the Cauchy operator only couples distinct lines and has no
/// singular part.
struct RHContour {
  double c = 0.5;
  double L = 2.6;
  double h = 0.04;

  std::size_t nodes_per_line() const;
  RHContour refined() const { return {c, L, 0.5 * h}; }
};

/// Size of the jump v - I at the truncation points for this (s, y).
double truncation_jump(double s, double y, const RHContour& contour);

/// Throws TruncationTooSmall if truncation_jump >= tol.
void check_truncation(double s, double y, const RHContour& contour, double tol = 1e-14);

using CMat2 = std::array<std::array<std::complex<double>, 2>, 2>;

struct RHSolution {
  CMat2 N1{};            // z^{-1} coefficient of N(y, z)
  double rcond = 1.0;    // reciprocal condition estimate of the reduced system
  // Nodal densities kept for off-contour evaluation of N(y, z).
  RHContour contour;
  double s = 0.0, y = 0.0;
  std::vector<std::complex<double>> top_r1, top_r2, bot_r1, bot_r2;

  /// N(y, z) = I + Cauchy transform of the density, z off the contour.
  CMat2 evaluate(std::complex<double> z) const;
};

/// Nystrom solve of the RH problem; SingularSystem if the reduced matrix is
/// numerically singular.
RHSolution solve_rh_painleve(double s, double y, const RHContour& contour = {});

/// u_p(y) = -i (N1)_{12}.
double u_p(double s, double y, const RHContour& contour = {});

struct PainleveSolution {
  double s = 0.0;
  RHContour contour;
  double h = 0.0;                 // y spacing
  std::vector<double> y;          // requested nodes
  std::vector<double> u;          // u_p(y)
  std::vector<std::complex<double>> psi1, psi2;  // (N1)_11, (N1)_12
  std::vector<double> imag_part;  // |Im(-i (N1)_12)|
  std::vector<double> residual;   // ODE residual per node
  double max_residual = 0.0;
};

/// Solves on [y0, y1] with spacing h (plus 4 padding nodes on each side so the
/// residual is defined at every requested node).
PainleveSolution solve_painleve_grid(double s, double y0, double y1, double h,
                                     const RHContour& contour = {},
                                     Exec exec = Exec::parallel);

/// |u'''' + 40u^2u'' + 40u(u')^2 + 96u^5 + 4yu| at nodes 4..n-5 of a uniform
/// grid.  u', u'' use 5-point central differences; u'''' is the 5-point
/// stencil Richardson-extrapolated between spacings h and 2h.  GridTooCoarse
/// with fewer than 5 such nodes.
std::vector<double> ode_residual(const std::vector<double>& y, const std::vector<double>& u,
                                 double h);

/// (8/(5 beta t))^{1/5} u_p(-x/(20 beta t)^{1/5}); requires alpha = 0 and the
/// painleve sector 0 < x <= M t^{1/5}.
double painleve_asymptote(double x, double t, double s, const ModelParams& p, double M = 2.0,
                          const RHContour& contour = {});

/// Amplitude scale (8/(5 beta t))^{1/5}; equals 2 (20 beta t)^{-1/5} since 2^5/(20 beta) = 8/(5 beta).
double painleve_scale(double t, const ModelParams& p);

/// Scaling variable y = -x / (20 beta t)^{1/5}.
double painleve_y(double x, double t, const ModelParams& p);

}  // namespace emkdv
