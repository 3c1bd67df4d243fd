#include "emkdv/painleve_sector.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "emkdv/error.hpp"
#include "emkdv/phase_geometry.hpp"

namespace emkdv {

namespace {

using cplx = std::complex<double>;
constexpr const char* mod = "painleve_sector";
constexpr cplx I2pi(0.0, 2.0 * std::numbers::pi);

// exp(2i(4z^5/5 + yz))
cplx theta_exp(cplx z, double y) {
  const cplx z2 = z * z;
  return std::exp(cplx(0.0, 2.0) * (0.8 * z2 * z2 * z + y * z));
}

std::vector<cplx> line_nodes(const RHContour& c, double im) {
  const std::size_t n = c.nodes_per_line();
  std::vector<cplx> z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = cplx(-c.L + c.h * double(j), im);
  return z;
}

}  // namespace

std::size_t RHContour::nodes_per_line() const {
  return static_cast<std::size_t>(std::llround(2.0 * L / h)) + 1;
}

double truncation_jump(double s, double y, const RHContour& c) {
  double m = 0.0;
  for (double x : {-c.L, c.L}) {
    m = std::max(m, std::abs(s * theta_exp({x, c.c}, y)));
    m = std::max(m, std::abs(s / theta_exp({x, -c.c}, y)));
  }
  return m;
}

void check_truncation(double s, double y, const RHContour& c, double tol) {
  if (!(c.c > 0.0) || !(c.L > 0.0) || !(c.h > 0.0) || c.nodes_per_line() < 8)
    throw Error(ErrorKind::config_error, mod, "RHContour", "need c, L, h > 0 and >= 8 nodes");
  const double j = truncation_jump(s, y, c);
  if (!(j < tol))
    throw Error(ErrorKind::truncation_too_small, mod, "solve_rh_painleve",
                "|v - I| = " + fmt_num(j) + " at |Re z| = L; increase L");
}

RHSolution solve_rh_painleve(double s, double y, const RHContour& contour) {
  check_truncation(s, y, contour);
  RHSolution sol;
  sol.contour = contour;
  sol.s = s;
  sol.y = y;
  const std::size_t n = contour.nodes_per_line();
  const auto top = line_nodes(contour, contour.c), bot = line_nodes(contour, -contour.c);
  sol.top_r1.assign(n, 0.0);
  sol.top_r2.assign(n, 0.0);
  sol.bot_r1.assign(n, 0.0);
  sol.bot_r2.assign(n, 0.0);
  if (s == 0.0) return sol;

  const cplx w = contour.h / I2pi;
  Eigen::VectorXcd ea(n), eb(n);
  for (std::size_t i = 0; i < n; ++i) {
    ea[i] = s * theta_exp(top[i], y);
    eb[i] = s / theta_exp(bot[i], y);  // s real: conj(s) = s
  }
  Eigen::MatrixXcd Ktb(n, n), Kbt(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Ktb(i, j) = w / (bot[j] - top[i]);
      Kbt(i, j) = w / (top[j] - bot[i]);
    }
  // Top density a (column 1), bottom density b (column 2), per row r:
  //   a = ea .* (delta_{r,2} + Ktb b),  b = eb .* (delta_{r,1} + Kbt a).
  // Eliminating a: (I - Eb Kbt Ea Ktb) b = eb .* (delta_{r,1} + delta_{r,2} Kbt ea).
  const Eigen::MatrixXcd BK = eb.asDiagonal() * Kbt;
  const Eigen::MatrixXcd A =
      Eigen::MatrixXcd::Identity(n, n) - BK * (ea.asDiagonal() * Ktb);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  sol.rcond = lu.rcond();
  if (!(sol.rcond > 1e-13))
    throw Error(ErrorKind::singular_system, mod, "solve_rh_painleve",
                "reduced collocation matrix rcond = " + fmt_num(sol.rcond));
  const Eigen::VectorXcd rhs1 = eb;
  const Eigen::VectorXcd rhs2 = BK * ea;
  const Eigen::VectorXcd b1 = lu.solve(rhs1), b2 = lu.solve(rhs2);
  const Eigen::VectorXcd a1 = ea.cwiseProduct(Ktb * b1);
  const Eigen::VectorXcd a2 = ea.cwiseProduct(Eigen::VectorXcd::Ones(n) + Ktb * b2);
  for (std::size_t i = 0; i < n; ++i) {
    sol.top_r1[i] = a1[i];
    sol.bot_r1[i] = b1[i];
    sol.top_r2[i] = a2[i];
    sol.bot_r2[i] = b2[i];
  }
  sol.N1[0][0] = -w * a1.sum();
  sol.N1[0][1] = -w * b1.sum();
  sol.N1[1][0] = -w * a2.sum();
  sol.N1[1][1] = -w * b2.sum();
  return sol;
}

CMat2 RHSolution::evaluate(cplx z) const {
  const std::size_t n = top_r1.size();
  const auto top = line_nodes(contour, contour.c), bot = line_nodes(contour, -contour.c);
  const cplx w = contour.h / I2pi;
  CMat2 N{{{1.0, 0.0}, {0.0, 1.0}}};
  for (std::size_t j = 0; j < n; ++j) {
    const cplx ct = w / (top[j] - z), cb = w / (bot[j] - z);
    N[0][0] += ct * top_r1[j];
    N[1][0] += ct * top_r2[j];
    N[0][1] += cb * bot_r1[j];
    N[1][1] += cb * bot_r2[j];
  }
  return N;
}

double u_p(double s, double y, const RHContour& contour) {
  return (cplx(0.0, -1.0) * solve_rh_painleve(s, y, contour).N1[0][1]).real();
}

std::vector<double> ode_residual(const std::vector<double>& y, const std::vector<double>& u,
                                 double h) {
  const std::size_t n = u.size();
  if (y.size() != n || n < 13 || !(h > 0.0))
    throw Error(ErrorKind::grid_too_coarse, mod, "ode_residual",
                "need a uniform grid with at least 5 interior nodes");
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(y[i] - y[i - 1] - h) > 1e-9 * h)
      throw Error(ErrorKind::grid_too_coarse, mod, "ode_residual", "grid is not uniform in h");
  std::vector<double> res(n - 8);
  const double h2 = h * h, h4 = h2 * h2;
  for (std::size_t i = 4; i + 4 < n; ++i) {
    const double um2 = u[i - 2], um1 = u[i - 1], u0 = u[i], up1 = u[i + 1], up2 = u[i + 2];
    const double d1 = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h);
    const double d2 = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h2);
    const double d4h = (um2 - 4.0 * um1 + 6.0 * u0 - 4.0 * up1 + up2) / h4;
    const double d4H =
        (u[i - 4] - 4.0 * um2 + 6.0 * u0 - 4.0 * up2 + u[i + 4]) / (16.0 * h4);
    const double d4 = (4.0 * d4h - d4H) / 3.0;
    res[i - 4] = std::abs(d4 + 40.0 * u0 * u0 * d2 + 40.0 * u0 * d1 * d1 +
                          96.0 * u0 * u0 * u0 * u0 * u0 + 4.0 * y[i] * u0);
  }
  return res;
}

PainleveSolution solve_painleve_grid(double s, double y0, double y1, double h,
                                     const RHContour& contour, Exec exec) {
  if (!(h > 0.0) || !(y1 > y0))
    throw Error(ErrorKind::config_error, mod, "solve_painleve_grid", "need y1 > y0 and h > 0");
  const std::size_t m = static_cast<std::size_t>(std::llround((y1 - y0) / h)) + 1;
  if (m < 5)
    throw Error(ErrorKind::grid_too_coarse, mod, "solve_painleve_grid",
                "need at least 5 nodes in [y0, y1]");
  const std::size_t n = m + 8;
  std::vector<double> yy(n), uu(n);
  std::vector<cplx> p1(n), p2(n);
  for (std::size_t i = 0; i < n; ++i) yy[i] = y0 + h * (double(i) - 4.0);
  std::exception_ptr first;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      const RHSolution r = solve_rh_painleve(s, yy[i], contour);
      p1[i] = r.N1[0][0];
      p2[i] = r.N1[0][1];
      uu[i] = (cplx(0.0, -1.0) * p2[i]).real();
    } catch (...) {
#pragma omp critical(emkdv_painleve_error)
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);

  PainleveSolution sol;
  sol.s = s;
  sol.contour = contour;
  sol.h = h;
  sol.residual = ode_residual(yy, uu, h);
  for (std::size_t i = 4; i + 4 < n; ++i) {
    sol.y.push_back(yy[i]);
    sol.u.push_back(uu[i]);
    sol.psi1.push_back(p1[i]);
    sol.psi2.push_back(p2[i]);
    sol.imag_part.push_back(std::abs((cplx(0.0, -1.0) * p2[i]).imag()));
  }
  for (double r : sol.residual) sol.max_residual = std::max(sol.max_residual, r);
  return sol;
}

double painleve_y(double x, double t, const ModelParams& p) {
  return -x / std::pow(20.0 * p.beta * t, 0.2);
}

double painleve_asymptote(double x, double t, double s, const ModelParams& p, double M,
                          const RHContour& contour) {
  p.validate();
  if (p.alpha != 0.0)
    throw Error(ErrorKind::wrong_region, mod, "painleve_asymptote", "requires alpha = 0");
  if (!(t >= 3.0))
    throw Error(ErrorKind::config_error, mod, "painleve_asymptote", "requires t >= 3");
  if (classify_region(x, t, p, M) != Region::painleve_sector)
    throw Error(ErrorKind::wrong_region, mod, "painleve_asymptote",
                "(x, t) outside 0 < x <= M t^{1/5}");
  return painleve_scale(t, p) * u_p(s, painleve_y(x, t, p), contour);
}

double painleve_scale(double t, const ModelParams& p) {
  return std::pow(8.0 / (5.0 * p.beta * t), 0.2);
}

}  // namespace emkdv
