#include "emkdv/spectral_scattering.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "emkdv/error.hpp"

namespace emkdv {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr const char* mod = "spectral_scattering";
constexpr std::size_t max_ode_steps = 2'000'000;

void require_decay(const InitialProfile& u0, const char* op) {
  const double X = u0.support_radius();
  const double tail = std::max(std::abs(u0(-X)), std::abs(u0(X)));
  if (!(tail < u0.decay_tol()))
    throw Error(ErrorKind::non_decaying_datum, mod, op,
                "|u0(+-X)| = " + fmt_num(tail) + " >= decay_tol");
}

// Adaptive Bulirsch-Stoer on [x0, x1]; x1 is hit exactly.  (Fehlberg 7(8)
// underestimates its error on these near-quadrature systems and leaves O(1e-6)
// garbage in b at large k.)
template <class State, class System>
void integrate_to(System&& sys, State& y, double x0, double x1, double tol, const char* op) {
  odeint::bulirsch_stoer<State> stepper(tol, tol);
  double x = x0, dx = 0.05;
  std::size_t steps = 0;
  while (x < x1) {
    const bool last = x + dx >= x1;
    if (last) dx = x1 - x;
    const double x_before = x;
    if (stepper.try_step(sys, y, x, dx) == odeint::success) {
      if (last) break;
    } else if (dx < 1e-12 * (1.0 + std::abs(x))) {
      throw Error(ErrorKind::integrator_failure, mod, op,
                  "step size underflow at x = " + fmt_num(x_before));
    }
    if (++steps > max_ode_steps)
      throw Error(ErrorKind::integrator_failure, mod, op, "step budget exhausted");
    for (double v : y)
      if (!std::isfinite(v))
        throw Error(ErrorKind::integrator_failure, mod, op, "non-finite state");
  }
}

// Runs f(i) for i in [0, n), rethrowing the first failure after the loop.
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
  std::exception_ptr first;
  const long long m = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
  for (long long i = 0; i < m; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(emkdv_scatter_error)
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace

Mat2 integrate_jost(const InitialProfile& u0, double k, double ode_tol) {
  if (!(ode_tol > 0.0))
    throw Error(ErrorKind::config_error, mod, "integrate_jost", "ode_tol must be > 0");
  require_decay(u0, "integrate_jost");
  if (u0.is_zero()) return {{{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)}}};

  // w' = [[0, u e^{-2ikx}], [-u e^{2ikx}, 0]] w, packed as (w11, w12, w21, w22).
  using state = std::array<double, 8>;
  auto sys = [&u0, k](const state& w, state& dw, double x) {
    const double u = u0(x);
    const double c = u * std::cos(2.0 * k * x), s = u * std::sin(2.0 * k * x);
    // p12 = u e^{-2ikx} = c - i s ; p21 = -u e^{2ikx} = -c - i s
    for (int j = 0; j < 2; ++j) {
      const double r1 = w[2 * j], i1 = w[2 * j + 1];          // w1j
      const double r2 = w[4 + 2 * j], i2 = w[4 + 2 * j + 1];  // w2j
      dw[2 * j] = c * r2 + s * i2;
      dw[2 * j + 1] = c * i2 - s * r2;
      dw[4 + 2 * j] = -c * r1 + s * i1;
      dw[4 + 2 * j + 1] = -c * i1 - s * r1;
    }
  };
  state w{1, 0, 0, 0, 0, 0, 1, 0};
  const double X = u0.support_radius();
  integrate_to(sys, w, -X, X, ode_tol, "integrate_jost");
  return {{{cplx(w[0], w[1]), cplx(w[2], w[3])}, {cplx(w[4], w[5]), cplx(w[6], w[7])}}};
}

cplx a_continued(const InitialProfile& u0, cplx k, double ode_tol) {
  if (!(ode_tol > 0.0))
    throw Error(ErrorKind::config_error, mod, "a_continued", "ode_tol must be > 0");
  if (k.imag() < 0.0)
    throw Error(ErrorKind::out_of_range, mod, "a_continued", "Im k must be >= 0");
  require_decay(u0, "a_continued");
  if (u0.is_zero()) return 1.0;

  // m12' = 2ik m12 + u m22, m22' = -u m12 ; m12(-X) = 0, m22(-X) = 1.
  using state = std::array<double, 4>;
  const double kr = k.real(), ki = k.imag();
  auto sys = [&u0, kr, ki](const state& m, state& dm, double x) {
    const double u = u0(x);
    dm[0] = -2.0 * ki * m[0] - 2.0 * kr * m[1] + u * m[2];
    dm[1] = 2.0 * kr * m[0] - 2.0 * ki * m[1] + u * m[3];
    dm[2] = -u * m[0];
    dm[3] = -u * m[1];
  };
  state m{0, 0, 1, 0};
  const double X = u0.support_radius();
  integrate_to(sys, m, -X, X, ode_tol, "a_continued");
  return {m[2], m[3]};
}

namespace {

struct node_values {
  cplx a, b;
  double unit, det;
};

node_values scatter_node(const InitialProfile& u0, double k, double ode_tol) {
  const Mat2 s = integrate_jost(u0, k, ode_tol);
  return {s[1][1], s[0][1], std::abs(std::norm(s[1][1]) + std::norm(s[0][1]) - 1.0),
          std::abs(s[0][0] * s[1][1] - s[0][1] * s[1][0] - 1.0)};
}

ReflectionData assemble(const InitialProfile& u0, std::vector<double> k,
                        const std::vector<node_values>& v, double ode_tol,
                        double unitarity_tol) {
  ReflectionData d;
  d.profile = u0;
  d.X = u0.support_radius();
  d.ode_tol = ode_tol;
  d.step = (k.back() - k.front()) / double(k.size() - 1);
  d.k = std::move(k);
  for (const auto& nv : v) {
    d.a.push_back(nv.a);
    d.b.push_back(nv.b);
    d.r.push_back(std::conj(nv.b) / nv.a);
    d.max_unitarity_defect = std::max(d.max_unitarity_defect, nv.unit);
    d.max_det_defect = std::max(d.max_det_defect, nv.det);
  }
  d.tail_b = std::max(std::abs(d.b.front()), std::abs(d.b.back()));
  if (!(d.max_unitarity_defect <= unitarity_tol))
    throw Error(ErrorKind::unitarity_violation, mod, "compute_scattering",
                "max ||a|^2+|b|^2-1| = " + fmt_num(d.max_unitarity_defect) +
                    " exceeds unitarity_tol; enlarge X or tighten ode_tol");
  return d;
}

void check_tols(double ode_tol, double unitarity_tol) {
  if (!(ode_tol > 0.0) || !(unitarity_tol > 0.0))
    throw Error(ErrorKind::config_error, mod, "compute_scattering",
                "tolerances must be > 0");
}

}  // namespace

ReflectionData compute_scattering(const InitialProfile& u0, std::vector<double> k_grid,
                                  double ode_tol, double unitarity_tol, Exec exec) {
  check_tols(ode_tol, unitarity_tol);
  if (k_grid.size() < 4 || !std::is_sorted(k_grid.begin(), k_grid.end()))
    throw Error(ErrorKind::config_error, mod, "compute_scattering",
                "k grid must be sorted with at least 4 nodes");
  std::vector<node_values> v(k_grid.size());
  for_each_index(v.size(), exec,
                 [&](std::size_t i) { v[i] = scatter_node(u0, k_grid[i], ode_tol); });
  return assemble(u0, std::move(k_grid), v, ode_tol, unitarity_tol);
}

ReflectionData compute_scattering(const InitialProfile& u0, const KGridSpec& grid,
                                  double ode_tol, double unitarity_tol, Exec exec) {
  check_tols(ode_tol, unitarity_tol);
  if (!(grid.step > 0.0) || !(grid.half_width >= 3.0 * grid.step) ||
      !(grid.max_half_width >= grid.half_width))
    throw Error(ErrorKind::config_error, mod, "compute_scattering", "bad k grid parameters");
  // Nodes k_i = i * step, i in [-m, m]; extension only integrates the new nodes.
  long long m = std::llround(grid.half_width / grid.step);
  const long long m_max = std::llround(grid.max_half_width / grid.step);
  std::vector<node_values> v(2 * m + 1);
  for_each_index(v.size(), exec, [&](std::size_t i) {
    v[i] = scatter_node(u0, double(static_cast<long long>(i) - m) * grid.step, ode_tol);
  });
  auto tail = [&] { return std::max(std::abs(v.front().b), std::abs(v.back().b)); };
  while (grid.auto_extend && tail() >= grid.tail_tol && m < m_max) {
    const long long add = std::min(std::llround(1.0 / grid.step), m_max - m);
    std::vector<node_values> left(add), right(add);
    for_each_index(2 * add, exec, [&](std::size_t j) {
      const long long i = static_cast<long long>(j % add);
      if (j < std::size_t(add))
        left[i] = scatter_node(u0, double(-(m + add) + i) * grid.step, ode_tol);
      else
        right[i] = scatter_node(u0, double(m + 1 + i) * grid.step, ode_tol);
    });
    left.insert(left.end(), v.begin(), v.end());
    left.insert(left.end(), right.begin(), right.end());
    v.swap(left);
    m += add;
  }
  std::vector<double> ks(v.size());
  for (std::size_t i = 0; i < ks.size(); ++i)
    ks[i] = double(static_cast<long long>(i) - m) * grid.step;
  return assemble(u0, std::move(ks), v, ode_tol, unitarity_tol);
}

namespace {

// Index i0 of the 4-node stencil and the cell containing k.
std::size_t stencil_start(const ReflectionData& d, double k, const char* op) {
  if (!(k >= d.k.front() && k <= d.k.back()))
    throw Error(ErrorKind::out_of_range, mod, op,
                "k = " + fmt_num(k) + " outside grid hull");
  const std::size_t n = d.k.size();
  std::size_t cell = std::upper_bound(d.k.begin(), d.k.end(), k) - d.k.begin();
  cell = cell == 0 ? 0 : cell - 1;
  if (cell >= n - 1) cell = n - 2;
  const std::size_t lo = cell == 0 ? 0 : cell - 1;
  return std::min(lo, n - 4);
}

}  // namespace

cplx reflection_at(const ReflectionData& d, double k) {
  const std::size_t i0 = stencil_start(d, k, "reflection_at");
  for (std::size_t j = i0; j < i0 + 4; ++j)
    if (d.k[j] == k) return d.r[j];
  cplx acc = 0.0;
  for (std::size_t j = i0; j < i0 + 4; ++j) {
    double w = 1.0;
    for (std::size_t m = i0; m < i0 + 4; ++m)
      if (m != j) w *= (k - d.k[m]) / (d.k[j] - d.k[m]);
    acc += w * d.r[j];
  }
  return acc;
}

double reflection_abs2_at(const ReflectionData& d, double k) {
  return std::norm(reflection_at(d, k));
}

ZeroCount count_zeros_of_a(const ReflectionData& data, double contour_height, double floor,
                           Exec exec) {
  if (!(floor > 0.0) || !(contour_height > floor))
    throw Error(ErrorKind::config_error, mod, "count_zeros_of_a",
                "need 0 < floor < contour_height");
  if (!data.profile_available)
    throw Error(ErrorKind::missing_scattering, mod, "count_zeros_of_a",
                "reflection data carries no datum to continue off the axis");
  ZeroCount zc;
  zc.K = std::min(-data.k.front(), data.k.back());
  zc.floor = floor;
  zc.height = contour_height;
  const double K = zc.K;
  const double tol = data.ode_tol;

  // Boundary parametrized by arclength, counter-clockwise from (-K, floor).
  const double w = 2.0 * K, h = contour_height - floor;
  const double perimeter = 2.0 * (w + h);
  auto point = [&](double s) -> cplx {
    if (s < w) return {-K + s, floor};
    s -= w;
    if (s < h) return {K, floor + s};
    s -= h;
    if (s < w) return {K - s, contour_height};
    s -= w;
    return {-K, contour_height - s};
  };

  std::size_t n0 = std::max<std::size_t>(64, std::size_t(std::ceil(perimeter / 0.05)));
  std::vector<double> s(n0);
  for (std::size_t i = 0; i < n0; ++i) s[i] = perimeter * double(i) / double(n0);
  std::vector<cplx> av(n0);
  for_each_index(n0, exec, [&](std::size_t i) { av[i] = a_continued(data.profile, point(s[i]), tol); });

  constexpr double refine_jump = std::numbers::pi / 4.0;
  for (int pass = 0; pass < 12; ++pass) {
    std::vector<double> mids;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::size_t j = (i + 1) % s.size();
      const double jump = std::abs(std::arg(av[j] / av[i]));
      if (jump > refine_jump) {
        const double sj = j == 0 ? perimeter : s[j];
        mids.push_back(0.5 * (s[i] + sj));
      }
    }
    if (mids.empty()) break;
    std::vector<cplx> am(mids.size());
    for_each_index(mids.size(), exec,
                   [&](std::size_t i) { am[i] = a_continued(data.profile, point(mids[i]), tol); });
    std::vector<double> s2;
    std::vector<cplx> a2;
    s2.reserve(s.size() + mids.size());
    a2.reserve(s.size() + mids.size());
    std::size_t p = 0, q = 0;
    while (p < s.size() || q < mids.size()) {
      if (q == mids.size() || (p < s.size() && s[p] < mids[q])) {
        s2.push_back(s[p]);
        a2.push_back(av[p++]);
      } else {
        s2.push_back(mids[q]);
        a2.push_back(am[q++]);
      }
    }
    s.swap(s2);
    av.swap(a2);
  }

  double total = 0.0, max_jump = 0.0, min_abs = std::abs(av[0]);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t j = (i + 1) % s.size();
    const double d = std::arg(av[j] / av[i]);
    total += d;
    max_jump = std::max(max_jump, std::abs(d));
    min_abs = std::min(min_abs, std::abs(av[j]));
  }
  zc.samples = s.size();
  zc.max_jump = max_jump;
  zc.min_abs_a = min_abs;
  const double winding = total / (2.0 * std::numbers::pi);
  if (max_jump > std::numbers::pi / 2.0 || min_abs < 1e3 * tol ||
      std::abs(winding - std::round(winding)) > 1e-6)
    throw Error(ErrorKind::inconclusive_winding, mod, "count_zeros_of_a",
                "boundary phase not resolved (max jump " + fmt_num(max_jump) +
                    ", min |a| " + fmt_num(min_abs) +
                    "); a zero may lie on or near the contour");
  zc.count = int(std::lround(winding));
  return zc;
}

}  // namespace emkdv
