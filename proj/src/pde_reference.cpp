#include "emkdv/pde_reference.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "emkdv/error.hpp"

namespace emkdv {

namespace {

using cplx = std::complex<double>;
constexpr const char* mod = "pde_reference";
constexpr double pi = std::numbers::pi;

template <class T>
struct fftw_buffer {
  T* p = nullptr;
  explicit fftw_buffer(std::size_t n) : p(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
    if (!p) throw std::bad_alloc();
    std::memset(static_cast<void*>(p), 0, sizeof(T) * n);
  }
  ~fftw_buffer() { fftw_free(p); }
  fftw_buffer(const fftw_buffer&) = delete;
  fftw_buffer& operator=(const fftw_buffer&) = delete;
};

// Pseudo-spectral right-hand side on one grid: plans, scratch, wavenumbers.
class spectral_rhs {
 public:
  spectral_rhs(const ModelParams& p, const SpectralGrid& g, Exec exec)
      : p_(p), g_(g), exec_(exec), n_(g.N), nc_(g.N / 2 + 1),
        real_(n_), spec_(nc_), k_(nc_), u_(n_), ux_(n_), uxx_(n_) {
    fwd_ = fftw_plan_dft_r2c_1d(int(n_), real_.p, reinterpret_cast<fftw_complex*>(spec_.p),
                                FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_c2r_1d(int(n_), reinterpret_cast<fftw_complex*>(spec_.p), real_.p,
                                FFTW_ESTIMATE);
    for (std::size_t m = 0; m < nc_; ++m) k_[m] = g.k(m);
  }
  ~spectral_rhs() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
  }
  spectral_rhs(const spectral_rhs&) = delete;
  spectral_rhs& operator=(const spectral_rhs&) = delete;

  std::size_t modes() const { return nc_; }
  double k(std::size_t m) const { return k_[m]; }
  bool kept(std::size_t m) const { return m <= g_.dealias_cutoff(); }

  void forward(const double* x, cplx* xh) {
    std::copy(x, x + n_, real_.p);
    fftw_execute(fwd_);
    for (std::size_t m = 0; m < nc_; ++m) xh[m] = kept(m) ? spec_.p[m] : cplx(0.0);
  }
  // Multiplies by (ik)^order on the way back; result scaled by 1/N.
  void inverse(const cplx* xh, double* x, int order) {
    for (std::size_t m = 0; m < nc_; ++m) {
      cplx f = 1.0;
      if (order == 1) f = cplx(0.0, k_[m]);
      if (order == 2) f = -k_[m] * k_[m];
      spec_.p[m] = kept(m) ? f * xh[m] : cplx(0.0);
    }
    fftw_execute(inv_);
    const double s = 1.0 / double(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = real_.p[j] * s;
  }

  // out = dealiased transform of -(G)_x.
  void eval(const cplx* vh, cplx* out) {
    inverse(vh, u_.p, 0);
    inverse(vh, ux_.p, 1);
    inverse(vh, uxx_.p, 2);
    const double a = p_.alpha, b = p_.beta;
    const long long n = static_cast<long long>(n_);
    double* G = real_.p;
    const double* u = u_.p;
    const double* ux = ux_.p;
    const double* uxx = uxx_.p;
#pragma omp parallel for schedule(static) if (exec_ == Exec::parallel)
    for (long long j = 0; j < n; ++j) {
      const double w = u[j], w2 = w * w;
      G[j] = 2.0 * a * w2 * w + b * (6.0 * w2 * w2 * w + 10.0 * w2 * uxx[j] + 10.0 * w * ux[j] * ux[j]);
    }
    fftw_execute(fwd_);
    for (std::size_t m = 0; m < nc_; ++m)
      out[m] = kept(m) ? cplx(0.0, -k_[m]) * spec_.p[m] : cplx(0.0);
  }

  // Exact damping u <- exp(-sigma h) u on the grid, then back to the
  // dealiased spectrum.  Returns the (mass, energy) removed, measured on the
  // spectra so that the ledger balances to rounding.
  std::pair<double, double> absorb(cplx* vh, const std::vector<double>& damp) {
    const auto before = moments(vh);
    inverse(vh, u_.p, 0);
    const long long n = static_cast<long long>(n_);
    const double* d = damp.data();
    double* w = u_.p;
#pragma omp parallel for schedule(static) if (exec_ == Exec::parallel)
    for (long long j = 0; j < n; ++j) w[j] *= d[j];
    forward(u_.p, vh);
    const auto after = moments(vh);
    return {before.first - after.first, before.second - after.second};
  }

  // (int u, int u^2) from the half spectrum by Parseval.
  std::pair<double, double> moments(const cplx* vh) const {
    const double L = 2.0 * g_.L_domain, n2 = double(n_) * double(n_);
    double e = std::norm(vh[0]);
    for (std::size_t m = 1; m < nc_; ++m) e += (m == n_ / 2 ? 1.0 : 2.0) * std::norm(vh[m]);
    return {vh[0].real() * L / double(n_), e * L / n2};
  }

 private:
  ModelParams p_;
  SpectralGrid g_;
  Exec exec_;
  std::size_t n_, nc_;
  fftw_buffer<double> real_;
  fftw_buffer<cplx> spec_;
  std::vector<double> k_;
  fftw_buffer<double> u_, ux_, uxx_;
  fftw_plan fwd_, inv_;
};

struct etd_coeffs {
  double dt = 0.0;
  std::vector<cplx> E, E2, Q, f1, f2, f3;
};

etd_coeffs make_coeffs(const spectral_rhs& rhs, const ModelParams& p, double dt, int M) {
  etd_coeffs c;
  c.dt = dt;
  const std::size_t nc = rhs.modes();
  for (auto* v : {&c.E, &c.E2, &c.Q, &c.f1, &c.f2, &c.f3}) v->assign(nc, 0.0);
  for (std::size_t m = 0; m < nc; ++m) {
    if (!rhs.kept(m)) continue;
    const cplx Lh = linear_symbol(rhs.k(m), p) * dt;
    c.E[m] = std::exp(Lh);
    c.E2[m] = std::exp(0.5 * Lh);
    cplx q = 0.0, a = 0.0, b = 0.0, d = 0.0;
    for (int j = 0; j < M; ++j) {
      const cplx r = Lh + std::exp(cplx(0.0, 2.0 * pi * (j + 0.5) / M));
      const cplx er = std::exp(r), r3 = r * r * r;
      q += (std::exp(0.5 * r) - 1.0) / r;
      a += (-4.0 - r + er * (4.0 - 3.0 * r + r * r)) / r3;
      b += (2.0 + r + er * (r - 2.0)) / r3;
      d += (-4.0 - 3.0 * r - r * r + er * (4.0 - r)) / r3;
    }
    c.Q[m] = dt * q / double(M);
    c.f1[m] = dt * a / double(M);
    c.f2[m] = dt * b / double(M);
    c.f3[m] = dt * d / double(M);
  }
  return c;
}

void fail_config(const std::string& op, const std::string& what) {
  throw Error(ErrorKind::config_error, mod, op, what);
}

}  // namespace

void SpectralGrid::validate() const {
  if (!(L_domain > 0.0)) fail_config("SpectralGrid", "L_domain must be > 0");
  if (N < 256 || (N & (N - 1)) != 0) fail_config("SpectralGrid", "N must be a power of two >= 256");
}

std::vector<double> SpectralGrid::xs() const {
  std::vector<double> v(N);
  for (std::size_t j = 0; j < N; ++j) v[j] = x(j);
  return v;
}

double SpectralGrid::k(std::size_t m) const { return pi * double(m) / L_domain; }

double Sponge::sigma(double x, double L) const {
  if (!(strength > 0.0) || !(width > 0.0)) return 0.0;
  const double s = (std::abs(x) - (L - width)) / width;
  if (s <= 0.0) return 0.0;
  return strength * 0.5 * (1.0 - std::cos(pi * std::min(s, 1.0)));
}

cplx linear_symbol(double k, const ModelParams& p) {
  const double k3 = k * k * k;
  return {0.0, p.alpha * k3 - p.beta * k3 * k * k};
}

std::vector<double> nonlinear_term(const std::vector<double>& u, const ModelParams& p,
                                   const SpectralGrid& grid, Exec exec) {
  grid.validate();
  if (u.size() != grid.N) fail_config("nonlinear_term", "field size differs from grid N");
  spectral_rhs rhs(p, grid, exec);
  std::vector<cplx> uh(rhs.modes()), nh(rhs.modes());
  rhs.forward(u.data(), uh.data());
  rhs.eval(uh.data(), nh.data());
  std::vector<double> out(grid.N);
  rhs.inverse(nh.data(), out.data(), 0);
  return out;
}

std::pair<double, double> conserved_quantities(const FieldSnapshot& snap) {
  if (snap.x.size() < 2) return {0.0, 0.0};
  const double dx = snap.x[1] - snap.x[0];
  double m = 0.0, e = 0.0;
  for (double v : snap.u) {
    m += v;
    e += v * v;
  }
  return {m * dx, e * dx};
}

double FieldSnapshot::energy_drift() const {
  if (energy0 == 0.0) return energy + absorbed_energy;
  return (energy + absorbed_energy - energy0) / energy0;
}

std::vector<double> sample_field(const FieldSnapshot& snap, const std::vector<double>& xq) {
  const std::size_t n = snap.u.size();
  if (n < 4 || (n & (n - 1)) != 0) fail_config("sample_field", "snapshot not on a spectral grid");
  const double dx = snap.x[1] - snap.x[0];
  const double x0 = snap.x[0], period = dx * double(n);
  fftw_buffer<double> in(n);
  fftw_buffer<cplx> out(n / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(int(n), in.p, reinterpret_cast<fftw_complex*>(out.p),
                                        FFTW_ESTIMATE);
  std::copy(snap.u.begin(), snap.u.end(), in.p);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  std::vector<double> res(xq.size());
  for (std::size_t q = 0; q < xq.size(); ++q) {
    const double th = 2.0 * pi * (xq[q] - x0) / period;
    double acc = out.p[0].real();
    const cplx step = std::exp(cplx(0.0, th));
    cplx w = 1.0;
    for (std::size_t m = 1; m < n / 2; ++m) {
      w *= step;
      if (m % 64 == 0) w = std::exp(cplx(0.0, th * double(m)));  // limit drift
      acc += 2.0 * (out.p[m] * w).real();
    }
    acc += (out.p[n / 2] * std::exp(cplx(0.0, th * double(n / 2)))).real();
    res[q] = acc / double(n);
  }
  return res;
}

std::vector<FieldSnapshot> evolve_samples(const std::vector<double>& u0, const ModelParams& p,
                                          const PdeOptions& opt,
                                          const std::vector<double>& t_out) {
  p.validate();
  const SpectralGrid& g = opt.grid;
  g.validate();
  if (u0.size() != g.N) fail_config("evolve", "initial samples differ from grid N");
  if (!(opt.dt > 0.0)) fail_config("evolve", "dt must be > 0");
  if (opt.contour_points < 8) fail_config("evolve", "contour_points must be >= 8");
  if (!(opt.boundary_tol > 0.0)) fail_config("evolve", "boundary_tol must be > 0");
  for (std::size_t i = 0; i < t_out.size(); ++i)
    if (!(t_out[i] > 0.0) || (i > 0 && !(t_out[i] > t_out[i - 1])))
      fail_config("evolve", "t_out must be positive and strictly ascending");

  spectral_rhs rhs(p, g, opt.exec);
  const std::size_t nc = rhs.modes();
  std::vector<cplx> v(nc), a(nc), b(nc), c(nc), Nv(nc), Na(nc), Nb(nc), Nc(nc);
  rhs.forward(u0.data(), v.data());

  const std::size_t seam = std::max<std::size_t>(1, g.N / 200);
  const bool sponge_on = opt.sponge.strength > 0.0 && opt.sponge.width > 0.0;
  double absorbed_e = 0.0, absorbed_m = 0.0, t = 0.0;
  std::vector<FieldSnapshot> snaps;
  etd_coeffs co;
  std::vector<double> field(g.N), damp;
  const auto xs = g.xs();
  const auto initial = rhs.moments(v.data());

  // Integrates from t to target with step <= dt_max.
  auto advance = [&](double target, double dt_max) {
    const double span = target - t;
    const long long steps = std::max<long long>(1, std::llround(std::ceil(span / dt_max - 1e-9)));
    const double h = span / double(steps);
    if (co.E.empty() || std::abs(co.dt - h) > 1e-14 * h) {
      co = make_coeffs(rhs, p, h, opt.contour_points);
      if (sponge_on) {
        damp.resize(g.N);
        for (std::size_t j = 0; j < g.N; ++j)
          damp[j] = std::exp(-0.5 * opt.sponge.sigma(g.x(j), g.L_domain) * h);
      }
    }
    auto half_damp = [&] {
      const auto lost = rhs.absorb(v.data(), damp);
      absorbed_m += lost.first;
      absorbed_e += lost.second;
    };
    // Strang splitting: half a damping step on either side of the ETDRK4 step
    for (long long s = 0; s < steps; ++s) {
      if (sponge_on) half_damp();
      rhs.eval(v.data(), Nv.data());
      for (std::size_t m = 0; m < nc; ++m) a[m] = co.E2[m] * v[m] + co.Q[m] * Nv[m];
      rhs.eval(a.data(), Na.data());
      for (std::size_t m = 0; m < nc; ++m) b[m] = co.E2[m] * v[m] + co.Q[m] * Na[m];
      rhs.eval(b.data(), Nb.data());
      for (std::size_t m = 0; m < nc; ++m) c[m] = co.E2[m] * a[m] + co.Q[m] * (2.0 * Nb[m] - Nv[m]);
      rhs.eval(c.data(), Nc.data());
      for (std::size_t m = 0; m < nc; ++m)
        v[m] = co.E[m] * v[m] + co.f1[m] * Nv[m] + 2.0 * co.f2[m] * (Na[m] + Nb[m]) +
               co.f3[m] * Nc[m];
      if (sponge_on) half_damp();
      if (s % 64 == 63 || s + 1 == steps) {
        for (std::size_t m = 0; m < nc; ++m)
          if (!std::isfinite(v[m].real()) || !std::isfinite(v[m].imag()))
            throw Error(ErrorKind::blow_up, mod, "evolve",
                        "non-finite field near t = " + fmt_num(t + h * double(s + 1)));
      }
    }
    t = target;
  };

  for (double target : t_out) {
    if (t < opt.startup_time && opt.startup_dt > 0.0)
      advance(std::min(opt.startup_time, target), std::min(opt.startup_dt, opt.dt));
    if (target > t) advance(target, opt.dt);
    rhs.inverse(v.data(), field.data(), 0);
    FieldSnapshot snap;
    snap.t = t;
    snap.x = xs;
    snap.u = field;
    std::tie(snap.mass, snap.energy) = conserved_quantities(snap);
    snap.absorbed_mass = absorbed_m;
    snap.absorbed_energy = absorbed_e;
    snap.mass0 = initial.first;
    snap.energy0 = initial.second;
    for (std::size_t j = 0; j < seam; ++j)
      snap.seam_max = std::max({snap.seam_max, std::abs(field[j]), std::abs(field[g.N - 1 - j])});
    if (!(snap.seam_max <= opt.boundary_tol))
      throw Error(ErrorKind::boundary_contamination, mod, "evolve",
                  "|u| = " + fmt_num(snap.seam_max) + " at the periodic seam at t = " +
                      fmt_num(t) + "; enlarge L_domain");
    snaps.push_back(std::move(snap));
  }
  return snaps;
}

std::vector<FieldSnapshot> evolve(const InitialProfile& u0, const ModelParams& p,
                                  const PdeOptions& opt, const std::vector<double>& t_out) {
  const SpectralGrid& g = opt.grid;
  g.validate();
  std::vector<double> samples(g.N);
  for (std::size_t j = 0; j < g.N; ++j) samples[j] = u0(g.x(j));
  // The retained band must carry the datum's spectrum down to spectral_tol.
  {
    fftw_buffer<double> in(g.N);
    fftw_buffer<cplx> out(g.N / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(int(g.N), in.p, reinterpret_cast<fftw_complex*>(out.p),
                                          FFTW_ESTIMATE);
    std::copy(samples.begin(), samples.end(), in.p);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    double peak = 0.0, edge = 0.0;
    const std::size_t cut = g.dealias_cutoff();
    for (std::size_t m = 0; m <= g.N / 2; ++m) {
      peak = std::max(peak, std::abs(out.p[m]));
      if (m + cut / 10 >= cut) edge = std::max(edge, std::abs(out.p[m]));
    }
    if (peak > 0.0 && edge > opt.spectral_tol * peak)
      fail_config("evolve", "grid does not resolve the datum spectrum (relative tail " +
                                fmt_num(edge / peak) + "); increase N");
  }
  return evolve_samples(samples, p, opt, t_out);
}

}  // namespace emkdv
