#include "emkdv/oscillatory_asymptotics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <exception>
#include <numbers>

#include "emkdv/error.hpp"
#include "emkdv/log_gamma.hpp"
#include "emkdv/phase_geometry.hpp"

namespace emkdv {

namespace {

constexpr const char* mod = "oscillatory_asymptotics";
constexpr double pi = std::numbers::pi;

void require_hull(const ReflectionData& d, double k1, double k2, const char* op) {
  if (!(0.0 < k1 && k1 < k2))
    throw Error(ErrorKind::config_error, mod, op, "need 0 < k1 < k2");
  if (!(k2 <= d.k.back() && -k2 >= d.k.front()))
    throw Error(ErrorKind::missing_scattering, mod, op,
                "stationary points outside the reflection grid hull");
}

// Grid nodes strictly inside (a, b), with a and b as outer breakpoints.
std::vector<double> breakpoints(const ReflectionData& d, double a, double b) {
  std::vector<double> bp{a};
  auto it = std::upper_bound(d.k.begin(), d.k.end(), a);
  for (; it != d.k.end() && *it < b; ++it)
    if (*it - bp.back() > 1e-13) bp.push_back(*it);
  if (b - bp.back() <= 1e-13) bp.pop_back();
  bp.push_back(b);
  return bp;
}

template <class F>
std::pair<double, double> composite_gauss(const std::vector<double>& bp, F&& f) {
  using g10 = boost::math::quadrature::gauss<double, 10>;
  using g20 = boost::math::quadrature::gauss<double, 20>;
  double q = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double lo = g10::integrate(f, bp[i], bp[i + 1]);
    const double hi = g20::integrate(f, bp[i], bp[i + 1]);
    q += hi;
    err += std::abs(hi - lo);
  }
  return {q, err};
}

}  // namespace

double nu(cplx rval) { return std::log1p(std::norm(rval)) / (2.0 * pi); }

ChiResult chi(const ReflectionData& data, double k1, double k2, ChiKind which, double quad_tol) {
  require_hull(data, k1, k2, "chi");
  const double kj = which == ChiKind::chi1 ? k1 : k2;
  const double rj2 = reflection_abs2_at(data, kj);
  auto L = [&](double s) { return std::log1p((reflection_abs2_at(data, s) - rj2) / (1.0 + rj2)); };
  // Removable point: L(kj) = 0, so the integrand tends to L'(kj); one-sided
  // difference into the interval with the grid step.
  const double h = std::min(data.step, 0.5 * (k2 - k1));
  const double dL = which == ChiKind::chi1 ? L(kj + h) / h : -L(kj - h) / h;
  auto f = [&](double s) {
    const double ds = s - kj;
    if (std::abs(ds) <= 1e-14 * (1.0 + kj)) return dL;
    return L(s) * (1.0 / ds - 1.0 / (s + kj));
  };
  const auto [I, err] = composite_gauss(breakpoints(data, k1, k2), f);
  if (!(err <= quad_tol))
    throw Error(ErrorKind::quadrature_failure, mod, "chi",
                "node-doubling estimate " + fmt_num(err) + " exceeds quad_tol");
  return {cplx(0.0, -I / (2.0 * pi)), I, err};
}

cplx delta(const ReflectionData& data, double k1, double k2, cplx k) {
  require_hull(data, k1, k2, "delta");
  auto f_re = [&](double s) {
    return (std::log1p(reflection_abs2_at(data, s)) * (1.0 / (s - k) - 1.0 / (s + k))).real();
  };
  auto f_im = [&](double s) {
    return (std::log1p(reflection_abs2_at(data, s)) * (1.0 / (s - k) - 1.0 / (s + k))).imag();
  };
  const auto bp = breakpoints(data, k1, k2);
  const cplx I(composite_gauss(bp, f_re).first, composite_gauss(bp, f_im).first);
  return std::exp(I / cplx(0.0, 2.0 * pi));
}

cplx beta_X(cplx q) {
  if (q == 0.0) return 0.0;
  const double n = nu(q);
  return std::sqrt(n) * std::exp(cplx(0.0, pi / 4.0 - std::arg(q) - arg_gamma(cplx(0.0, n))));
}

LeadingOrder leading_order(double x, double t, const ReflectionData& data, const ModelParams& p,
                           const AsymptoticOptions& opt) {
  if (!(t >= opt.t_min))
    throw Error(ErrorKind::config_error, mod, "leading_order",
                "t = " + fmt_num(t) + " below t_min");
  const StationaryPointSet sp = stationary_points(x / t, p);
  if (sp.region != Region::oscillatory)
    throw Error(ErrorKind::wrong_region, mod, "leading_order",
                "xi = " + fmt_num(x / t) + " is in region " + to_string(sp.region));
  const double k1 = *sp.k1, k2 = *sp.k2, a = p.alpha, b = p.beta;
  require_hull(data, k1, k2, "leading_order");

  LeadingOrder out;
  AsymptoticEnvelope& e = out.env;
  e.k1 = k1;
  e.k2 = k2;
  const cplx r1 = reflection_at(data, k1), r2 = reflection_at(data, k2);
  e.nu1 = nu(r1);
  e.nu2 = nu(r2);
  // 3a - 40b k1^2 = 40b k2^2 - 3a = 3a sqrt(d): both positive inside the region.
  const double root = 3.0 * a * std::sqrt(1.0 + 20.0 * b * (x / t) / (9.0 * a * a));
  e.amp1 = std::sqrt(e.nu1 / (k1 * root));
  e.amp2 = std::sqrt(e.nu2 / (k2 * root));

  const ChiResult c1 = chi(data, k1, k2, ChiKind::chi1, opt.quad_tol);
  const ChiResult c2 = chi(data, k1, k2, ChiKind::chi2, opt.quad_tol);
  e.chi1_at_k1 = c1.value;
  e.chi2_at_k2 = c2.value;
  const double arg1 = r1 == 0.0 ? 0.0 : std::arg(r1);
  const double arg2 = r2 == 0.0 ? 0.0 : std::arg(r2);
  const double g1 = e.nu1 == 0.0 ? -pi / 2.0 : arg_gamma(cplx(0.0, e.nu1));
  const double g2 = e.nu2 == 0.0 ? -pi / 2.0 : arg_gamma(cplx(0.0, e.nu2));
  e.phi_a = -pi / 4.0 - arg1 + g1 + 2.0 * e.nu1 * std::log((k1 + k2) / (2.0 * k1)) -
            c1.integral / pi;
  e.phi_b = pi / 4.0 - arg2 - g2 + 2.0 * e.nu2 * std::log(2.0 * k2 / (k1 + k2)) -
            c2.integral / pi;

  const double gap = 16.0 * t * (k2 - k1) * (k2 - k1);
  out.phase1 = 16.0 * t * k1 * k1 * k1 * (8.0 * b * k1 * k1 - a) -
               e.nu1 * std::log(gap * k1 * root) + e.phi_a;
  out.phase2 = 16.0 * t * k2 * k2 * k2 * (8.0 * b * k2 * k2 - a) +
               e.nu2 * std::log(gap * k2 * root) + e.phi_b;
  const double u_as = e.amp1 * std::cos(out.phase1) + e.amp2 * std::cos(out.phase2);
  out.u = -u_as / std::sqrt(t);
  return out;
}

std::vector<LeadingOrder> leading_order_batch(const std::vector<XT>& q, const ReflectionData& data,
                                              const ModelParams& p, const AsymptoticOptions& opt,
                                              Exec exec) {
  std::vector<LeadingOrder> out(q.size());
  std::exception_ptr first;
  const long long n = static_cast<long long>(q.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (long long i = 0; i < n; ++i) {
    try {
      out[i] = leading_order(q[i].x, q[i].t, data, p, opt);
    } catch (...) {
#pragma omp critical(emkdv_asym_error)
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
  return out;
}

DecayPrediction decay_region_bound(double x, double t, const ReflectionData&,
                                   const ModelParams& p) {
  const Region r = stationary_points(x / t, p).region;
  if (r != Region::fast_decay)
    throw Error(ErrorKind::wrong_region, mod, "decay_region_bound",
                "xi = " + fmt_num(x / t) + " is in region " + to_string(r));
  return {0.0, true};
}

}  // namespace emkdv
