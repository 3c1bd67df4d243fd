#include <doctest.h>

#include <cmath>
#include <numbers>

#include "emkdv/error.hpp"
#include "emkdv/log_gamma.hpp"
#include "emkdv/oscillatory_asymptotics.hpp"
#include "emkdv/phase_geometry.hpp"

using namespace emkdv;
using std::numbers::pi;

namespace {

const ModelParams unit{1.0, 1.0};

const ReflectionData& sech03() {
  static const ReflectionData d = compute_scattering(InitialProfile::sech(0.3), KGridSpec{}, 1e-13);
  return d;
}

ReflectionData constant_r(cplx r) {
  ReflectionData d;
  d.step = 0.01;
  for (int i = -200; i <= 200; ++i) {
    d.k.push_back(0.01 * i);
    d.r.push_back(r);
    d.a.push_back(1.0);
    d.b.push_back(0.0);
  }
  return d;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::io_failure;
}

}  // namespace

TEST_CASE("nu") {
  CHECK(nu(0.0) == 0.0);
  CHECK(nu(1.0) == doctest::Approx(std::log(2.0) / (2 * pi)).epsilon(1e-15));
  CHECK(std::abs(nu(1.0) - 0.110318) < 1e-6);
  CHECK(nu(0.3) == doctest::Approx(std::log(1.09) / (2 * pi)).epsilon(1e-15));
  CHECK(nu(0.5) < nu(cplx(0.3, 0.5)));
}

TEST_CASE("beta_X") {
  CHECK(beta_X(0.0) == cplx(0.0));
  const cplx q{0.3, 0.4};
  CHECK(std::norm(beta_X(q)) == doctest::Approx(nu(q)).epsilon(1e-14));
  const cplx b1 = beta_X(1.0);
  CHECK(std::abs(std::abs(b1) - 0.332141) < 1e-6);
  CHECK(std::abs(std::arg(b1) - (pi / 4 - arg_gamma(cplx(0.0, nu(1.0))))) < 1e-14);
}

TEST_CASE("chi vanishes for trivial data") {
  for (cplx r : {cplx(0.0), cplx(0.4, -0.2)}) {
    const auto d = constant_r(r);
    CHECK(std::abs(chi(d, 0.138, 0.362, ChiKind::chi1).value) < 1e-15);
    CHECK(std::abs(chi(d, 0.138, 0.362, ChiKind::chi2).value) < 1e-15);
  }
}

TEST_CASE("chi for the sech datum") {
  const auto& d = sech03();
  const double k1 = 0.13819660112501052, k2 = 0.36180339887498948;
  const auto c1 = chi(d, k1, k2, ChiKind::chi1);
  const auto c2 = chi(d, k1, k2, ChiKind::chi2);
  CHECK(c1.error_est < 1e-9);
  CHECK(std::abs(c1.value.real()) <= 1e-9);
  // mpmath values of the integrals with the exact |r|^2.  At step 0.01 the
  // cubic interpolant of r is good to ~1e-6 here (a has a zero at k = -0.2i).
  CHECK(std::abs(c1.integral - -0.46944088659884379) < 2e-6);
  CHECK(std::abs(c2.integral - -0.52564382933476078) < 2e-6);
  const auto fine = compute_scattering(InitialProfile::sech(0.3), KGridSpec{1.0, 0.0025, false}, 1e-13);
  CHECK(std::abs(chi(fine, k1, k2, ChiKind::chi1).integral - -0.46944088659884379) < 1e-8);
  CHECK(std::abs(chi(fine, k1, k2, ChiKind::chi2).integral - -0.52564382933476078) < 1e-8);
  CHECK(kind_of([&] { chi(d, k1, k2, ChiKind::chi1, 1e-30); }) == ErrorKind::quadrature_failure);
}

TEST_CASE("delta symmetry") {
  const auto& d = sech03();
  const cplx k{0.5, 0.2};
  const cplx lhs = delta(d, 0.138, 0.362, k);
  const cplx rhs = 1.0 / std::conj(delta(d, 0.138, 0.362, std::conj(k)));
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("leading order against the independent evaluation") {
  const auto lo = leading_order(-20.0, 100.0, sech03(), unit);
  CHECK(std::abs(lo.u - -0.085158798736778238) < 1e-7);
  const auto& e = lo.env;
  CHECK(std::abs(e.nu1 - 0.12537473718671437) < 2e-7);
  CHECK(std::abs(e.nu2 - 0.039870962291312434) < 2e-7);
  CHECK(std::abs(e.phi_a - -2.3765913666410868) < 2e-6);
  CHECK(std::abs(e.phi_b - 2.3128461364108501) < 2e-6);
  // definitional amplitude identities
  CHECK(e.amp1 * e.amp1 * e.k1 * (3.0 - 40.0 * e.k1 * e.k1) == doctest::Approx(e.nu1).epsilon(1e-12));
  CHECK(e.amp2 * e.amp2 * e.k2 * (40.0 * e.k2 * e.k2 - 3.0) == doctest::Approx(e.nu2).epsilon(1e-12));
}

TEST_CASE("zero reflection gives zero; phase offset reduction") {
  const auto d = constant_r(0.0);
  CHECK(leading_order(-20.0, 100.0, d, unit).u == 0.0);
  // real positive r at k2: phi_b reduces to pi/4 - arg Gamma(i nu2) + 2 nu2 ln(2k2/(k1+k2)) - I2/pi
  const auto dr = constant_r(0.5);
  const auto lo = leading_order(-20.0, 100.0, dr, unit);
  const double k1 = lo.env.k1, k2 = lo.env.k2, n2 = nu(0.5);
  CHECK(std::abs(lo.env.phi_b - (pi / 4 - arg_gamma(cplx(0.0, n2)) + 2 * n2 * std::log(2 * k2 / (k1 + k2)))) <
        1e-14);
}

TEST_CASE("amplitudes are positive across the region") {
  const auto& d = sech03();
  for (double xi = -0.44; xi < -0.01; xi += 0.03) {
    const auto lo = leading_order(xi * 50.0, 50.0, d, unit);
    CHECK(lo.env.amp1 > 0.0);
    CHECK(lo.env.amp2 > 0.0);
    CHECK(std::isfinite(lo.u));
  }
}

TEST_CASE("region errors") {
  const auto& d = sech03();
  CHECK(kind_of([&] { leading_order(-100.0, 100.0, d, unit); }) == ErrorKind::wrong_region);
  CHECK(kind_of([&] { leading_order(-45.0 + 1e-8, 100.0, d, unit); }) == ErrorKind::wrong_region);
  CHECK(kind_of([&] { decay_region_bound(-20.0, 100.0, d, unit); }) == ErrorKind::wrong_region);
  const auto dp = decay_region_bound(-100.0, 100.0, d, unit);
  CHECK(dp.u == 0.0);
  CHECK(dp.rapid_decay);
  auto narrow = constant_r(0.1);
  narrow.k.resize(230);  // hull ends near k = 0.29 < k2
  narrow.r.resize(230);
  CHECK(kind_of([&] { leading_order(-20.0, 100.0, narrow, unit); }) == ErrorKind::missing_scattering);
}

TEST_CASE("batch evaluation: serial equals parallel") {
  std::vector<XT> q;
  for (int i = 0; i < 8; ++i) q.push_back({-0.2 * (50.0 + 10 * i), 50.0 + 10 * i});
  const auto s = leading_order_batch(q, sech03(), unit, {}, Exec::serial);
  const auto p = leading_order_batch(q, sech03(), unit, {}, Exec::parallel);
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(s[i].u == p[i].u);
}
