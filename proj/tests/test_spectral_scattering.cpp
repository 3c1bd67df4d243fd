#include <doctest.h>

#include <cmath>
#include <numbers>

#include "emkdv/error.hpp"
#include "emkdv/log_gamma.hpp"
#include "emkdv/spectral_scattering.hpp"

using namespace emkdv;
using std::numbers::pi;

namespace {

// Frozen from tests/oracles/generate.py (closed-form sech scattering data).
const cplx a_sech03_07{0.97319050322151536, -0.146555352232556};
const cplx a_sech03_m13{0.99697775691597388, 0.072756054271533909};
const cplx a_sech03_07_04i{0.93221888267138771, -0.08642320616752701};
const double r0_sech03 = 1.3763819204711735;  // tan(0.3 pi)

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::io_failure;
}

const ReflectionData& sech03() {
  static const ReflectionData d = compute_scattering(InitialProfile::sech(0.3), KGridSpec{}, 1e-13);
  return d;
}

}  // namespace

TEST_CASE("log-gamma matches reference values") {
  const cplx g1 = log_gamma({2.5, -1.5});
  CHECK(std::abs(g1 - cplx(-0.22711224079322732, -1.171292934664603)) < 1e-13);
  // reflection branch; compare modulo 2 pi i
  const cplx g2 = log_gamma({-0.7, 0.2});
  CHECK(std::abs(g2.real() - 1.2068474867912514) < 1e-12);
  CHECK(std::abs(std::remainder(g2.imag() + 3.4835540014671647, 2 * pi)) < 1e-12);
  CHECK(std::abs(arg_gamma({0.0, 0.5}) + 1.8148546257003244) < 1e-13);
  CHECK(std::abs(arg_gamma({0.0, 2.0}) + 1.4411500104851083) < 1e-13);
}

TEST_CASE("zero datum gives the identity") {
  const auto u0 = InitialProfile::zero();
  const Mat2 s = integrate_jost(u0, 0.7, 1e-12);
  CHECK(std::abs(s[0][0] - 1.0) == 0.0);
  CHECK(std::abs(s[0][1]) == 0.0);
  const auto d = compute_scattering(u0, KGridSpec{2.0, 0.1, false}, 1e-12);
  for (std::size_t i = 0; i < d.k.size(); ++i) {
    CHECK(std::abs(d.a[i] - 1.0) == 0.0);
    CHECK(std::abs(d.r[i]) == 0.0);
  }
  CHECK(count_zeros_of_a(d).count == 0);
}

TEST_CASE("sech datum matches the closed-form scattering data") {
  const auto u0 = InitialProfile::sech(0.3);
  const Mat2 s = integrate_jost(u0, 0.7, 1e-13);
  CHECK(std::abs(s[1][1] - a_sech03_07) < 1e-11);
  CHECK(std::abs(s[0][0] - std::conj(a_sech03_07)) < 1e-11);
  CHECK(std::abs(s[0][1] - std::sin(0.3 * pi) / std::cosh(0.7 * pi)) < 1e-11);
  CHECK(std::abs(s[1][0] + std::conj(s[0][1])) < 1e-11);
  CHECK(std::abs(integrate_jost(u0, -1.3, 1e-13)[1][1] - a_sech03_m13) < 1e-11);
  CHECK(std::abs(a_continued(u0, {0.7, 0.4}, 1e-13) - a_sech03_07_04i) < 1e-11);
}

TEST_CASE("Born approximation for a weak sech") {
  const double eps = 1e-3;
  const Mat2 s = integrate_jost(InitialProfile::sech(eps), 0.5, 1e-13);
  const double born = eps * pi / std::cosh(pi * 0.5);
  CHECK(std::abs(born - 1.252040e-3) < 1e-9);
  CHECK(std::abs(s[0][1] - born) < 1e-8);
  CHECK(std::abs(s[0][1].imag()) < 1e-12);
}

TEST_CASE("unitarity for the gaussian datum") {
  const auto u0 = InitialProfile::gaussian(0.3);
  const Mat2 s = integrate_jost(u0, 1.0, 1e-13);
  CHECK(std::abs(std::norm(s[0][0]) - (1.0 - std::norm(s[0][1]))) < 1e-11);
  const auto d = compute_scattering(u0, KGridSpec{5.0, 0.01, false}, 1e-13);
  CHECK(d.max_unitarity_defect < 1e-8);
  CHECK(d.max_det_defect < 1e-8);
}

TEST_CASE("reflection grid, symmetry and interpolation") {
  const auto& d = sech03();
  CHECK(d.max_unitarity_defect < 1e-8);
  CHECK(d.tail_b < 1e-10);
  CHECK(d.k_min() == -d.k_max());
  const cplx r0 = reflection_at(d, 0.0);
  CHECK(std::abs(r0.imag()) <= 1e-10);
  CHECK(std::abs(r0.real() - r0_sech03) < 1e-10);
  // node identity
  const std::size_t i = std::size_t(std::llround((0.5 - d.k_min()) / d.step));
  CHECK(reflection_at(d, d.k[i]) == d.r[i]);
  // r(-k) = conj r(k)
  for (double k : {0.123, 0.777, 2.345})
    CHECK(std::abs(reflection_at(d, -k) - std::conj(reflection_at(d, k))) < 1e-10);
  // midpoint against re-integration
  const double km = 0.505;
  const Mat2 s = integrate_jost(InitialProfile::sech(0.3), km, 1e-13);
  CHECK(std::abs(reflection_at(d, km) - std::conj(s[0][1]) / s[1][1]) < 1e-7);
  CHECK(kind_of([&] { reflection_at(d, d.k_max() + 0.1); }) == ErrorKind::out_of_range);
}

TEST_CASE("|a - 1| decays beyond the datum bandwidth") {
  const auto& d = sech03();
  double prev = 1.0;
  for (double k = 1.0; k <= 4.0; k += 1.0) {
    const std::size_t i = std::size_t(std::llround((k - d.k_min()) / d.step));
    const double dev = std::abs(d.a[i] - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
}

TEST_CASE("zero counting certifies and rejects") {
  CHECK(count_zeros_of_a(sech03()).count == 0);
  const auto big = compute_scattering(InitialProfile::sech(3.0), KGridSpec{5.0, 0.02, false}, 1e-12,
                                      1e-6);
  CHECK(count_zeros_of_a(big).count >= 1);
}

TEST_CASE("input validation") {
  CHECK(kind_of([] { InitialProfile::sech(0.3, 1.0, 5.0); }) == ErrorKind::non_decaying_datum);
  CHECK(kind_of([] { InitialProfile::sech(0.3, -1.0); }) == ErrorKind::config_error);
  CHECK(kind_of([] { InitialProfile::tabulated({{-1, 0}, {0, 1}, {0, 2}, {1, 0}}); }) ==
        ErrorKind::config_error);
}

TEST_CASE("tabulated datum reproduces the analytic one") {
  std::vector<std::pair<double, double>> samples;
  for (int j = -1400; j <= 1400; ++j) {
    const double x = 0.02 * j;
    samples.emplace_back(x, 0.3 / std::cosh(x));
  }
  const auto u0 = InitialProfile::tabulated(samples);
  const Mat2 s = integrate_jost(u0, 0.7, 1e-12);
  CHECK(std::abs(s[1][1] - a_sech03_07) < 1e-6);
}

TEST_CASE("serial and parallel grids agree bit for bit") {
  const auto u0 = InitialProfile::gaussian(0.3);
  const KGridSpec g{1.0, 0.05, false};
  const auto a = compute_scattering(u0, g, 1e-12, 1e-8, Exec::serial);
  const auto b = compute_scattering(u0, g, 1e-12, 1e-8, Exec::parallel);
  REQUIRE(a.k.size() == b.k.size());
  for (std::size_t i = 0; i < a.k.size(); ++i) CHECK(a.r[i] == b.r[i]);
}
