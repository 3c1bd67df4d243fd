#include <doctest.h>

#include <cmath>
#include <random>

#include "emkdv/phase_geometry.hpp"

using namespace emkdv;
using cplx = std::complex<double>;

TEST_CASE("phase values and symmetries") {
  const ModelParams p{1.0, 1.0};
  CHECK(phase(0.0, -0.2, p) == cplx(0.0));
  CHECK(std::abs(phase(0.5, -0.2, p) - cplx(0.0, 0.2)) < 1e-15);
  for (double k : {-2.0, -0.3, 0.1, 1.7}) CHECK(phase(k, -0.2, p).real() == 0.0);
  const cplx z{0.4, 0.3};
  CHECK(std::abs(phase(-z, -0.2, p) + phase(z, -0.2, p)) < 1e-14);
  CHECK(std::abs(phase(std::conj(z), -0.2, p).real() + phase(z, -0.2, p).real()) < 1e-14);
  // theta(k) of the reduced equation is phase at alpha = 0
  const ModelParams p0{0.0, 1.0};
  CHECK(std::abs(phase(z, 0.1, p0) - cplx(0.0, 2.0) * (-z * 0.1 + 16.0 * std::pow(z, 5))) < 1e-14);
}

TEST_CASE("stationary points") {
  const ModelParams p{1.0, 1.0};
  const auto s = stationary_points(-0.2, p);
  REQUIRE(s.region == Region::oscillatory);
  CHECK(std::abs(*s.k1 - 0.13819660112501052) < 1e-15);
  CHECK(std::abs(*s.k2 - 0.36180339887498948) < 1e-15);

  const auto m = stationary_points(-0.45, p);
  CHECK(m.region == Region::merged);
  CHECK(std::abs(*m.k1 - std::sqrt(0.075)) < 1e-15);
  CHECK(*m.k1 == *m.k2);
  CHECK(merge_xi(p) == doctest::Approx(-0.45).epsilon(1e-15));

  const auto z = stationary_points(80.0, ModelParams{0.0, 1.0});
  CHECK(z.region == Region::positive_xi);
  CHECK(std::abs(*z.k0 - 1.0) < 1e-15);
  CHECK(stationary_points(-1.0, p).region == Region::fast_decay);
  CHECK(stationary_points(-0.45 + 1e-10, p).region == Region::merged);
}

TEST_CASE("stationary residual over random xi") {
  std::mt19937_64 gen(20261016);
  for (double a : {0.5, 1.0, 2.0})
    for (double b : {0.5, 1.0, 2.0}) {
      const ModelParams p{a, b};
      std::uniform_real_distribution<double> xi(merge_xi(p), 0.0);
      for (int i = 0; i < 50; ++i) {
        const auto s = stationary_points(xi(gen), p);
        if (s.region != Region::oscillatory) continue;
        CHECK(0.0 < *s.k1);
        CHECK(*s.k1 < *s.k2);
        for (double k : {*s.k1, -*s.k1, *s.k2, -*s.k2})
          CHECK(std::abs(phase_derivative(k, s.xi, p)) <= 1e-12);
      }
    }
}

TEST_CASE("k1, k2 are continuous and merge") {
  const ModelParams p{1.0, 1.0};
  double prev1 = 0.0, prev2 = 1.0;
  for (double xi = -0.01; xi > -0.449; xi -= 0.01) {
    const auto s = stationary_points(xi, p);
    CHECK(*s.k1 > prev1);
    CHECK(*s.k2 < prev2);
    prev1 = *s.k1;
    prev2 = *s.k2;
  }
  const auto s = stationary_points(-0.45 + 1e-7, p);
  CHECK(*s.k2 - *s.k1 < 1e-2);
}

TEST_CASE("signature table") {
  const ModelParams p{1.0, 1.0};
  const auto tab = signature_table(-0.2, p, -1.0, 1.0, -1.0, 1.0, 101);
  // every real-axis sample is zero
  for (std::size_t i = 0; i < tab.n; ++i) {
    REQUIRE(std::abs(tab.im_at(50)) < 1e-15);
    CHECK(tab.sign[50 * tab.n + i] == 0);
  }
  // conjugate rows carry opposite signs
  for (std::size_t j = 0; j < tab.n; ++j)
    for (std::size_t i = 0; i < tab.n; ++i)
      CHECK(tab.sign[j * tab.n + i] == -tab.sign[(tab.n - 1 - j) * tab.n + i]);
  // next to k2 in the upper half plane: Re Phi = -2 Im k Phi'(k2)/2i ... direct evaluation
  const cplx k = cplx(0.36180339887498948 + 0.1, 0.1);
  const double re = phase(k, -0.2, p).real();
  CHECK(re < 0.0);
  const auto small = signature_table(-0.2, p, 0.46180339887498948, 0.46180339887498948 + 1e-3, 0.1,
                                     0.1 + 1e-3, 2);
  CHECK(small.sign[0] == -1);
}

TEST_CASE("region classification") {
  const ModelParams p{1.0, 1.0};
  CHECK(classify_region(-20.0, 100.0, p, 2.0) == Region::oscillatory);
  CHECK(classify_region(-100.0, 100.0, p, 2.0) == Region::fast_decay);
  const ModelParams p0{0.0, 1.0};
  CHECK(classify_region(1.0, 100.0, p0, 2.0) == Region::painleve_sector);
  CHECK(classify_region(6.0, 100.0, p0, 2.0) == Region::positive_xi);
  CHECK(classify_region(-1.0, 100.0, p0, 2.0) == Region::fast_decay);
  // the sector is tied to alpha = 0
  CHECK(classify_region(1.0, 100.0, p, 2.0) == Region::positive_xi);
}
