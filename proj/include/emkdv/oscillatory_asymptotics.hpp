#pragma once

#include <complex>
#include <vector>

#include "emkdv/execution.hpp"
#include "emkdv/model.hpp"
#include "emkdv/spectral_scattering.hpp"

namespace emkdv {

/// ln(1 + |r|^2) / (2 pi).
double nu(cplx rval);

enum class ChiKind { chi1, chi2 };

struct ChiResult {
  cplx value;          // chi_j(k_j), purely imaginary up to quadrature error
  double integral;     // the real integral I_j, chi_j = I_j / (2 pi i)
  double error_est;    // |Q_2n - Q_n| summed over cells
};

/// chi_j(k_j) = (1/2 pi i) int_{k1}^{k2} ln((1+|r(s)|^2)/(1+|r(k_j)|^2)) (1/(s-k_j) - 1/(s+k_j)) ds.
/// Composite Gauss-Legendre with the grid nodes as breakpoints (the
/// interpolant is one cubic per cell), 10 vs 20 points per cell.
ChiResult chi(const ReflectionData& data, double k1, double k2, ChiKind which,
              double quad_tol = 1e-10);

/// delta(k) = exp{(1/2 pi i) int_{k1}^{k2} ln(1+|r(s)|^2) (1/(s-k) - 1/(s+k)) ds}
/// for k off [-k2,-k1] u [k1,k2].
cplx delta(const ReflectionData& data, double k1, double k2, cplx k);

/// sqrt(nu(q)) exp(i(pi/4 - arg q - arg Gamma(i nu(q)))); 0 at q = 0.
cplx beta_X(cplx q);

struct AsymptoticEnvelope {
  double k1 = 0, k2 = 0;
  double nu1 = 0, nu2 = 0;
  double phi_a = 0, phi_b = 0;
  double amp1 = 0, amp2 = 0;
  cplx chi1_at_k1, chi2_at_k2;
};

struct LeadingOrder {
  double u = 0.0;       // -u_as / sqrt(t)
  double phase1 = 0.0;  // full argument of the k1 cosine
  double phase2 = 0.0;  // full argument of the k2 cosine
  AsymptoticEnvelope env;
};

struct AsymptoticOptions {
  double quad_tol = 1e-10;
  double t_min = 3.0;
};

/// Leading-order two-cosine asymptotics in the oscillatory region.
LeadingOrder leading_order(double x, double t, const ReflectionData& data,
                           const ModelParams& p, const AsymptoticOptions& opt = {});

struct XT {
  double x, t;
};

std::vector<LeadingOrder> leading_order_batch(const std::vector<XT>& q, const ReflectionData& data,
                                              const ModelParams& p,
                                              const AsymptoticOptions& opt = {},
                                              Exec exec = Exec::parallel);

struct DecayPrediction {
  double u = 0.0;
  bool rapid_decay = true;
};

/// Beyond the merge point there are no real stationary points; the leading
/// order is zero and no rate is asserted.
DecayPrediction decay_region_bound(double x, double t, const ReflectionData& data,
                                   const ModelParams& p);

}  // namespace emkdv
