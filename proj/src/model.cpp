#include "emkdv/model.hpp"

#include <boost/math/interpolators/makima.hpp>
#include <cmath>

#include "emkdv/error.hpp"

namespace emkdv {

namespace {

using makima_t = boost::math::interpolators::makima<std::vector<double>>;

[[noreturn]] void config_fail(const std::string& op, const std::string& what) {
  throw Error(ErrorKind::config_error, "spectral_scattering", op, what);
}

double eval_makima(const void* p, double x) {
  return (*static_cast<const makima_t*>(p))(x);
}

}  // namespace

void ModelParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorKind::config_error, "phase_geometry", "ModelParams",
                "beta must be > 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::config_error, "phase_geometry", "ModelParams",
                "alpha must be >= 0");
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::sech: return "sech";
    case ProfileKind::gaussian: return "gaussian";
    case ProfileKind::tabulated: return "tabulated";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "sech") return ProfileKind::sech;
  if (name == "gaussian") return ProfileKind::gaussian;
  if (name == "tabulated") return ProfileKind::tabulated;
  config_fail("InitialProfile", "unknown datum kind '" + name + "'");
}

InitialProfile InitialProfile::sech(double amplitude, double width,
                                    double support_radius, double decay_tol) {
  if (!(width > 0.0)) config_fail("InitialProfile", "width must be > 0");
  InitialProfile p;
  p.kind_ = ProfileKind::sech;
  p.amplitude_ = amplitude;
  p.width_ = width;
  p.decay_tol_ = decay_tol;
  const double A = std::abs(amplitude);
  p.X_ = support_radius > 0.0 ? support_radius
                              : (A > auto_tail ? width * std::acosh(A / auto_tail) : 1.0);
  p.check_decay();
  return p;
}

InitialProfile InitialProfile::gaussian(double amplitude, double width,
                                        double support_radius, double decay_tol) {
  if (!(width > 0.0)) config_fail("InitialProfile", "width must be > 0");
  InitialProfile p;
  p.kind_ = ProfileKind::gaussian;
  p.amplitude_ = amplitude;
  p.width_ = width;
  p.decay_tol_ = decay_tol;
  const double A = std::abs(amplitude);
  p.X_ = support_radius > 0.0
             ? support_radius
             : (A > auto_tail ? width * std::sqrt(std::log(A / auto_tail)) : 1.0);
  p.check_decay();
  return p;
}

InitialProfile InitialProfile::tabulated(std::vector<std::pair<double, double>> samples,
                                         double support_radius, double decay_tol) {
  if (samples.size() < 4) config_fail("InitialProfile", "need at least 4 samples");
  std::vector<double> xs, us;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i > 0 && !(samples[i].first > samples[i - 1].first))
      config_fail("InitialProfile", "sample x must be strictly increasing");
    if (!std::isfinite(samples[i].second))
      config_fail("InitialProfile", "non-finite sample value");
    xs.push_back(samples[i].first);
    us.push_back(samples[i].second);
  }
  InitialProfile p;
  p.kind_ = ProfileKind::tabulated;
  p.decay_tol_ = decay_tol;
  p.X_ = support_radius > 0.0 ? support_radius
                              : std::min(-samples.front().first, samples.back().first);
  if (!(p.X_ > 0.0)) config_fail("InitialProfile", "samples must straddle x = 0");
  p.samples_ = std::move(samples);
  p.interp_ = std::make_shared<const makima_t>(std::move(xs), std::move(us));
  p.eval_tab_ = &eval_makima;
  p.check_decay();
  return p;
}

double InitialProfile::operator()(double x) const {
  switch (kind_) {
    case ProfileKind::sech: return amplitude_ / std::cosh(x / width_);
    case ProfileKind::gaussian: {
      const double z = x / width_;
      return amplitude_ * std::exp(-z * z);
    }
    case ProfileKind::tabulated:
      if (x < samples_.front().first || x > samples_.back().first) return 0.0;
      return eval_tab_(interp_.get(), x);
  }
  return 0.0;
}

bool InitialProfile::is_zero() const {
  if (kind_ != ProfileKind::tabulated) return amplitude_ == 0.0;
  for (const auto& s : samples_)
    if (s.second != 0.0) return false;
  return true;
}

void InitialProfile::check_decay() const {
  if (!(decay_tol_ > 0.0)) config_fail("InitialProfile", "decay_tol must be > 0");
  const double l = std::abs((*this)(-X_)), r = std::abs((*this)(X_));
  if (!(l < decay_tol_) || !(r < decay_tol_))
    throw Error(ErrorKind::non_decaying_datum, "spectral_scattering", "InitialProfile",
                "|u0(+-X)| = " + fmt_num(std::max(l, r)) +
                    " not below decay_tol at X = " + fmt_num(X_));
}

}  // namespace emkdv
