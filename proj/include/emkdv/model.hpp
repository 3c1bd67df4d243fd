#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace emkdv {

/// Dispersion coefficients of
///   u_t + a(6u^2u_x + u_xxx) + b(30u^4u_x + 10u_x^3 + 40uu_xu_xx + 10u^2u_xxx + u_xxxxx) = 0.
/// alpha = 0 selects the reduced fifth-order equation.
struct ModelParams {
  double alpha = 1.0;
  double beta = 1.0;

  void validate() const;
};

enum class ProfileKind { sech, gaussian, tabulated };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

/// Real initial datum u0(x), truncated to [-X, X].
class InitialProfile {
 public:
  static constexpr double default_decay_tol = 1e-10;
  /// Target tail size used when X is chosen automatically.
  static constexpr double auto_tail = 1e-12;

  /// support_radius <= 0 picks X automatically so that |u0(+-X)| < 1e-12.
  static InitialProfile sech(double amplitude, double width = 1.0,
                             double support_radius = 0.0,
                             double decay_tol = default_decay_tol);
  static InitialProfile gaussian(double amplitude, double width = 1.0,
                                 double support_radius = 0.0,
                                 double decay_tol = default_decay_tol);
  /// Samples need strictly increasing x; monotone (makima) interpolation in
  /// between, zero outside.
  static InitialProfile tabulated(std::vector<std::pair<double, double>> samples,
                                  double support_radius = 0.0,
                                  double decay_tol = default_decay_tol);
  static InitialProfile zero() { return sech(0.0); }

  double operator()(double x) const;

  ProfileKind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  double width() const { return width_; }
  double support_radius() const { return X_; }
  double decay_tol() const { return decay_tol_; }
  const std::vector<std::pair<double, double>>& samples() const { return samples_; }
  bool is_zero() const;

 private:
  InitialProfile() = default;
  void check_decay() const;

  ProfileKind kind_ = ProfileKind::sech;
  double amplitude_ = 0.0;
  double width_ = 1.0;
  double X_ = 1.0;
  double decay_tol_ = default_decay_tol;
  std::vector<std::pair<double, double>> samples_;
  std::shared_ptr<const void> interp_;  // type-erased makima interpolant
  double (*eval_tab_)(const void*, double) = nullptr;
};

}  // namespace emkdv
