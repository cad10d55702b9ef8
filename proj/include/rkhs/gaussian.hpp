#pragma once

// Gaussian kernel exp(-(t-u)^2/2), the Hermite-function RKHS basis
//   psi_m(t) = (2 sqrt2/3)^{1/2} (6^m m!)^{-1/2} e^{-t^2/3} H_m(2t/sqrt3),
// its one-parameter generalisation psi_{m,kappa}, and the Mercer
// eigen-decomposition in L2(R, w_alpha), w_alpha(t) = alpha/sqrt(pi) e^{-alpha^2 t^2}.
//
// Hermite polynomials always enter through h_m = H_m / sqrt(2^m m!), which
// the normalised recurrence produces without factorial growth.

#include <cmath>
#include <concepts>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "rkhs/core.hpp"
#include "rkhs/orthopoly.hpp"
#include "rkhs/report.hpp"

namespace rkhs {

struct GaussianScale {
  double lambda = 1.0;

  explicit GaussianScale(double l = 1.0) : lambda(l) {
    if (!(l > 0) || !std::isfinite(l)) throw std::invalid_argument("GaussianScale: lambda must be positive and finite");
  }
};

/// Mercer parameters; beta and delta^2 follow from alpha.
class MercerParams {
 public:
  explicit MercerParams(double alpha = std::sqrt(2.0 / 3.0)) : alpha_(alpha) {
    if (!(alpha > 0) || !std::isfinite(alpha)) throw std::invalid_argument("MercerParams: alpha must be positive");
    beta_ = std::pow(1.0 + 2.0 / (alpha * alpha), 0.25);
    delta_sq_ = 0.5 * alpha * alpha * (beta_ * beta_ - 1.0);
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double delta_sq() const noexcept { return delta_sq_; }

 private:
  double alpha_;
  double beta_;
  double delta_sq_;
};

template <std::floating_point Scalar>
Scalar gaussian_kernel(const GaussianScale& scale, Scalar t, Scalar u) {
  const Scalar d = static_cast<Scalar>(scale.lambda) * (t - u);
  return std::exp(-d * d / Scalar(2));
}

/// Hermite function pi^{-1/4} e^{-t^2/2} H_m(t) / sqrt(2^m m!).
template <std::floating_point Scalar>
Scalar hermite_fn(int m, Scalar t) {
  const auto h = hermite_normalized_scaled(m, t);
  return h.value_times_exp(-t * t / Scalar(2) - std::log(std::numbers::pi_v<Scalar>) / Scalar(4));
}

/// psi_m(t) at the unit scale.
template <std::floating_point Scalar>
Scalar gaussian_psi(int m, Scalar t) {
  const Scalar x = Scalar(2) * t / std::sqrt(Scalar(3));
  const auto h = hermite_normalized_scaled(m, x);
  const Scalar log_pref = Scalar(0.5) * std::log(Scalar(2) * std::numbers::sqrt2_v<Scalar> / Scalar(3)) -
                          Scalar(0.5) * static_cast<Scalar>(m) * std::log(Scalar(3));
  return h.value_times_exp(log_pref - t * t / Scalar(3));
}

/// psi_m(lambda t).
template <std::floating_point Scalar>
Scalar gaussian_psi(const GaussianScale& scale, int m, Scalar t) {
  return gaussian_psi(m, static_cast<Scalar>(scale.lambda) * t);
}

/// psi_{m,kappa}(t), 0 < kappa < sqrt 2, with a^2 = 1 + kappa^2/2:
///   (sqrt2 kappa/a^2)^{1/2} (1 - kappa^2/a^2)^{m/2} e^{-(1 - 1/a^2) t^2}
///   * h_m(kappa t / (a^2 sqrt(1 - kappa^2/a^2))).
/// kappa = 1 gives psi_m.
template <std::floating_point Scalar>
Scalar gaussian_psi_scaled(int m, Scalar kappa, Scalar t) {
  if (!(kappa > 0) || !(kappa < std::numbers::sqrt2_v<Scalar>)) {
    throw std::invalid_argument("gaussian_psi_scaled: kappa must lie in (0, sqrt 2)");
  }
  const Scalar a2 = Scalar(1) + kappa * kappa / Scalar(2);
  const Scalar c = Scalar(1) - kappa * kappa / a2;
  const Scalar x = kappa * t / (a2 * std::sqrt(c));
  const auto h = hermite_normalized_scaled(m, x);
  const Scalar log_pref = Scalar(0.5) * std::log(std::numbers::sqrt2_v<Scalar> * kappa / a2) +
                          Scalar(0.5) * static_cast<Scalar>(m) * std::log(c);
  return h.value_times_exp(log_pref - (Scalar(1) - Scalar(1) / a2) * t * t);
}

/// H_m(b t) through the multiplication theorem
///   sum_k b^{m-2k} (b^2-1)^k C(m,2k) (2k)!/k! H_{m-2k}(t).
/// Meant for moderate m; the direct recurrence is the production path.
template <std::floating_point Scalar>
Scalar hermite_multiplication(int m, Scalar b, Scalar t) {
  detail::require_degree(m, "hermite_multiplication");
  Scalar s = 0;
  for (int k = 0; 2 * k <= m; ++k) {
    // C(m,2k) (2k)!/k! = m! / ((m-2k)! k!)
    Scalar log_c = std::lgamma(static_cast<Scalar>(m + 1)) - std::lgamma(static_cast<Scalar>(m - 2 * k + 1)) -
                   std::lgamma(static_cast<Scalar>(k + 1));
    const Scalar coef = std::exp(log_c) * std::pow(b, m - 2 * k) * std::pow(b * b - Scalar(1), k);
    s += coef * hermite(m - 2 * k, t);
  }
  return s;
}

/// mu_m = sqrt(alpha^2/(alpha^2+delta^2+1/2)) (1/2 / (alpha^2+delta^2+1/2))^m.
inline double mercer_eigenvalue(const MercerParams& p, int m) {
  if (m < 0) throw std::invalid_argument("mercer_eigenvalue: m must be nonnegative");
  const double a2 = p.alpha() * p.alpha();
  const double denom = a2 + p.delta_sq() + 0.5;
  return std::sqrt(a2 / denom) * std::pow(0.5 / denom, m);
}

/// sqrt(beta) e^{-delta^2 t^2} h_m(alpha beta t).
template <std::floating_point Scalar>
Scalar mercer_eigenfunction(const MercerParams& p, int m, Scalar t) {
  const auto h = hermite_normalized_scaled(m, static_cast<Scalar>(p.alpha() * p.beta()) * t);
  return h.value_times_exp(Scalar(0.5) * std::log(static_cast<Scalar>(p.beta())) -
                           static_cast<Scalar>(p.delta_sq()) * t * t);
}

/// w_alpha(t) = alpha/sqrt(pi) e^{-alpha^2 t^2}.
inline double mercer_weight(const MercerParams& p, double t) {
  const double a = p.alpha();
  return a / std::sqrt(std::numbers::pi) * std::exp(-a * a * t * t);
}

/// [psi_0(lambda t), ..., psi_{n-1}(lambda t)] from one recurrence pass.
template <std::floating_point Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> gaussian_feature_map(const GaussianScale& scale, int n, Scalar t) {
  if (n < 1) throw std::invalid_argument("gaussian_feature_map: n must be positive");
  const Scalar s = static_cast<Scalar>(scale.lambda) * t;
  const auto hs = hermite_normalized_sequence(n, Scalar(2) * s / std::sqrt(Scalar(3)));
  const Scalar base = Scalar(0.5) * std::log(Scalar(2) * std::numbers::sqrt2_v<Scalar> / Scalar(3)) - s * s / Scalar(3);
  const Scalar step = -Scalar(0.5) * std::log(Scalar(3));
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> f(n);
  for (int m = 0; m < n; ++m) f(m) = hs[static_cast<std::size_t>(m)].value_times_exp(base + step * m);
  return f;
}

/// sum_{m<n} psi_m(lambda t) psi_m(lambda u).
template <std::floating_point Scalar>
Scalar gaussian_truncated(const GaussianScale& scale, int n, Scalar t, Scalar u) {
  return gaussian_feature_map(scale, n, t).dot(gaussian_feature_map(scale, n, u));
}

/// Exact L2(w_alpha x w_alpha) error of the n-term expansion at
/// alpha = sqrt(2/3): 3^{-n} / sqrt 2.
inline double gaussian_truncation_error(int n) {
  if (n < 1) throw std::invalid_argument("gaussian_truncation_error: n must be positive");
  return std::pow(3.0, -n) / std::numbers::sqrt2;
}

/// Closed form of the Mehler sum
///   sum_m (rho/2)^m / m! H_m(x) H_m(y) e^{-(x^2+y^2)/2}
/// = (1-rho^2)^{-1/2} exp((4xy rho - (1+rho^2)(x^2+y^2)) / (2(1-rho^2))).
double mehler_closed_form(double rho, double x, double y);

/// Truncated Mehler series: terms are added until the largest possible
/// remaining increment drops below 1e-14, or 500 terms.
/// The metadata carries "terms".
VerificationReport mehler_check(double rho, double x, double y, double tolerance = 1e-10);

/// Gaussian kernel recovered from the Mehler closed form with rho = 1/3,
/// x = 2t/sqrt3, y = 2u/sqrt3.
double gaussian_kernel_via_mehler(double t, double u);

}  // namespace rkhs
