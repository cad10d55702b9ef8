#pragma once

// Half-integer Matern kernels r_{nu+1/2} and their Matern-Laguerre basis.
//
// The basis splits into three classes:
//   plus  psi+_m, m >= 0        supported on [0, inf)
//   minus psi-_m, m >= 0        supported on (-inf, 0), psi-_m(t) = (-1)^nu psi+_m(-t)
//   null  psi0_m, m = 0..nu     supported on all of R
// and r(t, u) = sum psi0 psi0 + sum psi- psi- + sum psi+ psi+.
// Scaling by lambda evaluates every basis function at lambda * t.

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rkhs/core.hpp"
#include "rkhs/laguerre_basis.hpp"
#include "rkhs/orthopoly.hpp"

namespace rkhs {

/// Smoothness alpha = nu + 1/2 and length scale lambda.
class MaternOrder {
 public:
  explicit MaternOrder(int nu, double lambda = 1.0) : nu_(nu), lambda_(lambda) {
    if (nu < 0) throw std::invalid_argument("MaternOrder: nu must be nonnegative, got " + std::to_string(nu));
    if (!(lambda > 0) || !std::isfinite(lambda)) {
      throw std::invalid_argument("MaternOrder: lambda must be positive and finite");
    }
  }

  int nu() const noexcept { return nu_; }
  double lambda() const noexcept { return lambda_; }
  double smoothness() const noexcept { return nu_ + 0.5; }

 private:
  int nu_;
  double lambda_;
};

enum class MaternClass { plus, minus, null };

struct MaternBasisId {
  MaternClass cls = MaternClass::plus;
  int m = 0;
};

/// A truncation keeping every null-space function and n functions of each
/// of the plus and minus classes: nu + 1 + 2n terms in total.
class MaternTruncation {
 public:
  MaternTruncation(MaternOrder order, int n) : order_(order), n_(n) {
    if (n < 1) throw std::invalid_argument("MaternTruncation: n must be positive, got " + std::to_string(n));
    if (n - 1 > kMaxDegree) throw std::invalid_argument("MaternTruncation: n exceeds the degree cap");
  }

  const MaternOrder& order() const noexcept { return order_; }
  int n() const noexcept { return n_; }
  int term_count() const noexcept { return order_.nu() + 1 + 2 * n_; }

 private:
  MaternOrder order_;
  int n_;
};

namespace detail {

// log(nu! / sqrt((2nu)!)) = -log C(2nu, nu) / 2
inline double matern_log_prefactor(int nu) { return -0.5 * log_central_binomial<double>(nu); }

inline void validate_id(const MaternOrder& order, MaternBasisId id) {
  if (id.m < 0) throw std::invalid_argument("matern basis index must be nonnegative");
  if (id.cls == MaternClass::null && id.m > order.nu()) {
    throw std::invalid_argument("null-space index " + std::to_string(id.m) + " exceeds nu = " +
                                std::to_string(order.nu()));
  }
  if (id.cls != MaternClass::null) require_degree(id.m, "matern_psi");
}

// psi+_m at an already scaled argument s >= 0.
template <std::floating_point Scalar>
Scalar matern_plus_unscaled(int nu, int m, Scalar s) {
  if (!(s > 0)) return Scalar(0);
  const auto l = assoc_laguerre_scaled(m, nu + 1, Scalar(2) * s);
  const Scalar log_mag = static_cast<Scalar>(matern_log_prefactor(nu)) + log_falling_ratio<Scalar>(m, nu + 1) +
                         static_cast<Scalar>(nu + 1) * std::log(Scalar(2) * s) - s;
  return l.value_times_exp(log_mag);
}

template <std::floating_point Scalar>
Scalar matern_null_unscaled(int nu, int m, Scalar s) {
  // (1/sqrt 2) nu!/sqrt((2nu)!) sum_k C(nu+1, k) (-1)^k phi_{m+k-nu-1}
  Scalar acc = 0;
  for (int k = 0; k <= nu + 1; ++k) {
    acc += binomial<Scalar>(nu + 1, k) * sign_power<Scalar>(k) * laguerre_fn(m + k - nu - 1, s);
  }
  return acc * std::exp(static_cast<Scalar>(matern_log_prefactor(nu))) / std::numbers::sqrt2_v<Scalar>;
}

}  // namespace detail

/// Closed-form half-integer Matern kernel at d = lambda |t - u|:
///   e^{-d} nu!/(2nu)! sum_k (nu+k)!/(k!(nu-k)!) (2d)^{nu-k}.
template <std::floating_point Scalar>
Scalar matern_kernel(const MaternOrder& order, Scalar t, Scalar u) {
  const int nu = order.nu();
  const Scalar d = static_cast<Scalar>(order.lambda()) * std::abs(t - u);
  const Scalar x = Scalar(2) * d;
  // Term j carries (2d)^j; the j = 0 coefficient is 1 and successive ratios
  // are x (nu - j + 1) / ((2nu - j + 1) j).
  Scalar term = 1;
  Scalar sum = 1;
  for (int j = 1; j <= nu; ++j) {
    term *= x * static_cast<Scalar>(nu - j + 1) / (static_cast<Scalar>(2 * nu - j + 1) * static_cast<Scalar>(j));
    sum += term;
  }
  return sum * std::exp(-d);
}

/// Evaluates one Matern-Laguerre basis function at lambda * t.
template <std::floating_point Scalar>
Scalar matern_psi(const MaternOrder& order, MaternBasisId id, Scalar t) {
  detail::validate_id(order, id);
  const int nu = order.nu();
  const Scalar s = static_cast<Scalar>(order.lambda()) * t;
  switch (id.cls) {
    case MaternClass::plus:
      return s >= 0 ? detail::matern_plus_unscaled(nu, id.m, s) : Scalar(0);
    case MaternClass::minus:
      return s < 0 ? sign_power<Scalar>(nu) * detail::matern_plus_unscaled(nu, id.m, -s) : Scalar(0);
    case MaternClass::null:
      return detail::matern_null_unscaled(nu, id.m, s);
  }
  return Scalar(0);
}

/// Feature vector [psi0_0..psi0_nu, psi-_0..psi-_{n-1}, psi+_0..psi+_{n-1}]
/// at t. Inner products of two feature vectors give matern_truncated.
template <std::floating_point Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> matern_feature_map(const MaternTruncation& tr, Scalar t) {
  const int nu = tr.order().nu();
  const int n = tr.n();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> f = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(tr.term_count());
  const Scalar s = static_cast<Scalar>(tr.order().lambda()) * t;

  for (int m = 0; m <= nu; ++m) f(m) = detail::matern_null_unscaled(nu, m, s);

  if (s == 0) return f;
  // One recurrence pass yields every degree; the plus and minus blocks are
  // mirror images so only one of them is nonzero.
  const Scalar a = std::abs(s);
  const auto lag = assoc_laguerre_sequence(n, nu + 1, Scalar(2) * a);
  const Scalar base = static_cast<Scalar>(detail::matern_log_prefactor(nu)) +
                      static_cast<Scalar>(nu + 1) * std::log(Scalar(2) * a) - a;
  const int offset = s > 0 ? nu + 1 + n : nu + 1;
  const Scalar sign = s > 0 ? Scalar(1) : sign_power<Scalar>(nu);
  Scalar log_ratio = log_falling_ratio<Scalar>(0, nu + 1);
  for (int m = 0; m < n; ++m) {
    if (m > 0) log_ratio += std::log(static_cast<Scalar>(m)) - std::log(static_cast<Scalar>(m + nu + 1));
    f(offset + m) = sign * lag[static_cast<std::size_t>(m)].value_times_exp(base + log_ratio);
  }
  return f;
}

/// Null-space part plus n terms of each of the plus and minus classes.
template <std::floating_point Scalar>
Scalar matern_truncated(const MaternTruncation& tr, Scalar t, Scalar u) {
  return matern_feature_map(tr, t).dot(matern_feature_map(tr, u));
}

/// Squared L2(R, w_nu) norm of psi+_m (and psi-_m), w_nu(t) = 2 / |2t|^{nu+1}:
///   (nu!)^2/(2nu)! * m!/(m+nu+1)!.
inline double matern_psi_norm_sq(const MaternOrder& order, int m) {
  if (m < 0) throw std::invalid_argument("matern_psi_norm_sq: m must be nonnegative");
  const int nu = order.nu();
  return std::exp(2.0 * detail::matern_log_prefactor(nu) + log_falling_ratio<double>(m, nu + 1));
}

/// c_nu / n^{nu+1/2} with c_nu = (nu!)^2/(2nu)! sqrt(2(2nu+2)/(2nu+1)).
inline double matern_truncation_error_bound(const MaternOrder& order, int n) {
  if (n < 1) throw std::invalid_argument("matern_truncation_error_bound: n must be positive");
  const double nu = order.nu();
  const double c = std::exp(2.0 * detail::matern_log_prefactor(order.nu())) * std::sqrt(2.0 * (2.0 * nu + 2.0) / (2.0 * nu + 1.0));
  return c / std::pow(static_cast<double>(n), nu + 0.5);
}

/// Weighted Hilbert-Schmidt norm of r - r_n:
///   sqrt(2 ((nu!)^2/(2nu)!)^2 sum_{m>=n} (m!/(m+nu+1)!)^2).
/// Independent of lambda, since the weight is defined in the scaled variable.
double matern_exact_hs_error(const MaternOrder& order, int n);

/// Uniform bound 2^nu nu!/sqrt((2nu)!) on every Matern-Laguerre function.
inline double matern_psi_bound(const MaternOrder& order) {
  const int nu = order.nu();
  return std::exp(nu * std::numbers::ln2 + detail::matern_log_prefactor(nu));
}

/// w_nu(t) = 2 / |2t|^{nu+1}, in the scaled variable.
inline double matern_weight(const MaternOrder& order, double t) {
  return 2.0 / std::pow(std::abs(2.0 * t), order.nu() + 1);
}

}  // namespace rkhs
