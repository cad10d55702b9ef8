#pragma once

// Cauchy kernel 1/(1 + (t-u)^2) and its Cauchy-Laguerre bases.
//
// Complex basis (m in Z):
//   psi_m(t)      = -(1/sqrt 2) (it)^m / (it - 1)^{m+1},  m >= 0
//   psi_{-m-1}(t) = -(1/sqrt 2) (it)^m / (it + 1)^{m+1}
// Real basis (m >= 0): alpha_m = sqrt 2 Re psi_m, beta_m = sqrt 2 Im psi_m.

#include <cmath>
#include <complex>
#include <concepts>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "rkhs/core.hpp"
#include "rkhs/laguerre_basis.hpp"

namespace rkhs {

enum class CauchyKind { complex, alpha, beta };

struct CauchyBasisId {
  CauchyKind kind = CauchyKind::complex;
  int m = 0;
};

/// Highest real-basis index evaluated through the explicit real formulas;
/// above it the alternating binomial sums lose digits and the complex
/// recurrence is used instead.
inline constexpr int kCauchyExplicitMaxIndex = 32;

template <std::floating_point Scalar>
Scalar cauchy_kernel(double lambda, Scalar t, Scalar u) {
  if (!(lambda > 0)) throw std::invalid_argument("cauchy_kernel: lambda must be positive");
  const Scalar d = static_cast<Scalar>(lambda) * (t - u);
  return Scalar(1) / (Scalar(1) + d * d);
}

/// Complex Cauchy-Laguerre function psi_m(t), m in Z. Evaluated as
/// (it/(it -+ 1))^k / (it -+ 1) so every factor has modulus <= 1.
template <std::floating_point Scalar>
std::complex<Scalar> cauchy_psi_complex(int m, Scalar t) {
  using C = std::complex<Scalar>;
  const C it(0, t);
  const C denom = m >= 0 ? it - Scalar(1) : it + Scalar(1);
  const int k = m >= 0 ? m : -m - 1;
  return -detail::ipow(it / denom, static_cast<unsigned>(k)) / denom / std::numbers::sqrt2_v<Scalar>;
}

namespace detail {

// t^p / (t^2+1)^N = sgn(t)^p a^p b^{2N-p}, a = |t|/sqrt(t^2+1), b = 1/sqrt(t^2+1).
template <std::floating_point Scalar>
Scalar bounded_power(Scalar t, int p, int N) {
  const Scalar r = std::hypot(t, Scalar(1));
  const Scalar a = std::abs(t) / r;
  const Scalar b = Scalar(1) / r;
  const Scalar sgn = (t < 0 && p % 2 != 0) ? Scalar(-1) : Scalar(1);
  return sgn * std::pow(a, p) * std::pow(b, 2 * N - p);
}

template <std::floating_point Scalar>
Scalar cauchy_alpha_explicit(int index, Scalar t) {
  Scalar s = 0;
  if (index % 2 == 0) {
    const int m = index / 2;
    for (int k = 0; k <= m; ++k) {
      s += binomial<Scalar>(2 * m + 1, 2 * k) * sign_power<Scalar>(k) * bounded_power(t, 2 * m + 2 * k, 2 * m + 1);
    }
    return sign_power<Scalar>(m) * s;
  }
  const int m = (index - 1) / 2;
  for (int k = 0; k <= m; ++k) {
    s += binomial<Scalar>(2 * m + 2, 2 * k + 1) * sign_power<Scalar>(k) *
         bounded_power(t, 2 * m + 2 * k + 2, 2 * m + 2);
  }
  return sign_power<Scalar>(m) * s;
}

template <std::floating_point Scalar>
Scalar cauchy_beta_explicit(int index, Scalar t) {
  Scalar s = 0;
  if (index % 2 == 0) {
    const int m = index / 2;
    for (int k = 0; k <= m; ++k) {
      s += binomial<Scalar>(2 * m + 1, 2 * k + 1) * sign_power<Scalar>(k) *
           bounded_power(t, 2 * m + 2 * k + 1, 2 * m + 1);
    }
    return sign_power<Scalar>(m) * s;
  }
  const int m = (index - 1) / 2;
  for (int k = 0; k <= m + 1; ++k) {
    s += binomial<Scalar>(2 * m + 2, 2 * k) * sign_power<Scalar>(k) * bounded_power(t, 2 * m + 1 + 2 * k, 2 * m + 2);
  }
  return sign_power<Scalar>(m + 1) * s;
}

}  // namespace detail

/// Real Cauchy-Laguerre function alpha_m or beta_m at t.
template <std::floating_point Scalar>
Scalar cauchy_real_basis(CauchyKind kind, int m, Scalar t) {
  if (m < 0) throw std::invalid_argument("cauchy_real_basis: m must be nonnegative, got " + std::to_string(m));
  if (kind == CauchyKind::complex) throw std::invalid_argument("cauchy_real_basis: kind must be alpha or beta");
  if (m > kCauchyExplicitMaxIndex) {
    const auto z = cauchy_psi_complex(m, t);
    return std::numbers::sqrt2_v<Scalar> * (kind == CauchyKind::alpha ? z.real() : z.imag());
  }
  return kind == CauchyKind::alpha ? detail::cauchy_alpha_explicit(m, t) : detail::cauchy_beta_explicit(m, t);
}

/// Value of any Cauchy basis member; real kinds come back with zero
/// imaginary part.
template <std::floating_point Scalar>
std::complex<Scalar> cauchy_basis(CauchyBasisId id, Scalar t) {
  if (id.kind == CauchyKind::complex) return cauchy_psi_complex(id.m, t);
  return {cauchy_real_basis(id.kind, id.m, t), Scalar(0)};
}

/// Feature vector [alpha_0..alpha_{n-1}, beta_0..beta_{n-1}] at lambda * t,
/// produced by the recurrence psi_m = psi_{m-1} * it/(it-1).
template <std::floating_point Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> cauchy_feature_map(double lambda, int n, Scalar t) {
  if (n < 1) throw std::invalid_argument("cauchy_feature_map: n must be positive");
  if (!(lambda > 0)) throw std::invalid_argument("cauchy_feature_map: lambda must be positive");
  using C = std::complex<Scalar>;
  const Scalar s = static_cast<Scalar>(lambda) * t;
  const C it(0, s);
  const C step = it / (it - Scalar(1));
  C psi = -Scalar(1) / (it - Scalar(1)) / std::numbers::sqrt2_v<Scalar>;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> f(2 * n);
  for (int m = 0; m < n; ++m) {
    f(m) = std::numbers::sqrt2_v<Scalar> * psi.real();
    f(n + m) = std::numbers::sqrt2_v<Scalar> * psi.imag();
    psi *= step;
  }
  return f;
}

/// sum_{m<n} [alpha_m(lt) alpha_m(lu) + beta_m(lt) beta_m(lu)].
template <std::floating_point Scalar>
Scalar cauchy_truncated(double lambda, int n, Scalar t, Scalar u) {
  return cauchy_feature_map(lambda, n, t).dot(cauchy_feature_map(lambda, n, u));
}

/// Ratio q and first term a of the geometric series
/// sum_{m>=0} psi_m^*(t) psi_m(u) = sum a q^m.
template <std::floating_point Scalar>
std::pair<std::complex<Scalar>, std::complex<Scalar>> cauchy_geometric_terms(Scalar t, Scalar u) {
  using C = std::complex<Scalar>;
  const C den = C(-Scalar(1), -t) * C(-Scalar(1), u);  // (-it - 1)(iu - 1)
  return {C(t * u) / den, Scalar(0.5) / den};
}

/// Finite partial sum sum_{m=0}^{n-1} psi_m^*(t) psi_m(u) in closed form
/// a (1 - q^n) / (1 - q).
template <std::floating_point Scalar>
std::complex<Scalar> cauchy_partial_sum_closed_form(int n, Scalar t, Scalar u) {
  if (n < 1) throw std::invalid_argument("cauchy_partial_sum_closed_form: n must be positive");
  const auto [q, a] = cauchy_geometric_terms(t, u);
  if (!(std::abs(q) < Scalar(1))) throw NumericError("cauchy_partial_sum_closed_form: |q| >= 1");
  return a * (Scalar(1) - detail::ipow(q, static_cast<unsigned>(n))) / (Scalar(1) - q);
}

/// n -> infinity limit a / (1 - q) = (1/2) / (1 + i (t - u)).
template <std::floating_point Scalar>
std::complex<Scalar> cauchy_geometric_limit(Scalar t, Scalar u) {
  const auto [q, a] = cauchy_geometric_terms(t, u);
  return a / (Scalar(1) - q);
}

}  // namespace rkhs
