#pragma once

// Laguerre functions phi_m, m in Z: an orthonormal basis of L2(R) whose
// Fourier transforms are the rational functions
//   sqrt(2) (i w - 1)^m / (i w + 1)^(m+1).
// Non-negative indices live on [0, inf), negative ones on (-inf, 0).

#include <complex>
#include <concepts>
#include <span>
#include <string_view>

#include "rkhs/core.hpp"
#include "rkhs/orthopoly.hpp"
#include "rkhs/report.hpp"

namespace rkhs {

/// phi_m(t). At t = 0 the non-negative indices take their limit sqrt(2) and
/// the negative indices are zero.
template <std::floating_point Scalar>
Scalar laguerre_fn(int m, Scalar t) {
  if (m < 0) return t < 0 ? -laguerre_fn(-m - 1, -t) : Scalar(0);
  if (t < 0) return Scalar(0);
  const auto l = assoc_laguerre_scaled(m, 0, Scalar(2) * t);
  return std::numbers::sqrt2_v<Scalar> * l.value_times_exp(-t);
}

namespace detail {

template <std::floating_point Scalar>
std::complex<Scalar> ipow(std::complex<Scalar> z, unsigned k) {
  std::complex<Scalar> acc(1);
  while (k != 0) {
    if (k & 1U) acc *= z;
    z *= z;
    k >>= 1U;
  }
  return acc;
}

// ((i w - 1)/(i w + 1))^k for any integer k; the base has unit modulus so
// negative powers are powers of the conjugate.
template <std::floating_point Scalar>
std::complex<Scalar> cayley_power(Scalar omega, int k) {
  const std::complex<Scalar> iw(0, omega);
  const std::complex<Scalar> ratio = (iw - Scalar(1)) / (iw + Scalar(1));
  if (k >= 0) return ipow(ratio, static_cast<unsigned>(k));
  return ipow(std::conj(ratio), static_cast<unsigned>(-static_cast<long>(k)));
}

}  // namespace detail

/// Fourier transform of phi_m.
template <std::floating_point Scalar>
std::complex<Scalar> laguerre_fn_ft(int m, Scalar omega) {
  const std::complex<Scalar> iw(0, omega);
  return std::numbers::sqrt2_v<Scalar> * detail::cayley_power(omega, m) / (iw + Scalar(1));
}

enum class LaguerreIdentity { conjugate_symmetry, shift, multiplication, binomial };

/// Accepts "conjugate_symmetry", "shift", "multiplication", "binomial".
LaguerreIdentity parse_laguerre_identity(std::string_view name);

std::string_view to_string(LaguerreIdentity which);

/// Evaluates both sides of a Fourier-domain identity on the grid and reports
/// the largest absolute deviation.
///
/// params: conjugate_symmetry (m), shift (m, k), multiplication (m, k),
/// binomial (nu) with nu >= 0.
VerificationReport check_identity(LaguerreIdentity which, std::span<const int> params,
                                  std::span<const double> omega_grid, double tolerance = 1e-12);

}  // namespace rkhs
