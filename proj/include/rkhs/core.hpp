#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rkhs {

/// Raised when a numerical procedure cannot deliver a trustworthy value
/// (non-finite integrand, non-convergent refinement, |q| >= 1, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by linear solves whose system matrix is singular to working precision.
class ConditioningError : public NumericError {
 public:
  ConditioningError(const std::string& what, double condition_estimate)
      : NumericError(what), condition_estimate_(condition_estimate) {}

  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// Largest polynomial degree accepted by the evaluators.
inline constexpr int kMaxDegree = 512;

/// A value stored as mantissa * exp(log_scale). Recurrences that would
/// overflow keep the mantissa bounded and push magnitude into log_scale.
template <std::floating_point Scalar>
struct Scaled {
  Scalar mantissa{1};
  Scalar log_scale{0};

  Scalar value() const { return mantissa == Scalar(0) ? Scalar(0) : mantissa * std::exp(log_scale); }

  /// mantissa * exp(log_scale + extra_log), combined before exponentiation.
  Scalar value_times_exp(Scalar extra_log) const {
    return mantissa == Scalar(0) ? Scalar(0) : mantissa * std::exp(log_scale + extra_log);
  }
};

namespace detail {

inline void require_degree(int m, const char* who) {
  if (m < 0 || m > kMaxDegree) {
    throw std::invalid_argument(std::string(who) + ": degree " + std::to_string(m) +
                                " outside [0, " + std::to_string(kMaxDegree) + "]");
  }
}

// Rescaling threshold for recurrences; 2^256 keeps squares and products representable.
template <std::floating_point Scalar>
inline constexpr int kRescaleExponent = 256;

template <std::floating_point Scalar>
inline bool needs_rescale(Scalar v) {
  return std::abs(v) > std::ldexp(Scalar(1), kRescaleExponent<Scalar>);
}

}  // namespace detail

/// log(m! / (m + k)!) as a sum of logs; exact to rounding for moderate k.
template <std::floating_point Scalar = double>
Scalar log_falling_ratio(int m, int k) {
  Scalar s = 0;
  for (int j = 1; j <= k; ++j) s -= std::log(static_cast<Scalar>(m + j));
  return s;
}

/// log of the central binomial coefficient C(2 nu, nu).
template <std::floating_point Scalar = double>
Scalar log_central_binomial(int nu) {
  Scalar s = 0;
  for (int j = 1; j <= nu; ++j) s += std::log(static_cast<Scalar>(nu + j) / static_cast<Scalar>(j));
  return s;
}

/// Binomial coefficient as a floating value (exact while it fits the mantissa).
template <std::floating_point Scalar = double>
Scalar binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Intermediate values are C(n - k + j, j), integers.
  Scalar c = 1;
  for (int j = 1; j <= k; ++j) c = c * static_cast<Scalar>(n - k + j) / static_cast<Scalar>(j);
  return c;
}

template <std::floating_point Scalar = double>
constexpr Scalar sign_power(int k) {
  return (k % 2 == 0) ? Scalar(1) : Scalar(-1);
}

}  // namespace rkhs
