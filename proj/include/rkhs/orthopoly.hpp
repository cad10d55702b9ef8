#pragma once

// Three-term recurrences for the Laguerre, associated Laguerre and
// physicist's Hermite polynomials. The explicit coefficient sums are never
// used here: their alternating factorial terms cancel badly past degree ~20.

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>
#include <vector>

#include "rkhs/core.hpp"

namespace rkhs {

/// Degree and associated index of a Laguerre-type polynomial.
struct PolyIndex {
  int m = 0;
  int eta = 0;

  PolyIndex(int degree, int index = 0) : m(degree), eta(index) {
    detail::require_degree(m, "PolyIndex");
    if (eta < 0) throw std::invalid_argument("PolyIndex: eta must be nonnegative");
  }
};

namespace detail {

inline void require_eta(int eta) {
  if (eta < 0) throw std::invalid_argument("assoc_laguerre: eta must be nonnegative, got " + std::to_string(eta));
}

}  // namespace detail

/// L_0^(eta), ..., L_{count-1}^(eta) at t, each with its own scale so that
/// large degrees and arguments cannot overflow.
template <std::floating_point Scalar>
std::vector<Scaled<Scalar>> assoc_laguerre_sequence(int count, int eta, Scalar t) {
  if (count < 0) throw std::invalid_argument("assoc_laguerre_sequence: negative count");
  if (count > 0) detail::require_degree(count - 1, "assoc_laguerre_sequence");
  detail::require_eta(eta);

  std::vector<Scaled<Scalar>> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 0) return out;

  const Scalar e = static_cast<Scalar>(eta);
  Scalar prev = 0;
  Scalar cur = 1;
  Scalar log_scale = 0;
  out.push_back({cur, log_scale});
  for (int k = 0; k + 1 < count; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    // (k+1) L_{k+1} = (2k+1+eta-t) L_k - (k+eta) L_{k-1}
    const Scalar next = ((Scalar(2) * kk + Scalar(1) + e - t) * cur - (kk + e) * prev) / (kk + Scalar(1));
    prev = cur;
    cur = next;
    if (detail::needs_rescale(cur)) {
      constexpr int shift = detail::kRescaleExponent<Scalar>;
      cur = std::ldexp(cur, -shift);
      prev = std::ldexp(prev, -shift);
      log_scale += static_cast<Scalar>(shift) * std::numbers::ln2_v<Scalar>;
    }
    out.push_back({cur, log_scale});
  }
  return out;
}

/// L_m^(eta)(t) as a scaled value.
template <std::floating_point Scalar>
Scaled<Scalar> assoc_laguerre_scaled(int m, int eta, Scalar t) {
  detail::require_degree(m, "assoc_laguerre");
  detail::require_eta(eta);
  const Scalar e = static_cast<Scalar>(eta);
  Scalar prev = 0;
  Scalar cur = 1;
  Scalar log_scale = 0;
  for (int k = 0; k < m; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    const Scalar next = ((Scalar(2) * kk + Scalar(1) + e - t) * cur - (kk + e) * prev) / (kk + Scalar(1));
    prev = cur;
    cur = next;
    if (detail::needs_rescale(cur)) {
      constexpr int shift = detail::kRescaleExponent<Scalar>;
      cur = std::ldexp(cur, -shift);
      prev = std::ldexp(prev, -shift);
      log_scale += static_cast<Scalar>(shift) * std::numbers::ln2_v<Scalar>;
    }
  }
  return {cur, log_scale};
}

/// Associated Laguerre polynomial L_m^(eta)(t).
template <std::floating_point Scalar>
Scalar assoc_laguerre(int m, int eta, Scalar t) {
  return assoc_laguerre_scaled(m, eta, t).value();
}

/// Laguerre polynomial L_m(t) = L_m^(0)(t).
template <std::floating_point Scalar>
Scalar laguerre(int m, Scalar t) {
  return assoc_laguerre(m, 0, t);
}

/// Physicist's Hermite polynomial H_m(t).
template <std::floating_point Scalar>
Scalar hermite(int m, Scalar t) {
  detail::require_degree(m, "hermite");
  if (m == 0) return Scalar(1);
  Scalar prev = 1;
  Scalar cur = Scalar(2) * t;
  for (int k = 1; k < m; ++k) {
    // H_{k+1} = 2t H_k - 2k H_{k-1}
    const Scalar next = Scalar(2) * t * cur - Scalar(2) * static_cast<Scalar>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// H_0(x)/sqrt(2^0 0!), ..., H_{count-1}(x)/sqrt(2^{count-1} (count-1)!)
/// as scaled values. The normalised recurrence avoids the factorial growth.
template <std::floating_point Scalar>
std::vector<Scaled<Scalar>> hermite_normalized_sequence(int count, Scalar x) {
  if (count < 0) throw std::invalid_argument("hermite_normalized_sequence: negative count");
  if (count > 0) detail::require_degree(count - 1, "hermite_normalized_sequence");
  std::vector<Scaled<Scalar>> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 0) return out;

  Scalar prev = 0;
  Scalar cur = 1;
  Scalar log_scale = 0;
  out.push_back({cur, log_scale});
  for (int k = 0; k + 1 < count; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    const Scalar next = std::sqrt(Scalar(2) / (kk + 1)) * x * cur - std::sqrt(kk / (kk + 1)) * prev;
    prev = cur;
    cur = next;
    if (detail::needs_rescale(cur)) {
      constexpr int shift = detail::kRescaleExponent<Scalar>;
      cur = std::ldexp(cur, -shift);
      prev = std::ldexp(prev, -shift);
      log_scale += static_cast<Scalar>(shift) * std::numbers::ln2_v<Scalar>;
    }
    out.push_back({cur, log_scale});
  }
  return out;
}

/// H_m(x)/sqrt(2^m m!) as a scaled value.
template <std::floating_point Scalar>
Scaled<Scalar> hermite_normalized_scaled(int m, Scalar x) {
  detail::require_degree(m, "hermite_normalized");
  return hermite_normalized_sequence(m + 1, x).back();
}

}  // namespace rkhs
