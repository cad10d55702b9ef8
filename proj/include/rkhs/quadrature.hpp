#pragma once

// Gaussian quadrature rules built by Golub-Welsch. Eigen supplies the
// eigenvalues of the Jacobi matrix; each node is then polished by Newton
// steps on the orthonormal recurrence and its weight comes from the
// Christoffel function 1 / sum_k p_k(x)^2, which stays accurate for the
// tiny weights far out in the tail.
//
// Rules integrate f against their base weight: integrate(rule, f) is
// sum w_i f(x_i) ~ int f(x) w(x) dx, so f must already be divided by w.

#include <algorithm>
#include <cmath>
#include <limits>
#include <concepts>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rkhs/core.hpp"

namespace rkhs {

enum class Domain { real_line, positive_half_line, negative_half_line };

struct BaseWeight {
  enum class Kind { gauss_hermite, gauss_laguerre, uniform_truncated };
  Kind kind = Kind::gauss_hermite;
  double eta = 0;  // gauss_laguerre: t^eta e^{-t}
  double lo = 0;   // uniform_truncated: weight 1 on [lo, hi]
  double hi = 0;
};

inline constexpr int kMaxQuadratureNodes = 256;

template <std::floating_point Scalar>
struct QuadratureRule {
  std::vector<Scalar> nodes;    // strictly increasing
  std::vector<Scalar> weights;  // positive
  Domain domain = Domain::real_line;
  BaseWeight base_weight;

  std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

inline void require_node_count(int n, const char* who) {
  if (n < 1 || n > kMaxQuadratureNodes) {
    throw std::invalid_argument(std::string(who) + ": node count " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxQuadratureNodes) + "]");
  }
}

// Orthonormal p_0..p_n at x for the Jacobi matrix (a, b), b[k] coupling k and
// k+1. Returns log(sum_{k<n} p_k^2) together with p_n and p_n' sharing one
// scale factor, so Newton ratios and Christoffel sums never overflow.
template <std::floating_point Scalar>
struct RecurrenceEval {
  Scalar log_sum_sq;
  Scalar pn;
  Scalar dpn;
};

template <std::floating_point Scalar>
RecurrenceEval<Scalar> orthonormal_eval(const std::vector<Scalar>& a, const std::vector<Scalar>& b, Scalar mu0,
                                        Scalar x) {
  const int n = static_cast<int>(a.size());
  Scalar p_prev = 0, p = Scalar(1) / std::sqrt(mu0);
  Scalar d_prev = 0, d = 0;
  Scalar sum_sq = 0;
  Scalar log_scale = 0;  // all p, d and sum_sq are divided by exp(log_scale)
  for (int k = 0; k < n; ++k) {
    sum_sq += p * p;
    const Scalar b_prev = k > 0 ? b[static_cast<std::size_t>(k - 1)] : Scalar(0);
    const Scalar b_next = b[static_cast<std::size_t>(k)];
    const Scalar ak = a[static_cast<std::size_t>(k)];
    const Scalar p_next = ((x - ak) * p - b_prev * p_prev) / b_next;
    const Scalar d_next = ((x - ak) * d + p - b_prev * d_prev) / b_next;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
    if (needs_rescale(p) || needs_rescale(d)) {
      constexpr int shift = kRescaleExponent<Scalar>;
      p = std::ldexp(p, -shift);
      p_prev = std::ldexp(p_prev, -shift);
      d = std::ldexp(d, -shift);
      d_prev = std::ldexp(d_prev, -shift);
      sum_sq = std::ldexp(sum_sq, -2 * shift);
      log_scale += static_cast<Scalar>(shift) * std::numbers::ln2_v<Scalar>;
    }
  }
  return {std::log(sum_sq) + Scalar(2) * log_scale, p, d};
}

// Jacobi matrix of size n: diagonal a[0..n-1], off-diagonal b[0..n-1] (b[n-1]
// is only used to form p_n).
template <std::floating_point Scalar>
QuadratureRule<Scalar> golub_welsch(std::vector<Scalar> a, std::vector<Scalar> b, Scalar mu0) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = static_cast<int>(a.size());
  Vec diag(n);
  Vec sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = a[static_cast<std::size_t>(k)];
  for (int k = 0; k + 1 < n; ++k) sub(k) = b[static_cast<std::size_t>(k)];

  Eigen::SelfAdjointEigenSolver<Mat> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("golub_welsch: tridiagonal eigen-solve did not converge");
  std::vector<Scalar> x(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(x.begin(), x.end());

  QuadratureRule<Scalar> rule;
  rule.nodes.reserve(static_cast<std::size_t>(n));
  rule.weights.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Scalar xi = x[static_cast<std::size_t>(i)];
    // A Newton step is taken only while it stays well inside the gap to the
    // neighbouring eigenvalues.
    Scalar gap = std::numeric_limits<Scalar>::infinity();
    if (i > 0) gap = std::min(gap, xi - x[static_cast<std::size_t>(i - 1)]);
    if (i + 1 < n) gap = std::min(gap, x[static_cast<std::size_t>(i + 1)] - xi);
    for (int it = 0; it < 3; ++it) {
      const auto e = orthonormal_eval(a, b, mu0, xi);
      if (e.dpn == 0) break;
      const Scalar dx = e.pn / e.dpn;
      if (!std::isfinite(dx) || std::abs(dx) > gap / 8) break;
      xi -= dx;
      if (std::abs(dx) <= std::numeric_limits<Scalar>::epsilon() * std::max(Scalar(1), std::abs(xi))) break;
    }
    const Scalar w = std::exp(-orthonormal_eval(a, b, mu0, xi).log_sum_sq);
    // Weights below the floating range carry nothing; the node is dropped.
    if (w > 0) {
      rule.nodes.push_back(xi);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

}  // namespace detail

/// n-point rule for t^eta e^{-t} on (0, inf). Exact for polynomials of degree
/// <= 2n - 1. For large n and small eta the outermost weights fall below the
/// smallest representable value and those nodes are omitted.
template <std::floating_point Scalar = double>
QuadratureRule<Scalar> gauss_laguerre_rule(int n, double eta = 0) {
  detail::require_node_count(n, "gauss_laguerre_rule");
  if (!(eta >= 0) || !std::isfinite(eta)) throw std::invalid_argument("gauss_laguerre_rule: eta must be >= 0");
  const Scalar e = static_cast<Scalar>(eta);
  std::vector<Scalar> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    a[static_cast<std::size_t>(k)] = Scalar(2) * kk + e + Scalar(1);
    b[static_cast<std::size_t>(k)] = std::sqrt((kk + Scalar(1)) * (kk + Scalar(1) + e));
  }
  auto rule = detail::golub_welsch(std::move(a), std::move(b), std::tgamma(e + Scalar(1)));
  rule.domain = Domain::positive_half_line;
  rule.base_weight = {BaseWeight::Kind::gauss_laguerre, eta, 0, 0};
  return rule;
}

/// n-point rule for e^{-t^2} on R.
template <std::floating_point Scalar = double>
QuadratureRule<Scalar> gauss_hermite_rule(int n) {
  detail::require_node_count(n, "gauss_hermite_rule");
  std::vector<Scalar> a(static_cast<std::size_t>(n), Scalar(0)), b(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) b[static_cast<std::size_t>(k)] = std::sqrt(static_cast<Scalar>(k + 1) / Scalar(2));
  auto rule = detail::golub_welsch(std::move(a), std::move(b), std::sqrt(std::numbers::pi_v<Scalar>));
  rule.domain = Domain::real_line;
  rule.base_weight = {BaseWeight::Kind::gauss_hermite, 0, 0, 0};
  return rule;
}

/// n-point Gauss-Legendre rule for weight 1 on [lo, hi].
template <std::floating_point Scalar = double>
QuadratureRule<Scalar> gauss_legendre_rule(int n, double lo, double hi) {
  detail::require_node_count(n, "gauss_legendre_rule");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("gauss_legendre_rule: need finite lo < hi");
  }
  std::vector<Scalar> a(static_cast<std::size_t>(n), Scalar(0)), b(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Scalar kk = static_cast<Scalar>(k + 1);
    b[static_cast<std::size_t>(k)] = kk / std::sqrt(Scalar(4) * kk * kk - Scalar(1));
  }
  auto rule = detail::golub_welsch(std::move(a), std::move(b), Scalar(2));
  const Scalar half = (static_cast<Scalar>(hi) - static_cast<Scalar>(lo)) / Scalar(2);
  const Scalar mid = (static_cast<Scalar>(hi) + static_cast<Scalar>(lo)) / Scalar(2);
  for (auto& x : rule.nodes) x = mid + half * x;
  for (auto& w : rule.weights) w *= half;
  rule.domain = lo >= 0 ? Domain::positive_half_line : (hi <= 0 ? Domain::negative_half_line : Domain::real_line);
  rule.base_weight = {BaseWeight::Kind::uniform_truncated, 0, lo, hi};
  return rule;
}

/// Uniform weight on [-R, R] with n Gauss-Legendre nodes.
template <std::floating_point Scalar = double>
QuadratureRule<Scalar> uniform_truncated_rule(double R, int n) {
  if (!(R > 0)) throw std::invalid_argument("uniform_truncated_rule: R must be positive");
  return gauss_legendre_rule<Scalar>(n, -R, R);
}

/// The rule mirrored through the origin: integrates f(x) w(-x).
template <std::floating_point Scalar>
QuadratureRule<Scalar> reflect(const QuadratureRule<Scalar>& rule) {
  QuadratureRule<Scalar> out = rule;
  std::reverse(out.nodes.begin(), out.nodes.end());
  std::reverse(out.weights.begin(), out.weights.end());
  for (auto& x : out.nodes) x = -x;
  switch (rule.domain) {
    case Domain::positive_half_line: out.domain = Domain::negative_half_line; break;
    case Domain::negative_half_line: out.domain = Domain::positive_half_line; break;
    case Domain::real_line: break;
  }
  if (rule.base_weight.kind == BaseWeight::Kind::uniform_truncated) {
    out.base_weight.lo = -rule.base_weight.hi;
    out.base_weight.hi = -rule.base_weight.lo;
  }
  return out;
}

/// sum_i w_i f(x_i). A non-finite f value raises NumericError naming the node.
template <std::floating_point Scalar, class F>
Scalar integrate(const QuadratureRule<Scalar>& rule, F&& f) {
  Scalar s = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Scalar v = static_cast<Scalar>(f(rule.nodes[i]));
    if (!std::isfinite(v)) {
      throw NumericError("integrate: non-finite integrand at node " + std::to_string(i) + " (x = " +
                         std::to_string(static_cast<double>(rule.nodes[i])) + ")");
    }
    s += rule.weights[i] * v;
  }
  return s;
}

/// Tensor-product rule: sum_i sum_j w_i v_j f(x_i, y_j).
template <std::floating_point Scalar, class F>
Scalar integrate2(const QuadratureRule<Scalar>& rx, const QuadratureRule<Scalar>& ry, F&& f) {
  return integrate(rx, [&](Scalar x) { return integrate(ry, [&](Scalar y) { return f(x, y); }); });
}

}  // namespace rkhs
