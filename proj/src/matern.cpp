#include "rkhs/matern.hpp"

#include <cmath>
#include <stdexcept>

namespace rkhs {

namespace {

// sum_{m >= M} (m!/(m+nu+1)!)^2 for large M. With x = m + (nu+2)/2 the
// summand is x^{-a} (1 + p2/x^2 + O(x^-4)), a = 2nu+2; the sum is the
// midpoint-rule integral from X = x_M - 1/2 plus its first correction.
long double asymptotic_tail(int nu, long double M) {
  const long double a = 2.0L * nu + 2.0L;
  const long double centre = (nu + 2) / 2.0L;
  long double p2 = 0;
  for (int j = 1; j <= nu + 1; ++j) {
    const long double c = j - centre;
    p2 += c * c;
  }
  const long double X = M + centre - 0.5L;
  return std::pow(X, 1.0L - a) / (a - 1.0L) + p2 * std::pow(X, -1.0L - a) / (a + 1.0L) -
         a * std::pow(X, -a - 1.0L) / 24.0L;
}

}  // namespace

double matern_exact_hs_error(const MaternOrder& order, int n) {
  if (n < 1) throw std::invalid_argument("matern_exact_hs_error: n must be positive");
  const int nu = order.nu();

  // Sum the series relative to its first term so nothing under- or overflows.
  constexpr int kMaxDirect = 8192;
  long double ratio_sum = 0;
  long double log_first = 0;  // log((n!/(n+nu+1)!)^2)
  for (int j = 1; j <= nu + 1; ++j) log_first -= 2.0L * std::log(static_cast<long double>(n + j));

  long long m = n;
  for (; m < static_cast<long long>(n) + kMaxDirect; ++m) {
    long double r = 1;
    for (int j = 1; j <= nu + 1; ++j) {
      const long double q = static_cast<long double>(n + j) / static_cast<long double>(m + j);
      r *= q * q;
    }
    ratio_sum += r;
    if (r < 1e-20L * ratio_sum) {
      ++m;
      break;
    }
  }
  // Remaining tail, rescaled by the first term.
  const long double tail = asymptotic_tail(nu, static_cast<long double>(m));
  ratio_sum += std::exp(std::log(tail) - log_first);

  const long double log_sq = std::log(2.0L) + 4.0L * detail::matern_log_prefactor(nu) + log_first +
                             std::log(ratio_sum);
  return static_cast<double>(std::exp(0.5L * log_sq));
}

}  // namespace rkhs
