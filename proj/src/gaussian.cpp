#include "rkhs/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace rkhs {

namespace {

// Cramer's inequality |H_m(x)| e^{-x^2/2} <= k sqrt(2^m m!) with k < 1.0865.
constexpr double kCramer = 1.0866;
constexpr int kMehlerMaxTerms = 500;
constexpr double kMehlerIncrement = 1e-14;

void require_rho(double rho, const char* who) {
  if (!(std::abs(rho) < 1.0)) throw std::invalid_argument(std::string(who) + ": |rho| must be < 1");
}

}  // namespace

double mehler_closed_form(double rho, double x, double y) {
  require_rho(rho, "mehler_closed_form");
  const double one_minus = 1.0 - rho * rho;
  return std::sqrt(1.0 / one_minus) *
         std::exp((4.0 * x * y * rho - (1.0 + rho * rho) * (x * x + y * y)) / (2.0 * one_minus));
}

VerificationReport mehler_check(double rho, double x, double y, double tolerance) {
  require_rho(rho, "mehler_check");
  if (!std::isfinite(x) || !std::isfinite(y)) throw std::invalid_argument("mehler_check: x and y must be finite");

  const auto hx = hermite_normalized_sequence(kMehlerMaxTerms, x);
  const auto hy = hermite_normalized_sequence(kMehlerMaxTerms, y);
  const double gauss = -(x * x + y * y) / 2.0;

  // Each term is rho^m h_m(x) h_m(y) e^{-(x^2+y^2)/2}, bounded by |rho|^m kCramer^2.
  // Stopping on that bound rather than the observed term keeps odd-degree
  // zeros at x = 0 from ending the sum early.
  double sum = 0;
  int terms = 0;
  const double abs_rho = std::abs(rho);
  for (int m = 0; m < kMehlerMaxTerms; ++m) {
    const auto& a = hx[static_cast<std::size_t>(m)];
    const auto& b = hy[static_cast<std::size_t>(m)];
    const double sign = (rho < 0 && m % 2 != 0) ? -1.0 : 1.0;
    const double mant = a.mantissa * b.mantissa;
    if (mant != 0.0) {
      sum += sign * mant * std::pow(abs_rho, m) * std::exp(a.log_scale + b.log_scale + gauss);
    }
    terms = m + 1;
    if (std::pow(abs_rho, m + 1) * kCramer * kCramer < kMehlerIncrement) break;
  }

  const double closed = mehler_closed_form(rho, x, y);
  return make_report("gaussian.mehler", sum, closed, tolerance,
                     {{"rho", rho}, {"x", x}, {"y", y}, {"terms", static_cast<double>(terms)}});
}

double gaussian_kernel_via_mehler(double t, double u) {
  const double s3 = std::sqrt(3.0);
  const double m = mehler_closed_form(1.0 / 3.0, 2.0 * t / s3, 2.0 * u / s3);
  return 2.0 * std::numbers::sqrt2 / 3.0 * std::exp((t * t + u * u) / 3.0) * m;
}

}  // namespace rkhs
