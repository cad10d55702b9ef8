#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "rkhs/gaussian.hpp"
#include "rkhs/orthopoly.hpp"
#include "rkhs/quadrature.hpp"

using doctest::Approx;

namespace {

double close(long double x) { return static_cast<double>(x); }

// sum_m (rho/2)^m / m! H_m(x) H_m(y) e^{-(x^2+y^2)/2}, summed until the terms are negligible.
long double mehler_series(long double rho, long double x, long double y) {
  long double s = 0;
  for (int m = 0; m < 120; ++m) {
    s += std::pow(rho / 2, m) / oracle::factorial(m) * oracle::hermite(m, x) * oracle::hermite(m, y);
  }
  return s * std::exp(-(x * x + y * y) / 2);
}

}  // namespace

TEST_CASE("kernel") {
  CHECK(rkhs::gaussian_kernel(rkhs::GaussianScale(), 0.0, 0.0) == 1.0);
  CHECK(rkhs::gaussian_kernel(rkhs::GaussianScale(), 1.0, 3.0) == Approx(std::exp(-2.0)));
  CHECK(rkhs::gaussian_kernel(rkhs::GaussianScale(0.5), 1.0, 3.0) == Approx(std::exp(-0.5)));
  CHECK_THROWS_AS(rkhs::GaussianScale(-1.0), std::invalid_argument);
}

TEST_CASE("basis functions match explicit Hermite sums") {
  for (int m = 0; m <= 20; ++m) {
    for (double t : {-4.0, -1.0, 0.0, 0.5, 2.0, 6.0}) {
      CHECK(rkhs::gaussian_psi(m, t) == Approx(close(oracle::gaussian_psi(m, t))).epsilon(1e-12).scale(1e-4));
      CHECK(rkhs::hermite_fn(m, t) == Approx(close(oracle::hermite_fn(m, t))).epsilon(1e-12).scale(1e-4));
    }
  }
  CHECK(rkhs::gaussian_psi(rkhs::GaussianScale(2.0), 3, 0.7) == rkhs::gaussian_psi(3, 1.4));
}

TEST_CASE("feature map agrees with pointwise evaluation") {
  const rkhs::GaussianScale scale(1.3);
  for (double t : {-3.0, 0.0, 0.9}) {
    const auto f = rkhs::gaussian_feature_map(scale, 30, t);
    for (int m = 0; m < 30; ++m) CHECK(f(m) == Approx(rkhs::gaussian_psi(scale, m, t)).epsilon(1e-13).scale(1e-6));
  }
}

TEST_CASE("Mercer parameters at alpha = sqrt(2/3)") {
  const rkhs::MercerParams p;
  CHECK(p.beta() == Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(p.delta_sq() == Approx(1.0 / 3).epsilon(1e-15));
  for (int m = 0; m < 12; ++m) CHECK(rkhs::mercer_eigenvalue(p, m) == Approx(2 / std::pow(3.0, m + 1)).epsilon(1e-14));
  CHECK(rkhs::mercer_weight(p, 0.0) == Approx(std::sqrt(2.0 / 3) / std::sqrt(std::numbers::pi)));
  CHECK_THROWS_AS(rkhs::MercerParams(0.0), std::invalid_argument);
}

TEST_CASE("psi_m = sqrt(mu_m) times the Mercer eigenfunction") {
  const rkhs::MercerParams p;
  for (int m = 0; m < 15; ++m) {
    for (double t : {-2.0, 0.3, 1.8}) {
      CHECK(rkhs::gaussian_psi(m, t) ==
            Approx(std::sqrt(rkhs::mercer_eigenvalue(p, m)) * rkhs::mercer_eigenfunction(p, m, t)).epsilon(1e-13).scale(1e-6));
    }
  }
}

TEST_CASE("orthogonality under w_alpha") {
  const rkhs::MercerParams p;
  const double alpha = p.alpha();
  // x = alpha t turns w_alpha dt into e^{-x^2} dx / sqrt(pi)
  const auto rule = rkhs::gauss_hermite_rule<double>(60);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const double ip = rkhs::integrate(rule, [&](double x) {
                          return rkhs::gaussian_psi(a, x / alpha) * rkhs::gaussian_psi(b, x / alpha);
                        }) / std::sqrt(std::numbers::pi);
      CHECK(std::abs(ip - (a == b ? rkhs::mercer_eigenvalue(p, a) : 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("kappa = 1 reduces to psi_m") {
  for (int m = 0; m < 10; ++m) {
    for (double t : {-1.5, 0.0, 2.2}) {
      CHECK(rkhs::gaussian_psi_scaled(m, 1.0, t) == Approx(rkhs::gaussian_psi(m, t)).epsilon(1e-14).scale(1e-6));
    }
  }
  CHECK_THROWS_AS(rkhs::gaussian_psi_scaled(1, 1.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rkhs::gaussian_psi_scaled(1, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("multiplication theorem") {
  for (int m = 0; m <= 14; ++m) {
    for (double b : {0.5, 1.0, std::sqrt(2.0)}) {
      for (double t : {-1.2, 0.4, 2.0}) {
        const double want = close(oracle::hermite(m, b * t));
        CHECK(rkhs::hermite_multiplication(m, b, t) == Approx(want).epsilon(1e-11).scale(1.0));
      }
    }
  }
}

TEST_CASE("Mehler closed form against the series") {
  for (double rho : {0.0, 1.0 / 3, 0.5, -0.4, 0.8}) {
    for (double x : {-1.0, 0.0, 0.7}) {
      for (double y : {-0.3, 1.5}) {
        CHECK(rkhs::mehler_closed_form(rho, x, y) == Approx(close(mehler_series(rho, x, y))).epsilon(1e-12));
        const auto r = rkhs::mehler_check(rho, x, y);
        CHECK(r.passed);
        CHECK(r.metadata.at("terms") >= 1);
        CHECK(r.metadata.at("terms") <= 500);
      }
    }
  }
}

TEST_CASE("kernel recovered from Mehler") {
  for (double t : {-2.0, 0.1, 1.0}) {
    for (double u : {-0.5, 1.7}) {
      CHECK(rkhs::gaussian_kernel_via_mehler(t, u) == Approx(rkhs::gaussian_kernel(rkhs::GaussianScale(), t, u)).epsilon(1e-13));
    }
  }
}

TEST_CASE("truncation converges geometrically") {
  const rkhs::GaussianScale unit;
  for (double t : {-1.0, 0.5}) {
    for (double u : {-0.2, 1.5}) {
      const double exact = rkhs::gaussian_kernel(unit, t, u);
      CHECK(std::abs(rkhs::gaussian_truncated(unit, 40, t, u) - exact) < 1e-13);
    }
  }
}

TEST_CASE("weighted HS error 3^{-n}/sqrt 2 by tensor quadrature") {
  const double alpha = std::sqrt(2.0 / 3);
  const auto rule = rkhs::gauss_hermite_rule<double>(80);
  const rkhs::GaussianScale unit;
  for (int n = 1; n <= 5; ++n) {
    const double sq = rkhs::integrate2(rule, rule, [&](double x, double y) {
                        const double t = x / alpha;
                        const double u = y / alpha;
                        long double trunc = 0;
                        for (int m = 0; m < n; ++m) trunc += oracle::gaussian_psi(m, t) * oracle::gaussian_psi(m, u);
                        const double d = rkhs::gaussian_kernel(unit, t, u) - close(trunc);
                        return d * d;
                      }) / std::numbers::pi;
    CHECK(std::sqrt(sq) == Approx(rkhs::gaussian_truncation_error(n)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(rkhs::gaussian_truncation_error(0), std::invalid_argument);
}
