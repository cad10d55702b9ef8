#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "rkhs/cauchy.hpp"
#include "rkhs/core.hpp"

using doctest::Approx;
using rkhs::CauchyKind;

namespace {

std::complex<double> close(std::complex<long double> z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

}  // namespace

TEST_CASE("kernel") {
  CHECK(rkhs::cauchy_kernel(1.0, 0.0, 0.0) == 1.0);
  CHECK(rkhs::cauchy_kernel(1.0, 1.0, 3.0) == Approx(0.2));
  CHECK(rkhs::cauchy_kernel(2.0, 1.0, 3.0) == Approx(1.0 / 17));
  CHECK_THROWS_AS(rkhs::cauchy_kernel(0.0, 1.0, 3.0), std::invalid_argument);
}

TEST_CASE("complex basis matches direct complex powers") {
  for (int m : {-7, -2, -1, 0, 1, 2, 9, 40}) {
    for (double t : {-6.0, -1.0, -0.1, 0.0, 0.3, 1.0, 2.5, 50.0}) {
      const auto got = rkhs::cauchy_psi_complex(m, t);
      const auto want = close(oracle::cauchy_psi(m, t));
      CHECK(std::abs(got - want) < 1e-14);
    }
  }
}

TEST_CASE("real basis is sqrt 2 times the real and imaginary parts") {
  for (int m = 0; m <= 45; ++m) {
    for (double t : {-4.0, -0.5, 0.0, 0.7, 1.0, 3.0}) {
      const auto z = close(oracle::cauchy_psi(m, t));
      CHECK(rkhs::cauchy_real_basis(CauchyKind::alpha, m, t) == Approx(std::sqrt(2.0) * z.real()).epsilon(1e-12).scale(1e-2));
      CHECK(rkhs::cauchy_real_basis(CauchyKind::beta, m, t) == Approx(std::sqrt(2.0) * z.imag()).epsilon(1e-12).scale(1e-2));
    }
  }
}

TEST_CASE("low-order closed forms") {
  // alpha_0 = 1/(1+t^2), beta_0 = t/(1+t^2)
  for (double t : {-2.0, 0.5, 3.0}) {
    CHECK(rkhs::cauchy_real_basis(CauchyKind::alpha, 0, t) == Approx(1 / (1 + t * t)));
    CHECK(rkhs::cauchy_real_basis(CauchyKind::beta, 0, t) == Approx(t / (1 + t * t)));
  }
}

TEST_CASE("conjugate symmetry conj psi_m(t) = -psi_{-m-1}(t) = psi_m(-t)") {
  for (int m = 0; m < 20; ++m) {
    for (double t : {-3.0, 0.2, 1.9}) {
      const auto c = std::conj(rkhs::cauchy_psi_complex(m, t));
      CHECK(std::abs(rkhs::cauchy_psi_complex(-m - 1, t) + c) < 1e-15);
      CHECK(std::abs(rkhs::cauchy_psi_complex(m, -t) - c) < 1e-15);
    }
  }
}

TEST_CASE("feature map recurrence matches the explicit real basis") {
  const int n = 40;
  for (double t : {-2.5, -0.3, 0.0, 1.0, 4.0}) {
    const auto f = rkhs::cauchy_feature_map(1.0, n, t);
    for (int m = 0; m < n; ++m) {
      CHECK(f(m) == Approx(rkhs::cauchy_real_basis(CauchyKind::alpha, m, t)).epsilon(1e-12).scale(1e-2));
      CHECK(f(n + m) == Approx(rkhs::cauchy_real_basis(CauchyKind::beta, m, t)).epsilon(1e-12).scale(1e-2));
    }
  }
  const auto g = rkhs::cauchy_feature_map(3.0, 5, 0.5);
  const auto h = rkhs::cauchy_feature_map(1.0, 5, 1.5);
  CHECK((g - h).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the modulus bound |psi| <= 1/sqrt 2") {
  for (int m = 0; m < 60; m += 7) {
    for (double t = -20; t <= 20; t += 0.25) CHECK(std::abs(rkhs::cauchy_psi_complex(m, t)) <= std::sqrt(0.5) + 1e-15);
  }
}

TEST_CASE("geometric terms and their partial sums") {
  for (double t : {-1.5, 0.4, 2.0}) {
    for (double u : {-0.7, 0.9, 3.0}) {
      std::complex<double> direct = 0;
      for (int m = 0; m < 25; ++m) direct += std::conj(rkhs::cauchy_psi_complex(m, t)) * rkhs::cauchy_psi_complex(m, u);
      CHECK(std::abs(rkhs::cauchy_partial_sum_closed_form(25, t, u) - direct) < 1e-14);
      const auto [q, a] = rkhs::cauchy_geometric_terms(t, u);
      CHECK(std::abs(q) < 1);
      CHECK(std::abs(a - std::conj(rkhs::cauchy_psi_complex(0, t)) * rkhs::cauchy_psi_complex(0, u)) < 1e-15);
    }
  }
}

TEST_CASE("the geometric limit is 1/2 over 1 + i(t - u)") {
  for (double t : {-1.5, 0.4, 2.0}) {
    for (double u : {-0.7, 0.9, 3.0}) {
      const std::complex<double> want = 0.5 / std::complex<double>(1, t - u);
      CHECK(std::abs(rkhs::cauchy_geometric_limit(t, u) - want) < 1e-15);
      // the real part of twice the limit is the kernel
      CHECK(2 * rkhs::cauchy_geometric_limit(t, u).real() == Approx(rkhs::cauchy_kernel(1.0, t, u)));
    }
  }
}

TEST_CASE("truncation converges to the kernel") {
  // both index halves: sum over m of alpha alpha + beta beta is 2 Re sum conj(psi) psi
  for (double t : {-1.0, 0.5}) {
    for (double u : {-0.5, 1.2}) {
      const double exact = rkhs::cauchy_kernel(1.0, t, u);
      double previous = INFINITY;
      for (int n : {4, 16, 64, 256}) {
        const double err = std::abs(rkhs::cauchy_truncated(1.0, n, t, u) - exact);
        CHECK(err <= previous);
        previous = err;
      }
      CHECK(previous < 1e-6);
    }
  }
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(rkhs::cauchy_real_basis(CauchyKind::alpha, -1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rkhs::cauchy_real_basis(CauchyKind::complex, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rkhs::cauchy_feature_map(1.0, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rkhs::cauchy_partial_sum_closed_form(0, 0.0, 0.0), std::invalid_argument);
}
