// Acceptance checks 1-12. One line per criterion; exit status 1 if any fails.
// Tolerances and parameter choices are fixed here and not configurable.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "rkhs/cauchy.hpp"
#include "rkhs/featuremap.hpp"
#include "rkhs/gaussian.hpp"
#include "rkhs/laguerre_basis.hpp"
#include "rkhs/matern.hpp"
#include "rkhs/quadrature.hpp"
#include "rkhs/verify.hpp"

namespace {

using rkhs::MaternClass;
using rkhs::MaternOrder;
using rkhs::MaternTruncation;

struct Outcome {
  bool passed = true;
  std::string detail;
};

char buf[512];

template <class... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Appends a sub-result; the criterion passes only if every sub-result does.
void note(Outcome& o, bool ok, const std::string& what) {
  o.passed = o.passed && ok;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what + (ok ? "" : " FAIL");
}

constexpr int kMaternMaxNu = 4;

// 1 ------------------------------------------------------------------------
Outcome gaussian_truncation_error() {
  Outcome o;
  const double alpha = std::sqrt(2.0 / 3);
  const auto rule = rkhs::gauss_hermite_rule<double>(128);
  const rkhs::GaussianScale unit;
  double worst_closed = 0;
  double worst_quad = 0;
  for (int n = 1; n <= 6; ++n) {
    const double analytic = rkhs::gaussian_truncation_error(n);
    const double closed = std::pow(3.0, -n) / std::sqrt(2.0);
    worst_closed = std::max(worst_closed, std::abs(analytic - closed) / closed);
    // s = alpha t: w_alpha dt = e^{-s^2} ds / sqrt(pi)
    std::vector<Eigen::VectorXd> feats;
    for (double s : rule.nodes) feats.push_back(rkhs::gaussian_feature_map(unit, n, s / alpha));
    double sq = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      for (std::size_t j = 0; j < rule.size(); ++j) {
        const double d = rkhs::gaussian_kernel(unit, rule.nodes[i] / alpha, rule.nodes[j] / alpha) - feats[i].dot(feats[j]);
        sq += rule.weights[i] * rule.weights[j] * d * d;
      }
    }
    const double quad = std::sqrt(sq / std::numbers::pi);
    worst_quad = std::max(worst_quad, std::abs(quad - analytic) / analytic);
  }
  note(o, worst_closed == 0, fmt("analytic vs 3^-n/sqrt2 max rel %.3g", worst_closed));
  note(o, worst_quad <= 1e-6, fmt("128-node tensor quadrature max rel %.3g (tol 1e-6)", worst_quad));
  return o;
}

// 2 ------------------------------------------------------------------------
Outcome matern_norms() {
  Outcome o;
  double worst_diag = 0;
  double worst_off = 0;
  for (int nu = 0; nu <= kMaternMaxNu; ++nu) {
    rkhs::BasisSet basis{rkhs::GramBasis::matern_plus, {}, nu};
    for (int m = 0; m <= 12; ++m) basis.indices.push_back(m);
    const auto g = rkhs::gram_matrix(basis, rkhs::gauss_laguerre_rule<double>(64, nu + 1.0));
    const MaternOrder order(nu);
    long double pref = 1;  // (nu!)^2/(2nu)!
    for (int k = 1; k <= nu; ++k) pref *= static_cast<long double>(k) / (nu + k);
    for (int i = 0; i <= 12; ++i) {
      long double ratio = 1;  // i!/(i+nu+1)!
      for (int k = 1; k <= nu + 1; ++k) ratio /= static_cast<long double>(i + k);
      const double want = static_cast<double>(pref * ratio);
      worst_diag = std::max(worst_diag, std::abs(g(i, i) - want) / want);
      for (int j = 0; j <= 12; ++j) {
        if (j != i) worst_off = std::max(worst_off, std::abs(g(i, j)));
      }
    }
  }
  note(o, worst_diag <= 1e-8, fmt("diagonal max rel %.3g (tol 1e-8)", worst_diag));
  note(o, worst_off <= 1e-8, fmt("off-diagonal max %.3g (tol 1e-8)", worst_off));
  return o;
}

// 3 ------------------------------------------------------------------------
Outcome matern_bound() {
  Outcome o;
  double lo = INFINITY;
  double hi = 0;
  for (int nu = 0; nu <= kMaternMaxNu; ++nu) {
    for (int n = 1; n <= 64; n *= 2) {
      const MaternOrder order(nu);
      const double ratio = rkhs::matern_exact_hs_error(order, n) / rkhs::matern_truncation_error_bound(order, n);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  note(o, lo > 0 && hi <= 1, fmt("exact/bound ratio in [%.4f, %.4f]", lo, hi));
  return o;
}

// 4 ------------------------------------------------------------------------
Outcome pointwise_reconstruction() {
  Outcome o;
  const auto pairs = rkhs::sample_pairs(20, -3.0, 3.0);
  auto worst = [&](const std::function<double(double, double)>& approx, const std::function<double(double, double)>& exact) {
    double e = 0;
    for (const auto& p : pairs) e = std::max(e, std::abs(approx(p.t, p.u) - exact(p.t, p.u)));
    return e;
  };
  for (int nu = 0; nu <= kMaternMaxNu; ++nu) {
    const MaternOrder order(nu);
    const MaternTruncation tr(order, 200);
    const double e = worst([&](double t, double u) { return rkhs::matern_truncated(tr, t, u); },
                           [&](double t, double u) { return rkhs::matern_kernel(order, t, u); });
    note(o, e <= 1e-6, fmt("matern nu=%d n=200 %.3g", nu, e));
  }
  const double ec = worst([](double t, double u) { return rkhs::cauchy_truncated(1.0, 200, t, u); },
                          [](double t, double u) { return rkhs::cauchy_kernel(1.0, t, u); });
  note(o, ec <= 1e-6, fmt("cauchy n=200 %.3g", ec));
  const rkhs::GaussianScale unit;
  const double eg = worst([&](double t, double u) { return rkhs::gaussian_truncated(unit, 60, t, u); },
                          [&](double t, double u) { return rkhs::gaussian_kernel(unit, t, u); });
  note(o, eg <= 1e-6, fmt("gaussian n=60 %.3g", eg));
  double sign_err = 0;
  int opposite = 0;
  for (int nu = 0; nu <= kMaternMaxNu; ++nu) {
    const MaternOrder order(nu);
    const MaternTruncation tr(order, 1);
    for (const auto& p : pairs) {
      if ((p.t < 0) == (p.u < 0)) continue;
      ++opposite;
      sign_err = std::max(sign_err, std::abs(rkhs::matern_truncated(tr, p.t, p.u) - rkhs::matern_kernel(order, p.t, p.u)));
    }
  }
  note(o, opposite > 0 && sign_err <= 1e-12, fmt("matern opposite signs n=1 %.3g over %d pairs", sign_err, opposite));
  return o;
}

// 5 ------------------------------------------------------------------------
Outcome closed_forms() {
  Outcome o;
  const auto grid = rkhs::linspace(0.0, 6.0, 121);
  for (int nu : {1, 2}) {
    const MaternOrder order(nu);
    double e = 0;
    for (double d : grid) {
      double s = 0;
      for (int m = 0; m <= nu; ++m) {
        s += rkhs::matern_psi(order, {MaternClass::null, m}, 0.0) * rkhs::matern_psi(order, {MaternClass::null, m}, d);
      }
      const double want = nu == 1 ? (1 + d) * std::exp(-d) : (1 + d + d * d / 3) * std::exp(-d);
      e = std::max(e, std::abs(s - want));
    }
    note(o, e <= 1e-12, fmt("r_%d/2 null-space sum %.3g", 2 * nu + 1, e));
  }
  return o;
}

// 6 ------------------------------------------------------------------------
Outcome convolution_oracle() {
  Outcome o;
  const auto grid = rkhs::default_grid();
  double em = 0;
  for (int nu = 0; nu <= 3; ++nu) {
    const MaternOrder order(nu);
    // every class up to class index 8: plus 0..8, null 0..nu, minus 0..8
    for (int m = -nu - 10; m <= 8; ++m) {
      const auto id = rkhs::matern_id_from_index(nu, m);
      for (double t : grid) {
        em = std::max(em, std::abs(rkhs::convolution_oracle(rkhs::MaternFamily{nu}, m, t) - rkhs::matern_psi(order, id, t)));
      }
    }
  }
  note(o, em <= 1e-6, fmt("matern max %.3g", em));
  double eg = 0;
  for (int m = 0; m <= 10; ++m) {
    for (double t : grid) eg = std::max(eg, std::abs(rkhs::convolution_oracle(rkhs::GaussianFamily{}, m, t) - rkhs::gaussian_psi(m, t)));
  }
  note(o, eg <= 1e-6, fmt("gaussian max %.3g", eg));
  return o;
}

// 7 ------------------------------------------------------------------------
Outcome identities() {
  Outcome o;
  const auto omega = rkhs::linspace(-10.0, 10.0, 50);
  using rkhs::LaguerreIdentity;
  auto run = [&](LaguerreIdentity which, std::vector<std::vector<int>> params) {
    double worst = 0;
    bool ok = true;
    for (const auto& p : params) {
      const auto r = rkhs::check_identity(which, p, omega, 1e-12);
      ok = ok && r.passed;
      worst = std::max(worst, r.abs_error);
    }
    note(o, ok, fmt("%s %zu cases max %.3g", std::string(rkhs::to_string(which)).c_str(), params.size(), worst));
  };
  std::vector<std::vector<int>> single, pairs, orders;
  for (int m = -6; m <= 6; ++m) {
    single.push_back({m});
    for (int k = -6; k <= 6; ++k) pairs.push_back({m, k});
  }
  for (int nu = 0; nu <= 6; ++nu) orders.push_back({nu});
  run(LaguerreIdentity::conjugate_symmetry, single);
  run(LaguerreIdentity::shift, pairs);
  run(LaguerreIdentity::multiplication, pairs);
  run(LaguerreIdentity::binomial, orders);
  return o;
}

// 8 ------------------------------------------------------------------------
Outcome uniform_bound() {
  Outcome o;
  const auto grid = rkhs::linspace(-60.0, 60.0, 24001);
  for (int nu = 0; nu <= kMaternMaxNu; ++nu) {
    const MaternOrder order(nu);
    const double bound = rkhs::matern_psi_bound(order);
    const MaternTruncation tr(order, 31);
    double peak = 0;
    for (double t : grid) peak = std::max(peak, rkhs::matern_feature_map(tr, t).cwiseAbs().maxCoeff());
    note(o, peak <= bound + 1e-12, fmt("nu=%d max %.6f bound %.6f", nu, peak, bound));
  }
  return o;
}

// 9 ------------------------------------------------------------------------
Outcome cauchy_geometric() {
  using C = std::complex<double>;
  Outcome o;
  const auto pairs = rkhs::sample_pairs(20, -3.0, 3.0);
  constexpr int n = 400;
  double to_stated = 0;
  double to_conjugate = 0;
  double closed_vs_direct = 0;
  double real_vs_complex = 0;
  for (const auto& p : pairs) {
    const double t = p.t;
    const double u = p.u;
    C sum = 0;
    for (int m = 0; m < n; ++m) {
      const C term = std::conj(rkhs::cauchy_psi_complex(m, t)) * rkhs::cauchy_psi_complex(m, u);
      sum += term;
      if (m < 60) {
        const double real = rkhs::cauchy_real_basis(rkhs::CauchyKind::alpha, m, t) * rkhs::cauchy_real_basis(rkhs::CauchyKind::alpha, m, u) +
                            rkhs::cauchy_real_basis(rkhs::CauchyKind::beta, m, t) * rkhs::cauchy_real_basis(rkhs::CauchyKind::beta, m, u);
        real_vs_complex = std::max(real_vs_complex, std::abs(real - 2 * term.real()));
      }
    }
    closed_vs_direct = std::max(closed_vs_direct, std::abs(rkhs::cauchy_partial_sum_closed_form(n, t, u) - sum));
    const C stated = 0.5 / (C(-1, t) * C(-1, -u) - t * u);
    to_stated = std::max(to_stated, std::abs(sum - stated));
    to_conjugate = std::max(to_conjugate, std::abs(sum - std::conj(stated)));
  }
  note(o, to_stated <= 1e-12, fmt("partial sums (n=%d) vs 1/2/((it-1)(-iu-1)-tu) max %.3g", n, to_stated));
  o.detail += fmt(" [vs its conjugate %.3g]", to_conjugate);
  note(o, closed_vs_direct <= 1e-12, fmt("geometric closed form vs direct %.3g", closed_vs_direct));
  note(o, real_vs_complex <= 1e-12, fmt("alpha/beta vs 2 Re psi* psi %.3g", real_vs_complex));
  return o;
}

// 10 -----------------------------------------------------------------------
Outcome mehler() {
  Outcome o;
  const auto grid = rkhs::linspace(-2.0, 2.0, 5);
  bool ok = true;
  double worst = 0;
  double kernel_err = 0;
  for (double x : grid) {
    for (double y : grid) {
      const auto r = rkhs::mehler_check(1.0 / 3, x, y, 1e-10);
      ok = ok && r.passed;
      worst = std::max(worst, r.abs_error);
      kernel_err = std::max(kernel_err, std::abs(rkhs::gaussian_kernel_via_mehler(x, y) - rkhs::gaussian_kernel(rkhs::GaussianScale(), x, y)));
    }
  }
  note(o, ok, fmt("mehler_check 5x5 max %.3g", worst));
  note(o, kernel_err <= 1e-10, fmt("kernel via rho=1/3 %.3g", kernel_err));
  return o;
}

// 11 -----------------------------------------------------------------------
Outcome mercer_relation() {
  Outcome o;
  const rkhs::MercerParams p;
  double e = 0;
  for (int m = 0; m <= 15; ++m) {
    const double s = std::sqrt(rkhs::mercer_eigenvalue(p, m));
    for (double t : rkhs::linspace(-6.0, 6.0, 121)) e = std::max(e, std::abs(s * rkhs::mercer_eigenfunction(p, m, t) - rkhs::gaussian_psi(m, t)));
  }
  note(o, e <= 1e-12, fmt("max %.3g", e));
  return o;
}

// 12 -----------------------------------------------------------------------
// Ridge 0.1 (matching the noise level); Matern orders as in criterion 4.
constexpr double kKrrRidge = 0.1;

Outcome krr() {
  Outcome o;
  const auto x = rkhs::uniform_samples(20, -3.0, 3.0, rkhs::kDefaultSeed);
  const auto u = rkhs::uniform_samples(40, 0.0, 1.0, rkhs::kDefaultSeed + 1);
  std::vector<double> y;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double eps = std::sqrt(-2 * std::log1p(-u[2 * i])) * std::cos(2 * std::numbers::pi * u[2 * i + 1]);
    y.push_back(std::sin(2 * x[i]) * std::exp(-x[i] * x[i] / 8) + 0.1 * eps);
  }
  const auto xt = rkhs::linspace(-3.0, 3.0, 50);
  std::vector<rkhs::KernelFamily> families;
  for (int nu = 0; nu <= kMaternMaxNu; ++nu) families.push_back(rkhs::MaternFamily{nu});
  families.push_back(rkhs::CauchyFamily{});
  families.push_back(rkhs::GaussianFamily{});
  for (const auto& fam : families) {
    const auto reduced = rkhs::krr_fit_predict(rkhs::FeatureMapSpec(fam, 1.0, 200), x, y, kKrrRidge, xt);
    const auto full = rkhs::full_krr_predict(fam, 1.0, x, y, kKrrRidge, xt);
    double gap = 0;
    for (std::size_t k = 0; k < xt.size(); ++k) gap = std::max(gap, std::abs(reduced[k] - full[k]));
    note(o, gap <= 1e-5, fmt("%s %.3g", rkhs::family_name(fam).c_str(), gap));
  }
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds; 0 when none is set
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "gaussian exact truncation error", 10, gaussian_truncation_error},
      {2, "matern norm formula", 30, matern_norms},
      {3, "matern truncation bound", 5, matern_bound},
      {4, "pointwise kernel reconstruction", 10, pointwise_reconstruction},
      {5, "known matern closed forms", 0, closed_forms},
      {6, "convolution oracle", 60, convolution_oracle},
      {7, "laguerre identity suite", 0, identities},
      {8, "matern uniform bound", 0, uniform_bound},
      {9, "cauchy geometric closed form", 0, cauchy_geometric},
      {10, "mehler consistency", 0, mehler},
      {11, "mercer relation", 0, mercer_relation},
      {12, "reduced-rank vs full krr", 10, krr},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0) note(o, secs < c.time_limit, fmt("runtime limit %.0f s", c.time_limit));
    if (!o.passed) ++failed;
    std::printf("criterion %2d %s  %s (%.2f s): %s\n", c.id, o.passed ? "PASS" : "FAIL", c.title, secs, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
