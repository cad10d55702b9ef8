#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "rkhs/cauchy.hpp"
#include "rkhs/gaussian.hpp"
#include "rkhs/laguerre_basis.hpp"
#include "rkhs/matern.hpp"
#include "rkhs/verify.hpp"

namespace rkhs {

namespace {

constexpr double kAlgebraicTol = 1e-12;
constexpr double kQuadratureTol = 1e-8;

using Reports = std::vector<VerificationReport>;

std::string bracket(const std::string& base, const std::string& params) { return base + "[" + params + "]"; }

template <class F>
double max_over(const std::vector<double>& grid, F f) {
  double worst = 0;
  for (double x : grid) worst = std::max(worst, std::abs(f(x)));
  return worst;
}

// ---- identities -------------------------------------------------------------

void identities_suite(Reports& out) {
  const auto omega = linspace(-10.0, 10.0, 50);
  for (int m = -6; m <= 6; ++m) {
    const int p[] = {m};
    auto r = check_identity(LaguerreIdentity::conjugate_symmetry, p, omega, kAlgebraicTol);
    r.check_name = bracket(r.check_name, "m=" + std::to_string(m));
    out.push_back(std::move(r));
  }
  for (int m : {-6, -1, 0, 5}) {
    for (int k : {-3, 0, 6}) {
      const int p[] = {m, k};
      auto r = check_identity(LaguerreIdentity::shift, p, omega, kAlgebraicTol);
      r.check_name = bracket(r.check_name, "m=" + std::to_string(m) + ",k=" + std::to_string(k));
      out.push_back(std::move(r));
    }
  }
  for (int m : {-6, 0, 6}) {
    for (int k : {-6, 0, 6}) {
      const int p[] = {m, k};
      auto r = check_identity(LaguerreIdentity::multiplication, p, omega, kAlgebraicTol);
      r.check_name = bracket(r.check_name, "m=" + std::to_string(m) + ",k=" + std::to_string(k));
      out.push_back(std::move(r));
    }
  }
  for (int nu = 0; nu <= 6; ++nu) {
    const int p[] = {nu};
    auto r = check_identity(LaguerreIdentity::binomial, p, omega, kAlgebraicTol);
    r.check_name = bracket(r.check_name, "nu=" + std::to_string(nu));
    out.push_back(std::move(r));
  }
}

// ---- matern -----------------------------------------------------------------

void matern_suite(Reports& out, const SuiteOptions& opt) {
  const auto dgrid = linspace(0.0, 6.0, 61);
  const MaternTruncation tr1(MaternOrder(1), 1);
  const MaternTruncation tr2(MaternOrder(2), 1);
  // Null-space sums at t = 0 against the textbook closed forms.
  out.push_back(make_deviation_report(
      "matern.closed_form[nu=1]",
      max_over(dgrid, [&](double d) { return matern_truncated(tr1, 0.0, d) - (1 + d) * std::exp(-d); }),
      kAlgebraicTol));
  out.push_back(make_deviation_report(
      "matern.closed_form[nu=2]",
      max_over(dgrid, [&](double d) { return matern_truncated(tr2, 0.0, d) - (1 + d + d * d / 3) * std::exp(-d); }),
      kAlgebraicTol));

  const auto pairs = sample_pairs(20, -3.0, 3.0, opt.seed);
  const auto tgrid = linspace(-6.0, 6.0, 241);
  for (int nu = 0; nu <= 4; ++nu) {
    const MaternOrder order(nu);
    const std::string p = "nu=" + std::to_string(nu);

    // Opposite signs: only the null space contributes.
    double sign_dev = 0;
    const MaternTruncation tr(order, 1);
    for (const auto& s : pairs) {
      const double t = std::abs(s.t) + 0.05;
      const double u = -std::abs(s.u) - 0.05;
      sign_dev = std::max(sign_dev, std::abs(matern_kernel(order, t, u) - matern_truncated(tr, t, u)));
    }
    out.push_back(make_deviation_report(bracket("matern.sign_split", p), sign_dev, kAlgebraicTol));

    // Orthogonality and norms in L2(R+, w_nu) and L2(R-, w_nu).
    BasisSet basis{GramBasis::matern_plus, {}, nu};
    for (int m = 0; m <= 12; ++m) basis.indices.push_back(m);
    const auto rule = gauss_laguerre_rule<double>(opt.quad_nodes > 0 ? std::min(opt.quad_nodes, 64) : 64, nu + 1.0);
    for (auto kind : {GramBasis::matern_plus, GramBasis::matern_minus}) {
      basis.kind = kind;
      const Eigen::MatrixXd G = gram_matrix(basis, kind == GramBasis::matern_plus ? rule : reflect(rule));
      double dev = 0;
      for (int i = 0; i <= 12; ++i) {
        for (int j = 0; j <= 12; ++j) {
          const double expect = i == j ? matern_psi_norm_sq(order, i) : 0.0;
          dev = std::max(dev, std::abs(G(i, j) - expect));
        }
      }
      out.push_back(make_deviation_report(
          bracket(kind == GramBasis::matern_plus ? "matern.gram_plus" : "matern.gram_minus", p), dev, kQuadratureTol,
          {{"nodes", double(rule.size())}, {"max_index", 12}}));
    }

    // Uniform bound over all three classes.
    double worst = 0;
    for (int m = 0; m <= 30; ++m) {
      for (double t : tgrid) {
        worst = std::max(worst, std::abs(matern_psi(order, {MaternClass::plus, m}, t)));
        worst = std::max(worst, std::abs(matern_psi(order, {MaternClass::minus, m}, t)));
        if (m <= nu) worst = std::max(worst, std::abs(matern_psi(order, {MaternClass::null, m}, t)));
      }
    }
    const double bound = matern_psi_bound(order);
    out.push_back(make_report(bracket("matern.uniform_bound", p), std::max(worst - bound, 0.0), 0.0, kAlgebraicTol,
                              {{"max_abs", worst}, {"bound", bound}}));

    // Exact weighted-HS error against the power-law bound.
    double worst_ratio = 0;
    double min_ratio = 1;
    for (int n = 1; n <= 64; n *= 2) {
      const double r = matern_exact_hs_error(order, n) / matern_truncation_error_bound(order, n);
      worst_ratio = std::max(worst_ratio, r);
      min_ratio = std::min(min_ratio, r);
    }
    // Ratio in (0, 1]: report the largest, or -1 if any ratio is not positive.
    out.push_back(make_report(bracket("matern.hs_bound", p), min_ratio > 0 ? worst_ratio : -1.0, 0.5, 0.5,
                              {{"min_ratio", min_ratio}, {"max_ratio", worst_ratio}, {"bound_check", 1}}));

    // Feature-map factorisation.
    const MaternTruncation tr16(order, 16);
    double fm = 0;
    for (const auto& s : pairs) {
      const double direct = matern_feature_map(tr16, s.t).dot(matern_feature_map(tr16, s.u));
      fm = std::max(fm, std::abs(direct - truncated_kernel(FeatureMapSpec(MaternFamily{nu}, 1.0, 16), s.t, s.u)));
    }
    out.push_back(make_deviation_report(bracket("matern.feature_map", p), fm, kAlgebraicTol));
  }

  const int n0[] = {1, 4, 16, 64};
  for (auto& r : truncation_sweep(MaternFamily{0}, n0, pairs)) out.push_back(std::move(r));
  const int n2[] = {8, 64, 200};
  for (auto& r : truncation_sweep(MaternFamily{2}, n2, pairs)) out.push_back(std::move(r));
}

// ---- cauchy -----------------------------------------------------------------

void cauchy_suite(Reports& out, const SuiteOptions& opt) {
  const auto grid = default_grid();
  constexpr double s2 = std::numbers::sqrt2;
  for (int m = 0; m <= 12; ++m) {
    const double dev = max_over(grid, [&](double t) {
      const auto z = cauchy_psi_complex(m, t);
      return std::max(std::abs(cauchy_real_basis(CauchyKind::alpha, m, t) - s2 * z.real()),
                      std::abs(cauchy_real_basis(CauchyKind::beta, m, t) - s2 * z.imag()));
    });
    out.push_back(make_deviation_report(bracket("cauchy.real_vs_complex", "m=" + std::to_string(m)), dev, kAlgebraicTol));
  }

  double conj_dev = 0;
  double bound_excess = 0;
  for (int m = -6; m <= 6; ++m) {
    for (double t : grid) {
      const auto z = cauchy_psi_complex(m, t);
      conj_dev = std::max(conj_dev, std::abs(std::conj(z) + cauchy_psi_complex(-m - 1, t)));
      conj_dev = std::max(conj_dev, std::abs(std::conj(z) - cauchy_psi_complex(m, -t)));
      if (m >= 0) {
        const double b = std::pow(std::abs(t), m) / std::pow(t * t + 1, (m + 1) / 2.0) / s2;
        bound_excess = std::max(bound_excess, std::abs(z) - b);
      }
    }
  }
  out.push_back(make_deviation_report("cauchy.conjugate_symmetry", conj_dev, kAlgebraicTol));
  out.push_back(make_report("cauchy.modulus_bound", std::max(bound_excess, 0.0), 0.0, kAlgebraicTol));

  const auto pairs = sample_pairs(20, -3.0, 3.0, opt.seed);
  for (int n : {1, 8, 64}) {
    double dev = 0;
    for (const auto& p : pairs) {
      std::complex<double> full = 0;
      for (int m = -n; m < n; ++m) full += std::conj(cauchy_psi_complex(m, p.t)) * cauchy_psi_complex(m, p.u);
      dev = std::max(dev, std::abs(full.real() - cauchy_truncated(1.0, n, p.t, p.u)));
      dev = std::max(dev, std::abs(full.imag()));
    }
    out.push_back(make_deviation_report(bracket("cauchy.two_expansions", "n=" + std::to_string(n)), dev, kAlgebraicTol));
  }
  for (int n : {1, 10, 50}) {
    double dev = 0;
    for (const auto& p : pairs) {
      std::complex<double> direct = 0;
      for (int m = 0; m < n; ++m) direct += std::conj(cauchy_psi_complex(m, p.t)) * cauchy_psi_complex(m, p.u);
      dev = std::max(dev, std::abs(direct - cauchy_partial_sum_closed_form(n, p.t, p.u)));
    }
    out.push_back(make_deviation_report(bracket("cauchy.partial_sum", "n=" + std::to_string(n)), dev, kAlgebraicTol));
  }
  double lim_dev = 0;
  double ker_dev = 0;
  for (const auto& p : pairs) {
    const auto lim = cauchy_geometric_limit(p.t, p.u);
    lim_dev = std::max(lim_dev, std::abs(cauchy_partial_sum_closed_form(200, p.t, p.u) - lim));
    ker_dev = std::max(ker_dev, std::abs(2 * lim.real() - cauchy_kernel(1.0, p.t, p.u)));
  }
  out.push_back(make_deviation_report("cauchy.partial_sum_limit[n=200]", lim_dev, 1e-10));
  out.push_back(make_deviation_report("cauchy.kernel_from_sums", ker_dev, kAlgebraicTol));

  const int ns[] = {8, 32, 128};
  for (auto& r : truncation_sweep(CauchyFamily{}, ns, pairs)) out.push_back(std::move(r));
}

// ---- gaussian ---------------------------------------------------------------

void gaussian_suite(Reports& out, const SuiteOptions& opt) {
  const int nodes = opt.quad_nodes;
  const auto gh = gauss_hermite_rule<double>(nodes);
  const auto grid = default_grid();

  {
    BasisSet b{GramBasis::hermite_fn, {}};
    for (int m = 0; m <= 15; ++m) b.indices.push_back(m);
    const Eigen::MatrixXd G = gram_matrix(b, gh);
    out.push_back(make_deviation_report("gaussian.hermite_orthonormal",
                                        (G - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff(), kQuadratureTol,
                                        {{"nodes", double(nodes)}}));
  }
  {
    BasisSet b{GramBasis::gaussian_psi, {}};
    for (int m = 0; m <= 12; ++m) b.indices.push_back(m);
    Eigen::MatrixXd G = gram_matrix(b, gh);
    for (int m = 0; m <= 12; ++m) G(m, m) -= 2.0 / std::pow(3.0, m + 1);
    out.push_back(make_deviation_report("gaussian.gram_psi", G.cwiseAbs().maxCoeff(), kQuadratureTol,
                                        {{"nodes", double(nodes)}}));
  }
  for (double alpha : {std::sqrt(2.0 / 3.0), 0.5, 1.5}) {
    BasisSet b{GramBasis::mercer, {}, 0, alpha};
    for (int m = 0; m <= 15; ++m) b.indices.push_back(m);
    const Eigen::MatrixXd G = gram_matrix(b, gh);
    char buf[32];
    std::snprintf(buf, sizeof buf, "alpha=%.4g", alpha);
    out.push_back(make_deviation_report(bracket("gaussian.gram_mercer", buf),
                                        (G - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff(), kQuadratureTol,
                                        {{"nodes", double(nodes)}, {"alpha", alpha}}));
  }

  const MercerParams mp;
  double rel = 0;
  {
    const double a2 = mp.alpha() * mp.alpha();
    const double b4 = std::pow(mp.beta(), 4);
    rel = std::max(std::abs(b4 - (1 + 2 / a2)) / b4, std::abs(mp.delta_sq() - a2 / 2 * (mp.beta() * mp.beta() - 1)) / mp.delta_sq());
  }
  out.push_back(make_deviation_report("gaussian.mercer_parameters", rel, 1e-14));

  double mercer_dev = 0;
  double kappa_dev = 0;
  double mult_dev = 0;
  for (int m = 0; m <= 15; ++m) {
    mercer_dev = std::max(mercer_dev, max_over(grid, [&](double t) {
                            return std::sqrt(mercer_eigenvalue(mp, m)) * mercer_eigenfunction(mp, m, t) - gaussian_psi(m, t);
                          }));
    kappa_dev = std::max(kappa_dev, max_over(grid, [&](double t) { return gaussian_psi_scaled(m, 1.0, t) - gaussian_psi(m, t); }));
  }
  for (int m = 0; m <= 20; ++m) {
    // psi_m via H_m(sqrt2 * x), x = sqrt(2/3) t, against the direct evaluation.
    mult_dev = std::max(mult_dev, max_over(grid, [&](double t) {
                          const double x = std::sqrt(2.0 / 3.0) * t;
                          const double hm = hermite_multiplication(m, std::numbers::sqrt2, x);
                          const double via = std::sqrt(2 * std::numbers::sqrt2 / 3) *
                                             std::exp(-0.5 * (m * std::log(6.0) + std::lgamma(m + 1.0)) - t * t / 3) * hm;
                          const double direct = gaussian_psi(m, t);
                          return (via - direct) / std::max(1.0, std::abs(direct));
                        }));
  }
  out.push_back(make_deviation_report("gaussian.mercer_relation", mercer_dev, kAlgebraicTol));
  out.push_back(make_deviation_report("gaussian.kappa_reduction", kappa_dev, kAlgebraicTol));
  out.push_back(make_deviation_report("gaussian.multiplication_theorem", mult_dev, 1e-10));

  for (double x : {-2.0, 0.0, 1.5}) {
    for (double y : {-1.0, 0.0, 2.5}) {
      auto r = mehler_check(1.0 / 3.0, x, y, 1e-10);
      char buf[48];
      std::snprintf(buf, sizeof buf, "x=%g,y=%g", x, y);
      r.check_name = bracket(r.check_name, buf);
      out.push_back(std::move(r));
    }
  }
  {
    auto r = mehler_check(0.0, 0.7, -1.1, 1e-14);
    r.check_name = bracket(r.check_name, "rho=0");
    out.push_back(std::move(r));
  }
  const auto pairs = sample_pairs(20, -3.0, 3.0, opt.seed);
  double via = 0;
  for (const auto& p : pairs) {
    via = std::max(via, std::abs(gaussian_kernel_via_mehler(p.t, p.u) - gaussian_kernel(GaussianScale{}, p.t, p.u)));
  }
  out.push_back(make_deviation_report("gaussian.kernel_via_mehler", via, 1e-10));

  // Weighted HS error by tensor quadrature in s = alpha t.
  const double alpha = std::sqrt(2.0 / 3.0);
  for (int n = 1; n <= 6; ++n) {
    const GaussianScale unit;
    const double sq = integrate2(gh, gh, [&](double s, double v) {
                        const double t = s / alpha;
                        const double u = v / alpha;
                        const double e = gaussian_kernel(unit, t, u) - gaussian_truncated(unit, n, t, u);
                        return e * e;
                      }) /
                      std::numbers::pi;
    const double closed = gaussian_truncation_error(n);
    out.push_back(make_report(bracket("gaussian.hs_quadrature", "n=" + std::to_string(n)), std::sqrt(sq), closed,
                              1e-6 * closed, {{"nodes", double(nodes)}}));
  }

  std::vector<int> ns;
  for (int n = 1; n <= 8; ++n) ns.push_back(n);
  for (auto& r : truncation_sweep(GaussianFamily{}, ns, pairs)) out.push_back(std::move(r));
}

// ---- oracle -----------------------------------------------------------------

void oracle_suite(Reports& out) {
  const auto grid = linspace(-3.0, 5.0, 21);
  for (int nu = 0; nu <= 3; ++nu) {
    const MaternOrder order(nu);
    double dev[3] = {0, 0, 0};  // plus, null, minus
    for (int idx = -nu - 1 - 9; idx <= 8; ++idx) {
      const auto id = matern_id_from_index(nu, idx);
      const int slot = id.cls == MaternClass::plus ? 0 : (id.cls == MaternClass::null ? 1 : 2);
      for (double t : grid) {
        dev[slot] = std::max(dev[slot], std::abs(convolution_oracle(MaternFamily{nu}, idx, t) - matern_psi(order, id, t)));
      }
    }
    const std::string p = "nu=" + std::to_string(nu);
    out.push_back(make_deviation_report(bracket("oracle.matern_plus", p), dev[0], kQuadratureTol));
    out.push_back(make_deviation_report(bracket("oracle.matern_null", p), dev[1], kQuadratureTol));
    out.push_back(make_deviation_report(bracket("oracle.matern_minus", p), dev[2], kQuadratureTol));
  }
  double neg = 0;
  for (int m = 0; m <= 8; ++m) {
    for (double t : {-0.1, -1.0, -4.0}) neg = std::max(neg, std::abs(convolution_oracle(MaternFamily{2}, m, t)));
  }
  out.push_back(make_deviation_report("oracle.matern_vanishes_for_negative_t", neg, kAlgebraicTol));
  for (int m = 0; m <= 10; ++m) {
    const double dev = max_over(grid, [&](double t) { return convolution_oracle(GaussianFamily{}, m, t) - gaussian_psi(m, t); });
    out.push_back(make_deviation_report(bracket("oracle.gaussian", "m=" + std::to_string(m)), dev, kQuadratureTol));
  }
}

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "identities") return Suite::identities;
  if (name == "matern") return Suite::matern;
  if (name == "cauchy") return Suite::cauchy;
  if (name == "gaussian") return Suite::gaussian;
  if (name == "oracle") return Suite::oracle;
  if (name == "all") return Suite::all;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<VerificationReport> run_suite(Suite suite, const SuiteOptions& options) {
  if (options.quad_nodes < 1 || options.quad_nodes > kMaxQuadratureNodes) {
    throw std::invalid_argument("run_suite: quad_nodes outside [1, " + std::to_string(kMaxQuadratureNodes) + "]");
  }
  Reports out;
  const bool all = suite == Suite::all;
  if (all || suite == Suite::identities) identities_suite(out);
  if (all || suite == Suite::matern) matern_suite(out, options);
  if (all || suite == Suite::cauchy) cauchy_suite(out, options);
  if (all || suite == Suite::gaussian) gaussian_suite(out, options);
  if (all || suite == Suite::oracle) oracle_suite(out);
  if (options.tolerance) {
    for (auto& r : out) {
      if (!r.metadata.contains("bound_check")) retolerance(r, *options.tolerance);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.check_name < b.check_name; });
  return out;
}

}  // namespace rkhs
