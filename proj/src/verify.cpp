#include "rkhs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <variant>

#include "rkhs/cauchy.hpp"
#include "rkhs/gaussian.hpp"
#include "rkhs/orthopoly.hpp"

namespace rkhs {

std::vector<double> uniform_samples(int count, double lo, double hi, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("uniform_samples: negative count");
  if (!(lo < hi)) throw std::invalid_argument("uniform_samples: need lo < hi");
  // Explicit 53-bit conversion: std::uniform_real_distribution is not
  // specified bit-for-bit across standard libraries.
  std::mt19937_64 gen(seed);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& x : out) {
    const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    x = lo + (hi - lo) * unit;
  }
  return out;
}

std::vector<SamplePair> sample_pairs(int count, double lo, double hi, std::uint64_t seed) {
  const auto xs = uniform_samples(2 * count, lo, hi, seed);
  std::vector<SamplePair> out(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {xs[2 * i], xs[2 * i + 1]};
  return out;
}

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw std::invalid_argument("linspace: count must be positive");
  if (count == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
  out.back() = stop;
  return out;
}

std::vector<double> default_grid() { return linspace(-5.0, 5.0, 21); }

MaternBasisId matern_id_from_index(int nu, int m) {
  if (nu < 0) throw std::invalid_argument("matern_id_from_index: nu must be nonnegative");
  if (m >= 0) return {MaternClass::plus, m};
  if (m >= -nu - 1) return {MaternClass::null, m + nu + 1};
  return {MaternClass::minus, -m - nu - 2};
}

namespace {

// ---- convolution oracle ---------------------------------------------------
// Written against the definitions only: h, the Laguerre and Hermite
// polynomials from orthopoly, and textbook quadrature.

constexpr int kPanelNodes = 16;
constexpr int kMaxPanels = 64;

double panel_integral(const QuadratureRule<double>& unit, double a, double b, int panels,
                      const std::function<double(double)>& f) {
  const double width = (b - a) / panels;
  double s = 0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    for (std::size_t i = 0; i < unit.size(); ++i) {
      // unit rule lives on [-1, 1]
      const double x = lo + (unit.nodes[i] + 1.0) * width / 2;
      s += unit.weights[i] * width / 2 * f(x);
    }
  }
  return s;
}

double matern_oracle(int nu, int m, double t) {
  // h(s) = 2^{nu+1/2} nu!/sqrt((2nu)!) s^nu/nu! e^{-s} on s >= 0
  const double log_c = (nu + 0.5) * std::log(2.0) - 0.5 * std::lgamma(2.0 * nu + 1.0);
  const double c = std::exp(log_c);

  if (m >= 0) {
    if (t <= 0) return 0.0;
    // C sqrt2 e^{-t} int_0^t (t - tau)^nu L_m(2 tau) dtau
    static const auto unit = gauss_legendre_rule<double>(kPanelNodes, -1.0, 1.0);
    const std::function<double(double)> f = [&](double tau) {
      return std::pow(t - tau, nu) * laguerre(m, 2.0 * tau);
    };
    const std::function<double(double)> abs_f = [&](double tau) { return std::abs(f(tau)); };
    double prev = panel_integral(unit, 0.0, t, 1, f);
    for (int panels = 2; panels <= kMaxPanels; panels *= 2) {
      const double cur = panel_integral(unit, 0.0, t, panels, f);
      const double scale = panel_integral(unit, 0.0, t, panels, abs_f);
      if (std::abs(cur - prev) <= 1e-14 * std::max(1.0, scale)) {
        return c * std::numbers::sqrt2 * std::exp(-t) * cur;
      }
      prev = cur;
    }
    throw NumericError("convolution_oracle: panel refinement did not converge (nu=" + std::to_string(nu) +
                       ", m=" + std::to_string(m) + ", t=" + std::to_string(t) + ")");
  }

  // phi_m(tau) = -sqrt2 L_k(-2 tau) e^{tau} on tau < 0, k = -m-1. With
  // tau = tau0 - x/2, tau0 = min(t, 0):
  //   -C sqrt2 e^{2 tau0 - t} / 2 int_0^inf (t - tau0 + x/2)^nu L_k(x - 2 tau0) e^{-x} dx
  const int k = -m - 1;
  const double tau0 = std::min(t, 0.0);
  auto f = [&](double x) { return std::pow(t - tau0 + x / 2, nu) * laguerre(k, x - 2.0 * tau0); };
  static const auto coarse = gauss_laguerre_rule<double>(32, 0.0);
  static const auto fine = gauss_laguerre_rule<double>(64, 0.0);
  const double a = integrate(coarse, f);
  const double b = integrate(fine, f);
  // Agreement is judged against int |f|, the scale of the cancellation.
  const double scale = integrate(fine, [&](double x) { return std::abs(f(x)); });
  if (std::abs(a - b) > 1e-12 * std::max(1.0, scale)) {
    throw NumericError("convolution_oracle: Gauss-Laguerre estimates disagree (nu=" + std::to_string(nu) +
                       ", m=" + std::to_string(m) + ", t=" + std::to_string(t) + ", diff=" +
                       std::to_string(std::abs(a - b)) + ")");
  }
  return -c * std::numbers::sqrt2 * std::exp(2.0 * tau0 - t) / 2.0 * b;
}

double gaussian_oracle(int m, double t) {
  if (m < 0) throw std::invalid_argument("convolution_oracle: gaussian index must be nonnegative");
  // h(s) = 2^{1/4} pi^{-1/4} e^{-s^2}, phi_m(tau) = pi^{-1/4} (2^m m!)^{-1/2} e^{-tau^2/2} H_m(tau).
  // Completing the square: tau = 2t/3 + s sqrt(2/3) leaves e^{-s^2}.
  const double log_norm = 0.25 * std::log(2.0) - 0.5 * std::log(std::numbers::pi) -
                          0.5 * (m * std::log(2.0) + std::lgamma(m + 1.0));
  const double r = std::sqrt(2.0 / 3.0);
  auto f = [&](double s) { return hermite(m, 2.0 * t / 3.0 + s * r); };
  static const auto coarse = gauss_hermite_rule<double>(48);
  static const auto fine = gauss_hermite_rule<double>(96);
  const double a = integrate(coarse, f);
  const double b = integrate(fine, f);
  const double scale = integrate(fine, [&](double s) { return std::abs(f(s)); });
  if (std::abs(a - b) > 1e-12 * std::max(1.0, scale)) {
    throw NumericError("convolution_oracle: Gauss-Hermite estimates disagree (m=" + std::to_string(m) + ")");
  }
  return std::exp(log_norm - t * t / 3.0) * r * b;
}

// ---- gram matrices --------------------------------------------------------

void require_rule(const QuadratureRule<double>& rule, Domain domain, BaseWeight::Kind kind, const char* what) {
  if (rule.domain != domain || rule.base_weight.kind != kind) {
    throw std::invalid_argument(std::string("gram_matrix: domain mismatch, ") + what);
  }
}

}  // namespace

double convolution_oracle(const KernelFamily& family, int m, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("convolution_oracle: t must be finite");
  if (const auto* mf = std::get_if<MaternFamily>(&family)) {
    if (mf->nu < 0) throw std::invalid_argument("convolution_oracle: nu must be nonnegative");
    return matern_oracle(mf->nu, m, t);
  }
  if (std::holds_alternative<GaussianFamily>(family)) return gaussian_oracle(m, t);
  throw std::invalid_argument("convolution_oracle: no convolution representation for the Cauchy family");
}

Eigen::MatrixXd gram_matrix(const BasisSet& basis, const QuadratureRule<double>& rule) {
  const auto count = static_cast<Eigen::Index>(basis.indices.size());
  if (count == 0) throw std::invalid_argument("gram_matrix: empty basis");

  // values(i, k): basis function i at node k, already multiplied by the
  // square root of (weight * jacobian / base weight).
  Eigen::MatrixXd values(count, static_cast<Eigen::Index>(rule.size()));

  switch (basis.kind) {
    case GramBasis::matern_plus:
    case GramBasis::matern_minus: {
      const bool plus = basis.kind == GramBasis::matern_plus;
      require_rule(rule, plus ? Domain::positive_half_line : Domain::negative_half_line,
                   BaseWeight::Kind::gauss_laguerre, "Matern bases need a (reflected) Gauss-Laguerre rule");
      const MaternOrder order(basis.nu);
      const double eta = rule.base_weight.eta;
      for (std::size_t k = 0; k < rule.size(); ++k) {
        // s = 2|t|: w_nu(t) dt = 2/s^{nu+1} ds/2 = s^{-nu-1} ds; divide by the
        // base weight s^eta e^{-s}.
        const double s = std::abs(rule.nodes[k]);
        const double t = rule.nodes[k] / 2;
        const double factor = std::exp(0.5 * (s - (basis.nu + 1 + eta) * std::log(s)));
        for (Eigen::Index i = 0; i < count; ++i) {
          const MaternBasisId id{plus ? MaternClass::plus : MaternClass::minus, basis.indices[static_cast<std::size_t>(i)]};
          values(i, static_cast<Eigen::Index>(k)) = matern_psi(order, id, t) * factor;
        }
      }
      break;
    }
    case GramBasis::gaussian_psi:
    case GramBasis::mercer: {
      require_rule(rule, Domain::real_line, BaseWeight::Kind::gauss_hermite, "w_alpha needs a Gauss-Hermite rule");
      if (!(basis.alpha > 0)) throw std::invalid_argument("gram_matrix: alpha must be positive");
      // s = alpha t: w_alpha(t) dt = e^{-s^2} ds / sqrt(pi).
      const MercerParams params(basis.alpha);
      const double factor = std::pow(std::numbers::pi, -0.25);
      for (std::size_t k = 0; k < rule.size(); ++k) {
        const double t = rule.nodes[k] / basis.alpha;
        for (Eigen::Index i = 0; i < count; ++i) {
          const int m = basis.indices[static_cast<std::size_t>(i)];
          const double v = basis.kind == GramBasis::gaussian_psi ? gaussian_psi(m, t) : mercer_eigenfunction(params, m, t);
          values(i, static_cast<Eigen::Index>(k)) = v * factor;
        }
      }
      break;
    }
    case GramBasis::hermite_fn: {
      require_rule(rule, Domain::real_line, BaseWeight::Kind::gauss_hermite, "Hermite functions need a Gauss-Hermite rule");
      for (std::size_t k = 0; k < rule.size(); ++k) {
        const double s = rule.nodes[k];
        for (Eigen::Index i = 0; i < count; ++i) {
          values(i, static_cast<Eigen::Index>(k)) = hermite_fn(basis.indices[static_cast<std::size_t>(i)], s) * std::exp(s * s / 2);
        }
      }
      break;
    }
  }

  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.size()));
  if (!values.allFinite()) throw NumericError("gram_matrix: non-finite basis value at a quadrature node");
  return values * w.asDiagonal() * values.transpose();
}

// ---- truncation sweeps ----------------------------------------------------

namespace {

std::string sweep_name(const std::string& family, const char* what, int n) {
  return family + ".sweep." + what + "[n=" + std::to_string(n) + "]";
}

void require_sweep_args(std::span<const int> n_list, std::span<const SamplePair> pairs) {
  if (n_list.empty()) throw std::invalid_argument("truncation_sweep: empty n list");
  if (pairs.empty()) throw std::invalid_argument("truncation_sweep: no sample pairs");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw std::invalid_argument("truncation_sweep: n must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw std::invalid_argument("truncation_sweep: n list must increase");
  }
}

}  // namespace

std::vector<VerificationReport> truncation_sweep(const KernelFamily& family, std::span<const int> n_list,
                                                 std::span<const SamplePair> pairs) {
  require_sweep_args(n_list, pairs);
  std::vector<VerificationReport> out;
  const std::string fam = std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, MaternFamily>) return "matern[nu=" + std::to_string(f.nu) + "]";
        else if constexpr (std::is_same_v<F, CauchyFamily>) return "cauchy";
        else return "gaussian";
      },
      family);
  const double meta_pairs = static_cast<double>(pairs.size());

  for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
    const int n = n_list[idx];
    const FeatureMapSpec spec(family, 1.0, n);
    double worst = 0;
    double bound = 0;
    for (const auto& p : pairs) {
      const double exact = kernel_value(family, 1.0, p.t, p.u);
      const double err = std::abs(exact - truncated_kernel(spec, p.t, p.u));
      worst = std::max(worst, err);
      double b = 0;
      if (const auto* m = std::get_if<MaternFamily>(&family)) {
        // The residual is itself a positive semi-definite kernel, so
        // Cauchy-Schwarz bounds it by its diagonal.
        (void)m;
        const double et = kernel_value(family, 1.0, p.t, p.t) - truncated_kernel(spec, p.t, p.t);
        const double eu = kernel_value(family, 1.0, p.u, p.u) - truncated_kernel(spec, p.u, p.u);
        b = std::sqrt(std::max(et, 0.0) * std::max(eu, 0.0)) + 1e-13;
      } else if (std::holds_alternative<CauchyFamily>(family)) {
        // 2 |a| |q|^n / (1 - |q|) for the geometric tail.
        const auto [q, a] = cauchy_geometric_terms(p.t, p.u);
        b = 2 * std::abs(a) * std::pow(std::abs(q), n) / (1 - std::abs(q)) + 1e-13;
      } else {
        // |psi_m(t)| <= (2 sqrt2/3)^{1/2} 3^{-m/2} 1.0866 e^{t^2/3} by Cramer's inequality.
        b = 2 * std::numbers::sqrt2 / 3 * 1.0866 * 1.0866 * std::exp((p.t * p.t + p.u * p.u) / 3) *
                std::pow(3.0, -n) * 1.5 +
            1e-13;
      }
      bound = std::max(bound, b);
    }
    out.push_back(make_report(sweep_name(fam, "pointwise", n), worst, 0.0, bound, {{"n", double(n)}, {"pairs", meta_pairs}, {"bound_check", 1}}));

    if (const auto* m = std::get_if<MaternFamily>(&family)) {
      const MaternOrder order(m->nu);
      const double exact = matern_exact_hs_error(order, n);
      const double b = matern_truncation_error_bound(order, n);
      // Ratio in (0, 1] <=> |ratio - 1/2| <= 1/2 with a positive ratio.
      const double ratio = exact > 0 ? exact / b : -1.0;
      out.push_back(make_report(sweep_name(fam, "hs_ratio", n), ratio, 0.5, 0.5,
                                {{"n", double(n)}, {"hs_error", exact}, {"bound", b}, {"bound_check", 1}}));
    } else if (std::holds_alternative<GaussianFamily>(family)) {
      // sqrt(sum_{m >= n} (2/3^{m+1})^2), summed until the terms vanish.
      double tail = 0;
      for (int k = n; k < n + 400; ++k) tail += std::pow(2.0 / std::pow(3.0, k + 1), 2);
      const double closed = gaussian_truncation_error(n);
      const double summed = std::sqrt(tail);
      out.push_back(make_report(sweep_name(fam, "hs", n), closed, summed, 1e-14 * summed, {{"n", double(n)}}));
      if (idx > 0) {
        const int prev = n_list[idx - 1];
        const double ratio = closed / gaussian_truncation_error(prev);
        const double expect = std::pow(3.0, -(n - prev));
        out.push_back(make_report(sweep_name(fam, "hs_step", n), ratio, expect, 1e-14 * expect,
                                  {{"n", double(n)}, {"previous_n", double(prev)}}));
      }
    }
  }
  return out;
}

}  // namespace rkhs
