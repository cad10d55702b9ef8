#include "rkhs/featuremap.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "rkhs/cauchy.hpp"
#include "rkhs/gaussian.hpp"
#include "rkhs/matern.hpp"

namespace rkhs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Reciprocal condition numbers below this are treated as singular.
constexpr double kMinReciprocalCondition = 1e-13;

void require_finite(std::span<const double> xs, const char* who) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": points must be finite");
  }
}

Eigen::VectorXd to_vector(std::span<const double> xs) {
  return Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Solves the symmetric system A x = b. With ridge > 0 the matrix is positive
// definite and Cholesky is used; otherwise the eigen-decomposition doubles as
// a condition estimate.
Eigen::VectorXd solve_symmetric(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, bool regularised,
                                const char* who) {
  if (regularised) {
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() == Eigen::Success) return llt.solve(b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw NumericError(std::string(who) + ": eigen-decomposition failed");
  const auto& ev = es.eigenvalues();
  const double hi = ev.cwiseAbs().maxCoeff();
  const double lo = ev.minCoeff();
  const double cond = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(lo > kMinReciprocalCondition * hi)) {
    throw ConditioningError(std::string(who) + ": system is singular to working precision (condition estimate " +
                                std::to_string(cond) + ")",
                            cond);
  }
  const Eigen::VectorXd y = es.eigenvectors().transpose() * b;
  return es.eigenvectors() * y.cwiseQuotient(ev);
}

void check_training(std::span<const double> train_x, std::span<const double> train_y, double ridge,
                    std::span<const double> test_x, const char* who) {
  if (train_x.size() != train_y.size()) throw std::invalid_argument(std::string(who) + ": train_x and train_y differ in length");
  if (train_x.empty()) throw std::invalid_argument(std::string(who) + ": no training data");
  if (!(ridge >= 0) || !std::isfinite(ridge)) throw std::invalid_argument(std::string(who) + ": ridge must be >= 0");
  require_finite(train_x, who);
  require_finite(train_y, who);
  require_finite(test_x, who);
}

}  // namespace

KernelFamily parse_family(const std::string& name, int nu) {
  if (name == "matern") {
    if (nu < 0) throw std::invalid_argument("matern: nu must be nonnegative");
    return MaternFamily{nu};
  }
  if (name == "cauchy") return CauchyFamily{};
  if (name == "gaussian") return GaussianFamily{};
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string family_name(const KernelFamily& family) {
  return std::visit(overloaded{[](const MaternFamily& m) { return "matern(nu=" + std::to_string(m.nu) + ")"; },
                               [](const CauchyFamily&) { return std::string("cauchy"); },
                               [](const GaussianFamily&) { return std::string("gaussian"); }},
                    family);
}

double kernel_value(const KernelFamily& family, double lambda, double t, double u) {
  return std::visit(
      overloaded{[&](const MaternFamily& m) { return matern_kernel(MaternOrder(m.nu, lambda), t, u); },
                 [&](const CauchyFamily&) { return cauchy_kernel(lambda, t, u); },
                 [&](const GaussianFamily&) { return gaussian_kernel(GaussianScale(lambda), t, u); }},
      family);
}

FeatureMapSpec::FeatureMapSpec(KernelFamily f, double l, int terms) : family(f), lambda(l), n(terms) {
  if (!(l > 0) || !std::isfinite(l)) throw std::invalid_argument("FeatureMapSpec: lambda must be positive");
  if (terms < 1) throw std::invalid_argument("FeatureMapSpec: n must be positive");
  if (const auto* m = std::get_if<MaternFamily>(&family); m && m->nu < 0) {
    throw std::invalid_argument("FeatureMapSpec: nu must be nonnegative");
  }
}

int FeatureMapSpec::dim() const {
  return std::visit(overloaded{[&](const MaternFamily& m) { return m.nu + 1 + 2 * n; },
                               [&](const CauchyFamily&) { return 2 * n; },
                               [&](const GaussianFamily&) { return n; }},
                    family);
}

std::vector<std::string> FeatureMapSpec::labels() const {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(dim()));
  std::visit(overloaded{[&](const MaternFamily& m) {
                          for (int k = 0; k <= m.nu; ++k) out.push_back("null_" + std::to_string(k));
                          for (int k = 0; k < n; ++k) out.push_back("minus_" + std::to_string(k));
                          for (int k = 0; k < n; ++k) out.push_back("plus_" + std::to_string(k));
                        },
                        [&](const CauchyFamily&) {
                          for (int k = 0; k < n; ++k) out.push_back("alpha_" + std::to_string(k));
                          for (int k = 0; k < n; ++k) out.push_back("beta_" + std::to_string(k));
                        },
                        [&](const GaussianFamily&) {
                          for (int k = 0; k < n; ++k) out.push_back("psi_" + std::to_string(k));
                        }},
             family);
  return out;
}

Eigen::MatrixXd features(const FeatureMapSpec& spec, std::span<const double> points) {
  require_finite(points, "features");
  Eigen::MatrixXd F(static_cast<Eigen::Index>(points.size()), spec.dim());
  std::visit(overloaded{[&](const MaternFamily& m) {
                          const MaternTruncation tr(MaternOrder(m.nu, spec.lambda), spec.n);
                          for (std::size_t i = 0; i < points.size(); ++i) {
                            F.row(static_cast<Eigen::Index>(i)) = matern_feature_map(tr, points[i]).transpose();
                          }
                        },
                        [&](const CauchyFamily&) {
                          for (std::size_t i = 0; i < points.size(); ++i) {
                            F.row(static_cast<Eigen::Index>(i)) =
                                cauchy_feature_map(spec.lambda, spec.n, points[i]).transpose();
                          }
                        },
                        [&](const GaussianFamily&) {
                          const GaussianScale scale(spec.lambda);
                          for (std::size_t i = 0; i < points.size(); ++i) {
                            F.row(static_cast<Eigen::Index>(i)) = gaussian_feature_map(scale, spec.n, points[i]).transpose();
                          }
                        }},
             spec.family);
  return F;
}

double truncated_kernel(const FeatureMapSpec& spec, double t, double u) {
  const double pts[2] = {t, u};
  const Eigen::MatrixXd F = features(spec, pts);
  return F.row(0).dot(F.row(1));
}

std::vector<double> krr_fit_predict(const FeatureMapSpec& spec, std::span<const double> train_x,
                                    std::span<const double> train_y, double ridge, std::span<const double> test_x) {
  check_training(train_x, train_y, ridge, test_x, "krr_fit_predict");
  const Eigen::MatrixXd F = features(spec, train_x);
  const Eigen::VectorXd y = to_vector(train_y);
  Eigen::VectorXd c;
  if (ridge == 0 && F.rows() <= F.cols()) {
    // Unregularised with at least as many features as points: the
    // minimum-norm interpolant c = F^T (F F^T)^{-1} y.
    const Eigen::MatrixXd G = F * F.transpose();
    c = F.transpose() * solve_symmetric(G, y, false, "krr_fit_predict");
  } else {
    Eigen::MatrixXd A = F.transpose() * F;
    A.diagonal().array() += ridge;
    c = solve_symmetric(A, F.transpose() * y, ridge > 0, "krr_fit_predict");
  }
  return to_std(features(spec, test_x) * c);
}

std::vector<double> full_krr_predict(const KernelFamily& family, double lambda, std::span<const double> train_x,
                                     std::span<const double> train_y, double ridge, std::span<const double> test_x) {
  check_training(train_x, train_y, ridge, test_x, "full_krr_predict");
  const auto N = static_cast<Eigen::Index>(train_x.size());
  Eigen::MatrixXd K(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) K(i, j) = kernel_value(family, lambda, train_x[i], train_x[j]);
  }
  K.diagonal().array() += ridge;
  const Eigen::VectorXd a = solve_symmetric(K, to_vector(train_y), ridge > 0, "full_krr_predict");
  std::vector<double> out(test_x.size());
  for (std::size_t k = 0; k < test_x.size(); ++k) {
    double s = 0;
    for (Eigen::Index j = 0; j < N; ++j) s += kernel_value(family, lambda, test_x[k], train_x[j]) * a(j);
    out[k] = s;
  }
  return out;
}

}  // namespace rkhs
