#pragma once

// Finite feature maps for the three kernel families and a reduced-rank
// kernel ridge regression built on them.
//
// Feature layout (column order of features()):
//   matern(nu)  [psi0_0 .. psi0_nu, psi-_0 .. psi-_{n-1}, psi+_0 .. psi+_{n-1}]   nu+1+2n
//   cauchy      [alpha_0 .. alpha_{n-1}, beta_0 .. beta_{n-1}]                    2n
//   gaussian    [psi_0 .. psi_{n-1}]                                              n

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace rkhs {

struct MaternFamily {
  int nu = 0;
};
struct CauchyFamily {};
struct GaussianFamily {};

using KernelFamily = std::variant<MaternFamily, CauchyFamily, GaussianFamily>;

/// "matern", "cauchy" or "gaussian"; nu is used for matern only.
KernelFamily parse_family(const std::string& name, int nu = 0);
std::string family_name(const KernelFamily& family);

/// Closed-form kernel value r(lambda t, lambda u).
double kernel_value(const KernelFamily& family, double lambda, double t, double u);

struct FeatureMapSpec {
  KernelFamily family = GaussianFamily{};
  double lambda = 1.0;
  int n = 1;

  FeatureMapSpec() = default;
  FeatureMapSpec(KernelFamily f, double l, int terms);

  int dim() const;
  /// Column labels in layout order, e.g. "plus_3" or "beta_0".
  std::vector<std::string> labels() const;
};

/// Row i is the feature vector of points[i].
Eigen::MatrixXd features(const FeatureMapSpec& spec, std::span<const double> points);

/// Truncated kernel r_n(lambda t, lambda u) as a feature inner product.
double truncated_kernel(const FeatureMapSpec& spec, double t, double u);

/// Solves (F^T F + ridge I) c = F^T y and returns F_test c. With ridge = 0 a
/// rank-deficient system raises ConditioningError.
std::vector<double> krr_fit_predict(const FeatureMapSpec& spec, std::span<const double> train_x,
                                    std::span<const double> train_y, double ridge, std::span<const double> test_x);

/// Full-kernel ridge regression k(x*, X) (K + ridge I)^{-1} y with the
/// closed-form kernel; the dense reference for krr_fit_predict.
std::vector<double> full_krr_predict(const KernelFamily& family, double lambda, std::span<const double> train_x,
                                     std::span<const double> train_y, double ridge, std::span<const double> test_x);

}  // namespace rkhs
