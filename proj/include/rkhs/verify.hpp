#pragma once

// Verification harness: an independent convolution oracle for the basis
// functions, weighted Gram matrices, truncation-error sweeps and the named
// check suites exposed by the command-line tool.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rkhs/featuremap.hpp"
#include "rkhs/matern.hpp"
#include "rkhs/quadrature.hpp"
#include "rkhs/report.hpp"

namespace rkhs {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct SamplePair {
  double t = 0;
  double u = 0;
};

/// count values uniform in [lo, hi) from a 64-bit Mersenne twister.
std::vector<double> uniform_samples(int count, double lo, double hi, std::uint64_t seed = kDefaultSeed);

/// count pairs uniform in [lo, hi)^2.
std::vector<SamplePair> sample_pairs(int count, double lo, double hi, std::uint64_t seed = kDefaultSeed);

/// count equally spaced points from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int count);

/// -5, -4.5, ..., 5.
std::vector<double> default_grid();

/// Which Matern basis function psi_{m,nu} is for an arbitrary integer m:
/// m >= 0 is plus_m, -nu-1 <= m < 0 is null_{m+nu+1}, m <= -nu-2 is
/// minus_{-m-nu-2}.
MaternBasisId matern_id_from_index(int nu, int m);

/// The convolution int h(t - tau) phi_m(tau) dtau with the spectral square
/// root h of the family (unit scale). Matern accepts any integer m and uses
/// Gauss-Legendre panels (m >= 0) or Gauss-Laguerre (m < 0); Gaussian needs
/// m >= 0 and uses Gauss-Hermite. Cauchy has no such representation here.
/// Raises NumericError if the quadrature does not settle.
double convolution_oracle(const KernelFamily& family, int m, double t);

enum class GramBasis { matern_plus, matern_minus, gaussian_psi, mercer, hermite_fn };

/// A list of basis functions with the weight they are orthogonal under:
///   matern_plus/minus  w_nu(t) = 2/|2t|^{nu+1} on R+ / R-; needs a
///                      Gauss-Laguerre rule (reflected for minus), variable s = 2|t|
///   gaussian_psi/mercer w_alpha on R; Gauss-Hermite rule, variable s = alpha t
///   hermite_fn         unit weight on R; Gauss-Hermite rule, s = t
struct BasisSet {
  GramBasis kind = GramBasis::hermite_fn;
  std::vector<int> indices;
  int nu = 0;
  double alpha = 0.816496580927726;  // sqrt(2/3)
};

/// Pairwise weighted inner products. A rule whose domain or base weight does
/// not fit the basis raises invalid_argument.
Eigen::MatrixXd gram_matrix(const BasisSet& basis, const QuadratureRule<double>& rule);

/// For each n: the largest pointwise error over the pairs against a
/// pointwise bound, and for Matern and Gaussian the weighted-HS error
/// (Matern: exact/bound ratio must lie in (0, 1]; Gaussian: closed form
/// against the summed eigenvalue tail, and the ratio between successive n).
std::vector<VerificationReport> truncation_sweep(const KernelFamily& family, std::span<const int> n_list,
                                                 std::span<const SamplePair> pairs);

enum class Suite { identities, matern, cauchy, gaussian, oracle, all };

/// Accepts identities, matern, cauchy, gaussian, oracle, all.
Suite parse_suite(const std::string& name);

struct SuiteOptions {
  // Replaces the tolerance of every check except those whose acceptance
  // window is an analytic bound (metadata "bound_check").
  std::optional<double> tolerance;
  int quad_nodes = 128;
  std::uint64_t seed = kDefaultSeed;
};

/// Runs a suite and returns its reports sorted by check name.
std::vector<VerificationReport> run_suite(Suite suite, const SuiteOptions& options = {});

}  // namespace rkhs
