#include "rkhs/laguerre_basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rkhs {

LaguerreIdentity parse_laguerre_identity(std::string_view name) {
  if (name == "conjugate_symmetry") return LaguerreIdentity::conjugate_symmetry;
  if (name == "shift") return LaguerreIdentity::shift;
  if (name == "multiplication") return LaguerreIdentity::multiplication;
  if (name == "binomial") return LaguerreIdentity::binomial;
  throw std::invalid_argument("unknown Laguerre identity '" + std::string(name) + "'");
}

std::string_view to_string(LaguerreIdentity which) {
  switch (which) {
    case LaguerreIdentity::conjugate_symmetry: return "conjugate_symmetry";
    case LaguerreIdentity::shift: return "shift";
    case LaguerreIdentity::multiplication: return "multiplication";
    case LaguerreIdentity::binomial: return "binomial";
  }
  return "unknown";
}

namespace {

using cplx = std::complex<double>;

void require_params(LaguerreIdentity which, std::span<const int> params, std::size_t count) {
  if (params.size() != count) {
    throw std::invalid_argument("check_identity(" + std::string(to_string(which)) + "): expected " +
                                std::to_string(count) + " parameters, got " + std::to_string(params.size()));
  }
}

template <class Lhs, class Rhs>
double max_deviation(std::span<const double> grid, Lhs lhs, Rhs rhs) {
  double worst = 0;
  for (double w : grid) worst = std::max(worst, std::abs(lhs(w) - rhs(w)));
  return worst;
}

}  // namespace

VerificationReport check_identity(LaguerreIdentity which, std::span<const int> params,
                                  std::span<const double> omega_grid, double tolerance) {
  if (omega_grid.empty()) throw std::invalid_argument("check_identity: empty omega grid");
  if (!std::all_of(omega_grid.begin(), omega_grid.end(), [](double w) { return std::isfinite(w); })) {
    throw std::invalid_argument("check_identity: omega grid must be finite");
  }

  std::string name = "laguerre." + std::string(to_string(which));
  std::map<std::string, double> meta{{"grid_size", static_cast<double>(omega_grid.size())}};
  double dev = 0;

  switch (which) {
    case LaguerreIdentity::conjugate_symmetry: {
      require_params(which, params, 1);
      const int m = params[0];
      meta["m"] = m;
      dev = max_deviation(
          omega_grid, [m](double w) { return std::conj(laguerre_fn_ft(-m - 1, w)); },
          [m](double w) { return -laguerre_fn_ft(m, w); });
      break;
    }
    case LaguerreIdentity::shift: {
      require_params(which, params, 2);
      const int m = params[0];
      const int k = params[1];
      meta["m"] = m;
      meta["k"] = k;
      dev = max_deviation(
          omega_grid, [m, k](double w) { return laguerre_fn_ft(m + k, w); },
          [m, k](double w) { return detail::cayley_power(w, k) * laguerre_fn_ft(m, w); });
      break;
    }
    case LaguerreIdentity::multiplication: {
      require_params(which, params, 2);
      const int m = params[0];
      const int k = params[1];
      meta["m"] = m;
      meta["k"] = k;
      dev = max_deviation(
          omega_grid, [m, k](double w) { return laguerre_fn_ft(m, w) * laguerre_fn_ft(k, w); },
          [m, k](double w) {
            return (laguerre_fn_ft(m + k, w) - laguerre_fn_ft(m + k + 1, w)) / std::numbers::sqrt2;
          });
      break;
    }
    case LaguerreIdentity::binomial: {
      require_params(which, params, 1);
      const int nu = params[0];
      if (nu < 0) throw std::invalid_argument("check_identity(binomial): nu must be nonnegative");
      meta["nu"] = nu;
      dev = max_deviation(
          omega_grid,
          [nu](double w) {
            const cplx denom = detail::ipow(cplx(1, w), static_cast<unsigned>(nu + 1));
            return std::pow(2.0, nu + 0.5) / denom;
          },
          [nu](double w) {
            cplx s = 0;
            for (int k = 0; k <= nu; ++k) s += binomial(nu, k) * sign_power(k) * laguerre_fn_ft(k, w);
            return s;
          });
      break;
    }
  }
  return make_deviation_report(std::move(name), dev, tolerance, std::move(meta));
}

}  // namespace rkhs
