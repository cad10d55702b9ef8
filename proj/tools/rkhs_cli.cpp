// rkhs: evaluate kernels and their orthonormal bases, run verification
// suites, and demonstrate reduced-rank kernel ridge regression.
//
// Exit codes: 0 success, 1 failed check or numerical error, 2 usage error.

#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rkhs/cauchy.hpp"
#include "rkhs/core.hpp"
#include "rkhs/featuremap.hpp"
#include "rkhs/gaussian.hpp"
#include "rkhs/matern.hpp"
#include "rkhs/report.hpp"
#include "rkhs/verify.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- output -----------------------------------------------------------------

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  void add(std::string name, std::vector<double> values) {
    if (!columns.empty() && values.size() != columns.front().size()) {
      throw std::logic_error("Table: column '" + name + "' has the wrong length");
    }
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
  }
};

void write_table(const Table& table, const std::string& format, std::ostream& os) {
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
  if (format == "csv") {
    for (std::size_t c = 0; c < table.names.size(); ++c) os << (c ? "," : "") << table.names[c];
    os << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << format_number(table.columns[c][r]);
      os << '\n';
    }
  } else {
    for (std::size_t r = 0; r < rows; ++r) {
      nlohmann::ordered_json j;
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        const double v = table.columns[c][r];
        if (std::isfinite(v)) j[table.names[c]] = v;
        else j[table.names[c]] = format_number(v);
      }
      os << j.dump() << '\n';
    }
  }
}

template <class F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open output file '" + path + "'");
  write(os);
}

// ---- argument parsing helpers -----------------------------------------------

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--grid expects start:stop:count, got '" + spec + "'");
  double start = 0, stop = 0;
  long count = 0;
  try {
    std::size_t used = 0;
    start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("");
    stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("");
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw UsageError("--grid expects start:stop:count, got '" + spec + "'");
  }
  if (!std::isfinite(start) || !std::isfinite(stop) || count < 1 || count > 10'000'000) {
    throw UsageError("--grid needs finite ends and 1 <= count <= 1e7");
  }
  return rkhs::linspace(start, stop, static_cast<int>(count));
}

std::vector<int> parse_range(const std::string& spec) {
  auto to_int = [&](const std::string& s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw UsageError("--m expects a or a..b, got '" + spec + "'");
    return v;
  };
  const auto dots = spec.find("..");
  int lo = 0, hi = 0;
  if (dots == std::string::npos) {
    lo = hi = to_int(spec);
  } else {
    lo = to_int(spec.substr(0, dots));
    hi = to_int(spec.substr(dots + 2));
  }
  if (hi < lo) throw UsageError("--m range is empty: '" + spec + "'");
  std::vector<int> out;
  for (int m = lo; m <= hi; ++m) out.push_back(m);
  return out;
}

// ---- eval ---------------------------------------------------------------------

struct EvalArgs {
  std::string family;
  int nu = 0;
  double lambda = 1.0;
  std::string what = "kernel";
  std::string cls;
  std::string m = "0";
  int n = 8;
  std::string grid = "-5:5:101";
  double u = 0.0;
  std::string out;
  std::string format = "csv";
};

Table eval_basis(const EvalArgs& a, const std::vector<double>& ts) {
  Table table;
  table.add("t", ts);
  const auto ms = parse_range(a.m);
  if (a.family == "matern") {
    const rkhs::MaternOrder order(a.nu, a.lambda);
    const std::string cls = a.cls.empty() ? "plus" : a.cls;
    rkhs::MaternClass c;
    if (cls == "plus") c = rkhs::MaternClass::plus;
    else if (cls == "minus") c = rkhs::MaternClass::minus;
    else if (cls == "null") c = rkhs::MaternClass::null;
    else throw UsageError("--class for matern must be plus, minus or null");
    for (int m : ms) {
      std::vector<double> v;
      for (double t : ts) v.push_back(rkhs::matern_psi(order, {c, m}, t));
      table.add(cls + "_" + std::to_string(m), std::move(v));
    }
  } else if (a.family == "cauchy") {
    const std::string cls = a.cls.empty() ? "alpha" : a.cls;
    for (int m : ms) {
      if (cls == "complex") {
        std::vector<double> re, im;
        for (double t : ts) {
          const auto z = rkhs::cauchy_psi_complex(m, a.lambda * t);
          re.push_back(z.real());
          im.push_back(z.imag());
        }
        table.add("re_psi_" + std::to_string(m), std::move(re));
        table.add("im_psi_" + std::to_string(m), std::move(im));
      } else if (cls == "alpha" || cls == "beta") {
        const auto kind = cls == "alpha" ? rkhs::CauchyKind::alpha : rkhs::CauchyKind::beta;
        std::vector<double> v;
        for (double t : ts) v.push_back(rkhs::cauchy_real_basis(kind, m, a.lambda * t));
        table.add(cls + "_" + std::to_string(m), std::move(v));
      } else {
        throw UsageError("--class for cauchy must be complex, alpha or beta");
      }
    }
  } else {
    const std::string cls = a.cls.empty() ? "psi" : a.cls;
    const rkhs::GaussianScale scale(a.lambda);
    const rkhs::MercerParams mercer;
    for (int m : ms) {
      std::vector<double> v;
      for (double t : ts) {
        if (cls == "psi") v.push_back(rkhs::gaussian_psi(scale, m, t));
        else if (cls == "hermite") v.push_back(rkhs::hermite_fn(m, a.lambda * t));
        else if (cls == "mercer") v.push_back(rkhs::mercer_eigenfunction(mercer, m, a.lambda * t));
        else throw UsageError("--class for gaussian must be psi, hermite or mercer");
      }
      table.add(cls + "_" + std::to_string(m), std::move(v));
    }
  }
  return table;
}

int run_eval(const EvalArgs& a) {
  if (a.format != "csv" && a.format != "jsonl") throw UsageError("--format must be csv or jsonl");
  const auto ts = parse_grid(a.grid);
  const auto family = rkhs::parse_family(a.family, a.nu);
  Table table;
  if (a.what == "kernel") {
    std::vector<double> r;
    for (double t : ts) r.push_back(rkhs::kernel_value(family, a.lambda, t, a.u));
    table.add("t", ts);
    table.add("u", std::vector<double>(ts.size(), a.u));
    table.add("kernel", std::move(r));
  } else if (a.what == "truncated") {
    const rkhs::FeatureMapSpec spec(family, a.lambda, a.n);
    std::vector<double> rn, r;
    for (double t : ts) {
      rn.push_back(rkhs::truncated_kernel(spec, t, a.u));
      r.push_back(rkhs::kernel_value(family, a.lambda, t, a.u));
    }
    table.add("t", ts);
    table.add("u", std::vector<double>(ts.size(), a.u));
    table.add("truncated", std::move(rn));
    table.add("kernel", std::move(r));
  } else if (a.what == "basis") {
    table = eval_basis(a, ts);
  } else {
    throw UsageError("--what must be kernel, basis or truncated");
  }
  with_output(a.out, [&](std::ostream& os) { write_table(table, a.format, os); });
  return 0;
}

// ---- verify -------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::optional<double> tol;
  std::string report;
  int quad_nodes = 128;
  std::uint64_t seed = rkhs::kDefaultSeed;
};

int run_verify(const VerifyArgs& a) {
  rkhs::Suite suite;
  try {
    suite = rkhs::parse_suite(a.suite);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  rkhs::SuiteOptions opt;
  opt.tolerance = a.tol;
  opt.quad_nodes = a.quad_nodes;
  opt.seed = a.seed;
  const auto reports = rkhs::run_suite(suite, opt);

  if (!a.report.empty()) {
    with_output(a.report, [&](std::ostream& os) {
      for (const auto& r : reports) os << rkhs::to_json_line(r) << '\n';
    });
  }
  int failed = 0;
  for (const auto& r : reports) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.check_name << " abs_error=" << format_number(r.abs_error)
              << " tol=" << format_number(r.tolerance) << '\n';
    if (!r.passed) {
      ++failed;
      std::cerr << "failed: " << r.check_name << '\n';
    }
  }
  std::cout << reports.size() - static_cast<std::size_t>(failed) << "/" << reports.size() << " checks passed\n";
  return failed == 0 ? 0 : kExitFail;
}

// ---- demo-krr -----------------------------------------------------------------

struct KrrArgs {
  std::string family = "matern";
  int nu = 2;
  double lambda = 1.0;
  int n = 64;
  double ridge = 1e-2;
  std::uint64_t seed = rkhs::kDefaultSeed;
  int train = 40;
  int test = 200;
  double noise = 0.1;
  bool duplicate = false;
  std::string out;
  std::string format = "csv";
};

double target(double x) { return std::sin(2 * x) * std::exp(-x * x / 8); }

// Standard normals by Box-Muller over the same explicit uniform stream.
std::vector<double> normals(int count, std::uint64_t seed) {
  const auto u = rkhs::uniform_samples(2 * count, 0.0, 1.0, seed);
  std::vector<double> z(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double r = std::sqrt(-2 * std::log1p(-u[2 * i]));
    z[i] = r * std::cos(2 * std::numbers::pi * u[2 * i + 1]);
  }
  return z;
}

double rmse(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(a.size()));
}

int run_krr(const KrrArgs& a) {
  if (a.format != "csv" && a.format != "jsonl") throw UsageError("--format must be csv or jsonl");
  if (a.train < 1 || a.test < 1) throw UsageError("--train and --test must be positive");
  if (!(a.noise >= 0)) throw UsageError("--noise must be nonnegative");
  const auto family = rkhs::parse_family(a.family, a.nu);
  const rkhs::FeatureMapSpec spec(family, a.lambda, a.n);

  auto x = rkhs::uniform_samples(a.train, -3.0, 3.0, a.seed);
  if (a.duplicate) x.insert(x.end(), x.begin(), x.end());
  const auto eps = normals(static_cast<int>(x.size()), a.seed + 1);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = target(x[i]) + a.noise * eps[i];
  const auto xt = rkhs::linspace(-3.0, 3.0, a.test);
  std::vector<double> yt(xt.size());
  for (std::size_t i = 0; i < xt.size(); ++i) yt[i] = target(xt[i]);

  const auto fit_train = rkhs::krr_fit_predict(spec, x, y, a.ridge, x);
  const auto fit_test = rkhs::krr_fit_predict(spec, x, y, a.ridge, xt);
  const auto full_train = rkhs::full_krr_predict(family, a.lambda, x, y, a.ridge, x);
  const auto full_test = rkhs::full_krr_predict(family, a.lambda, x, y, a.ridge, xt);
  double gap = 0;
  for (std::size_t i = 0; i < xt.size(); ++i) gap = std::max(gap, std::abs(fit_test[i] - full_test[i]));

  Table t;
  t.add("n", {double(a.n)});
  t.add("dim", {double(spec.dim())});
  t.add("ridge", {a.ridge});
  t.add("train_rmse", {rmse(fit_train, y)});
  t.add("test_rmse", {rmse(fit_test, yt)});
  t.add("full_train_rmse", {rmse(full_train, y)});
  t.add("full_test_rmse", {rmse(full_test, yt)});
  t.add("max_prediction_gap", {gap});
  with_output(a.out, [&](std::ostream& os) { write_table(t, a.format, os); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthonormal RKHS bases for the Matern, Cauchy and Gaussian kernels"};
  app.require_subcommand(1);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate a kernel, basis functions or a truncated expansion on a grid");
  eval->add_option("--family", ea.family, "matern, cauchy or gaussian")->required()->check(CLI::IsMember({"matern", "cauchy", "gaussian"}));
  eval->add_option("--nu", ea.nu, "Matern order: smoothness nu + 1/2")->check(CLI::NonNegativeNumber);
  eval->add_option("--lambda", ea.lambda, "Length-scale factor (arguments are multiplied by it)")->check(CLI::PositiveNumber);
  eval->add_option("--what", ea.what, "kernel, basis or truncated")->check(CLI::IsMember({"kernel", "basis", "truncated"}));
  eval->add_option("--class", ea.cls, "Basis class: plus|minus|null (matern), complex|alpha|beta (cauchy), psi|hermite|mercer (gaussian)");
  eval->add_option("--m", ea.m, "Basis index or inclusive range a..b");
  eval->add_option("--n", ea.n, "Truncation level")->check(CLI::PositiveNumber);
  eval->add_option("--grid", ea.grid, "start:stop:count, both ends included");
  eval->add_option("--u", ea.u, "Second kernel argument");
  eval->add_option("--out", ea.out, "Output file (default stdout)");
  eval->add_option("--format", ea.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  VerifyArgs va;
  double tol = 0;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", va.suite, "identities, matern, cauchy, gaussian, oracle or all");
  auto* tol_opt = verify->add_option("--tol", tol, "Override the numerical tolerance of every check (analytic bounds are kept)")->check(CLI::NonNegativeNumber);
  verify->add_option("--report", va.report, "Write JSON-lines reports to this file");
  verify->add_option("--quad-nodes", va.quad_nodes, "Gauss-Hermite node count")->check(CLI::Range(1, 256));
  verify->add_option("--seed", va.seed, "Seed for sampled point pairs");

  KrrArgs ka;
  auto* krr = app.add_subcommand("demo-krr", "Reduced-rank kernel ridge regression against the full-kernel solve");
  krr->add_option("--family", ka.family, "matern, cauchy or gaussian")->check(CLI::IsMember({"matern", "cauchy", "gaussian"}));
  krr->add_option("--nu", ka.nu, "Matern order")->check(CLI::NonNegativeNumber);
  krr->add_option("--lambda", ka.lambda, "Length-scale factor")->check(CLI::PositiveNumber);
  krr->add_option("--n", ka.n, "Truncation level")->check(CLI::PositiveNumber);
  krr->add_option("--ridge", ka.ridge, "Ridge parameter")->check(CLI::NonNegativeNumber);
  krr->add_option("--seed", ka.seed, "Data seed");
  krr->add_option("--train", ka.train, "Number of training points");
  krr->add_option("--test", ka.test, "Number of test points");
  krr->add_option("--noise", ka.noise, "Noise standard deviation");
  krr->add_flag("--duplicate-points", ka.duplicate, "Repeat every training point once");
  krr->add_option("--out", ka.out, "Output file (default stdout)");
  krr->add_option("--format", ka.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) return run_eval(ea);
    if (*verify) {
      if (*tol_opt) va.tol = tol;
      return run_verify(va);
    }
    if (*krr) return run_krr(ka);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rkhs::ConditioningError& e) {
    std::cerr << "conditioning error: " << e.what() << '\n';
    return kExitFail;
  } catch (const rkhs::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
