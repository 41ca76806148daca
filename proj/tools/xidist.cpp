// Command-line front end: evaluate Xi_sigma, tabulate the density, sample,
// manage the zero cache and run the verification suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xidist/xidist.hpp"

namespace {

using namespace xidist;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Range {
  double lo = 0.0, hi = 0.0;
  std::size_t n = 0;

  std::vector<double> points() const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
  }
};

Range parse_range(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw DomainError("range must look like A:B:N");
  Range r;
  std::size_t used = 0;
  try {
    r.lo = std::stod(text.substr(0, a), &used);
    if (used != a) throw std::invalid_argument("lo");
    r.hi = std::stod(text.substr(a + 1, b - a - 1), &used);
    if (used != b - a - 1) throw std::invalid_argument("hi");
    const long long n = std::stoll(text.substr(b + 1), &used);
    if (used != text.size() - b - 1 || n < 2) throw std::invalid_argument("n");
    r.n = static_cast<std::size_t>(n);
  } catch (const std::logic_error&) {
    throw DomainError("range must look like A:B:N with numbers A < B and an integer N >= 2");
  }
  if (!(r.lo < r.hi)) throw DomainError("range needs A < B");
  return r;
}

std::string cache_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("XIDIST_ZERO_CACHE"); env != nullptr && *env != '\0') return env;
  return "xi-dist-zeros.txt";
}

/// Loads the cache at `path` when it reaches t_max (or already holds
/// min_records zeros), otherwise scans and rewrites it.
ZeroList ensure_zero_cache(const std::string& path, double t_max, std::size_t min_records = 0) {
  if (std::filesystem::exists(path)) {
    ZeroList zl = load_cache(path);
    if (zl.t_max >= t_max || (min_records > 0 && zl.records.size() >= min_records)) return zl;
  }
  ZeroScanOptions opts;
  opts.progress = [t_max](double t) {
    std::fprintf(stderr, "\rbuilding zero cache: t = %.1f / %.1f", t, t_max);
    std::fflush(stderr);
  };
  ZeroList zl = find_zeros(t_max, {}, opts);
  std::fprintf(stderr, "\rbuilding zero cache: %zu zeros up to t = %.1f\n", zl.records.size(), t_max);
  save_cache(zl, path);
  return zl;
}

/// Smallest scan ceiling (<= 1e4) expected to hold K zeros.
double t_max_for(std::size_t K) {
  double t = 15.0;
  while (zero_count_estimate(t) < static_cast<double>(K) + 3.0) {
    t += 10.0;
    if (t > 1e4) throw DomainError("K = " + std::to_string(K) + " needs zeros beyond t = 1e4");
  }
  return t;
}

struct Common {
  std::string output;
  std::string cache;
  std::size_t K = 10000;
  std::uint64_t p_max = 10000000;
  int r_max = 40;
  double abs_tol = 1e-14;
  double rel_tol = 1e-14;

  EvalAccuracy accuracy() const {
    EvalAccuracy acc;
    acc.abs_tol = abs_tol;
    acc.rel_tol = rel_tol;
    acc.validate();
    return acc;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int run_eval(double sigma, double t, const std::string& backend, const Common& c) {
  const EvalAccuracy acc = c.accuracy();
  Complex v;
  if (backend == "direct") {
    v = XiDistribution(sigma, acc).cf_direct(t);
  } else if (backend == "density_ft") {
    v = XiDistribution(sigma, acc).cf_from_density(t);
  } else if (backend == "zeros") {
    const ZeroList zl = ensure_zero_cache(cache_path(c.cache), t_max_for(c.K), c.K);
    v = cf_from_zeros(sigma, t, zl, c.K).value;
  } else if (backend == "primes_triplet") {
    v = cf_from_triplet(build_prime_levy_triplet(sigma, PrimeCutoff{c.p_max, c.r_max}), t, acc);
  } else {
    v = cf_from_triplet(build_xi_star_triplet(sigma, PrimeCutoff{c.p_max, c.r_max}), t, acc) *
        Complex(sigma - 1.0, -t) / (sigma - 1.0);
  }
  Output out(c.output);
  out.stream() << format_real(v.real()) << ' ' << format_real(v.imag()) << '\n';
  return 0;
}

int run_density(double sigma, const std::string& range, const Common& c) {
  const Range r = parse_range(range);
  const XiDistribution dist(sigma, c.accuracy());
  Output out(c.output);
  out.stream() << "y,pdf,cdf\n";
  for (double y : r.points()) {
    out.stream() << format_real(y) << ',' << format_real(dist.density(y)) << ',' << format_real(dist.cdf(y)) << '\n';
  }
  return 0;
}

int run_sample(double sigma, std::size_t n, std::uint64_t seed, const Common& c) {
  const XiDistribution dist(sigma, c.accuracy());
  Output out(c.output);
  std::string buf;
  for (double x : dist.sample(n, seed)) {
    buf += format_real(x);
    buf += '\n';
  }
  out.stream() << buf;
  return 0;
}

int run_zeros(double t_max, const Common& c) {
  if (!(t_max >= 15.0)) throw DomainError("--tmax must be >= 15");
  const ZeroList zl = ensure_zero_cache(cache_path(c.cache), t_max);
  Output out(c.output);
  out.stream() << zl.count_below(t_max) << " zeros\n";
  return 0;
}

int run_verify(double sigma, const std::string& suite, const std::string& range, const Common& c) {
  const EvalAccuracy acc = c.accuracy();
  CsvReport csv;
  bool pass = false;
  if (suite == "cross") {
    const std::vector<double> grid = (range.empty() ? parse_range("-10:10:41") : parse_range(range)).points();
    std::optional<ZeroList> zl;
    CrossCheckConfig config;
    config.zeros_K = c.K;
    config.cut = {c.p_max, c.r_max};
    config.acc = acc;
    if (sigma > 0.5) {
      zl = ensure_zero_cache(cache_path(c.cache), t_max_for(c.K), c.K);
      config.zeros = &*zl;
    }
    const auto report = run_cross_check(sigma, grid, config);
    csv = to_csv_report(report);
    pass = report.pass();
  } else if (suite == "inequality") {
    const std::vector<double> grid = (range.empty() ? parse_range("-50:50:201") : parse_range(range)).points();
    const auto report = run_inequality_scan({sigma}, grid, 1e-12, acc);
    csv = to_csv_report(report);
    pass = report.pass();
  } else {
    const std::vector<double> grid = (range.empty() ? parse_range("1:5:3") : parse_range(range)).points();
    std::vector<std::size_t> ks;
    for (std::size_t k = 100; k < c.K; k *= 10) ks.push_back(k);
    ks.push_back(c.K);
    const ZeroList zl = ensure_zero_cache(cache_path(c.cache), t_max_for(c.K), c.K);
    std::vector<ZeroConvergenceReport> reports;
    for (double t : grid) reports.push_back(run_zero_convergence(sigma, t, ks, zl, acc));
    csv = to_csv_report(reports);
    pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.decreasing(); });
  }
  Output out(c.output);
  out.stream() << to_csv(csv);
  return pass ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Completed Riemann zeta distribution: evaluation, sampling, zeros and verification"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--output,-o", common.output, "Write results to this file instead of stdout");
  app.add_option("--cache", common.cache, "Zero cache path (default $XIDIST_ZERO_CACHE or xi-dist-zeros.txt)");
  app.add_option("--K", common.K, "Zeros used by the zero-product backend")->check(CLI::Range(1, 10000));
  app.add_option("--p-max", common.p_max, "Largest prime in the prime measure")->check(CLI::Range(2, 100000000));
  app.add_option("--r-max", common.r_max, "Largest prime power in the prime measure")->check(CLI::PositiveNumber);
  app.add_option("--abs-tol", common.abs_tol, "Absolute accuracy target")->check(CLI::NonNegativeNumber);
  app.add_option("--rel-tol", common.rel_tol, "Relative accuracy target")->check(CLI::NonNegativeNumber);

  double sigma = 0.0, t = 0.0, t_max = 0.0;
  std::string backend = "direct", range, suite;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  auto* eval = app.add_subcommand("eval", "Print Re and Im of Xi_sigma(t)");
  eval->add_option("--sigma", sigma)->required();
  eval->add_option("--t", t)->required();
  eval->add_option("--backend", backend)
      ->check(CLI::IsMember({"direct", "density_ft", "zeros", "primes_triplet", "xi_star_composed"}));

  auto* density = app.add_subcommand("density", "CSV of y, pdf, cdf on A:B:N");
  density->add_option("--sigma", sigma)->required();
  density->add_option("--range", range, "A:B:N")->required();

  auto* sample = app.add_subcommand("sample", "One draw per line");
  sample->add_option("--sigma", sigma)->required();
  sample->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed)->required();

  auto* zeros = app.add_subcommand("zeros", "Build or load the zero cache and print the count up to --tmax");
  zeros->add_option("--tmax", t_max)->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite and emit its CSV report");
  verify->add_option("--sigma", sigma)->required();
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember({"cross", "inequality", "convergence"}));
  verify->add_option("--range", range, "t grid A:B:N (suite default otherwise)");

  for (auto* sub : {eval, density, sample, zeros, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) {
      if (backend == "xi_star_composed" && sigma == 1.0) throw DomainError("xi_star_composed needs sigma != 1");
      return run_eval(sigma, t, backend, common);
    }
    if (*density) return run_density(sigma, range, common);
    if (*sample) return run_sample(sigma, n, seed, common);
    if (*zeros) return run_zeros(t_max, common);
    return run_verify(sigma, suite, range, common);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
