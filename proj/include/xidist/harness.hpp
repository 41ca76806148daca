#pragma once

// Cross-verification of the characteristic-function backends, the |Xi| <= 1
// scan and the zero-product convergence study, with a CSV report format.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "xidist/distribution.hpp"
#include "xidist/errors.hpp"
#include "xidist/format.hpp"
#include "xidist/levy.hpp"
#include "xidist/zeros.hpp"

namespace xidist {

enum class Backend { direct, density_ft, zeros, primes_triplet, xi_star_composed };

inline std::string backend_name(Backend b, std::size_t K = 0) {
  switch (b) {
    case Backend::direct: return "direct";
    case Backend::density_ft: return "density_ft";
    case Backend::zeros: return "zeros(K=" + std::to_string(K) + ")";
    case Backend::primes_triplet: return "primes_triplet";
    case Backend::xi_star_composed: return "xi_star_composed";
  }
  return "?";
}

// ------------------------------------------------------------------ CSV

struct ReportRow {
  double sigma = 0.0;
  double t = 0.0;
  std::string backend_a;
  std::string backend_b;
  double abs_residual = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// Rows plus free-form summary lines, written as "# " comments after the rows.
struct CsvReport {
  std::vector<ReportRow> rows;
  std::vector<std::string> summary;

  friend bool operator==(const CsvReport&, const CsvReport&) = default;
};

inline constexpr std::string_view kCsvHeader = "sigma,t,backend_a,backend_b,abs_residual";

inline std::string to_csv(const CsvReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : report.rows) {
    out += format_real(r.sigma) + ',' + format_real(r.t) + ',' + r.backend_a + ',' + r.backend_b + ',' +
           format_real(r.abs_residual) + '\n';
  }
  for (const auto& line : report.summary) out += "# " + line + '\n';
  return out;
}

inline CsvReport parse_csv(std::string_view text) {
  CsvReport report;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      report.summary.emplace_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError("expected CSV header '" + std::string(kCsvHeader) + "'", line_no);
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (cells.size() != 5) throw ParseError("expected 5 CSV cells", line_no);
    report.rows.push_back({detail::parse_real(cells[0], line_no, "sigma"), detail::parse_real(cells[1], line_no, "t"),
                           std::string(cells[2]), std::string(cells[3]),
                           detail::parse_real(cells[4], line_no, "abs_residual")});
  }
  if (!header_seen) throw ParseError("missing CSV header", line_no);
  return report;
}

// ---------------------------------------------------------- cross check

struct CrossCheckConfig {
  std::size_t zeros_K = 10000;
  PrimeCutoff cut{10000000, 40};
  const ZeroList* zeros = nullptr;  // zeros backend is skipped without it
  EvalAccuracy acc{};
  // Per-backend error budgets; a pair is allowed the sum of its two budgets.
  double tol_direct = 1e-12;
  double tol_density = 1e-6;
  double tol_primes = 1e-6;
  double tol_xi_star = 1e-6;
  double tol_zeros = 5e-3;
};

struct PairSummary {
  std::string backend_a;
  std::string backend_b;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_residual <= tolerance; }
};

struct CfBackendReport {
  double sigma = 0.0;
  std::vector<double> t_grid;
  std::vector<std::string> backend_set;
  std::vector<ReportRow> rows;        // grid order, then pair order
  std::vector<PairSummary> pairs;
  std::vector<std::string> parameters;  // truncation parameters and cache checksum

  bool pass() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const PairSummary& p) { return p.pass(); });
  }
};

/// Pairwise |difference| of every backend valid at sigma over the t grid.
/// primes_triplet and xi_star_composed need sigma > 1, zeros needs
/// sigma > 1/2 and a zero list, density_ft needs |t| <= 50.
inline CfBackendReport run_cross_check(double sigma, const std::vector<double>& t_grid,
                                       const CrossCheckConfig& config = {}) {
  if (t_grid.empty()) throw DomainError("run_cross_check: empty t grid");
  const XiDistribution dist(sigma, config.acc);
  double t_abs_max = 0.0;
  for (double t : t_grid) t_abs_max = std::max(t_abs_max, std::abs(t));

  struct Entry {
    std::string name;
    double tol;
    std::function<Complex(double)> eval;
  };
  std::vector<Entry> backends;
  backends.push_back({backend_name(Backend::direct), config.tol_direct, [&](double t) { return dist.cf_direct(t); }});
  if (t_abs_max <= 50.0) {
    backends.push_back({backend_name(Backend::density_ft), config.tol_density,
                        [&](double t) { return dist.cf_from_density(t); }});
  }
  if (sigma > 0.5 && config.zeros != nullptr && config.zeros->records.size() >= config.zeros_K) {
    const ZeroList& zl = *config.zeros;
    const std::size_t K = config.zeros_K;
    backends.push_back({backend_name(Backend::zeros, K), config.tol_zeros,
                        [&zl, sigma, K](double t) { return cf_from_zeros(sigma, t, zl, K).value; }});
  }
  std::optional<QuasiLevyTriplet> prime_triplet, star_triplet;
  if (sigma > 1.0) {
    config.cut.validate();
    const auto primes = primes_up_to(config.cut.p_max);
    prime_triplet = build_prime_levy_triplet(sigma, primes, config.cut.r_max, config.cut);
    star_triplet = build_xi_star_triplet(sigma, primes, config.cut.r_max, config.cut);
    backends.push_back({backend_name(Backend::primes_triplet), config.tol_primes,
                        [&](double t) { return cf_from_triplet(*prime_triplet, t, config.acc); }});
    backends.push_back({backend_name(Backend::xi_star_composed), config.tol_xi_star, [&](double t) {
                          return cf_from_triplet(*star_triplet, t, config.acc) * Complex(sigma - 1.0, -t) /
                                 (sigma - 1.0);
                        }});
  }

  CfBackendReport report;
  report.sigma = sigma;
  report.t_grid = t_grid;
  for (const auto& b : backends) report.backend_set.push_back(b.name);
  report.parameters = {
      "p_max=" + std::to_string(config.cut.p_max), "r_max=" + std::to_string(config.cut.r_max),
      "K=" + std::to_string(config.zeros_K),
      "zero_cache_sha256=" + (config.zeros != nullptr ? zero_cache_checksum(*config.zeros) : std::string("none")),
      "abs_tol=" + format_real(config.acc.abs_tol), "rel_tol=" + format_real(config.acc.rel_tol)};

  for (std::size_t i = 0; i < backends.size(); ++i) {
    for (std::size_t j = i + 1; j < backends.size(); ++j) {
      report.pairs.push_back({backends[i].name, backends[j].name, 0.0, 0.0, backends[i].tol + backends[j].tol});
    }
  }
  std::vector<Complex> values(backends.size());
  for (double t : t_grid) {
    for (std::size_t i = 0; i < backends.size(); ++i) values[i] = backends[i].eval(t);
    std::size_t p = 0;
    for (std::size_t i = 0; i < backends.size(); ++i) {
      for (std::size_t j = i + 1; j < backends.size(); ++j, ++p) {
        const double r = std::abs(values[i] - values[j]);
        report.rows.push_back({sigma, t, backends[i].name, backends[j].name, r});
        report.pairs[p].max_residual = std::max(report.pairs[p].max_residual, r);
        report.pairs[p].mean_residual += r / static_cast<double>(t_grid.size());
      }
    }
  }
  return report;
}

inline CsvReport to_csv_report(const CfBackendReport& r) {
  CsvReport out;
  out.rows = r.rows;
  out.summary.push_back("suite=cross sigma=" + format_real(r.sigma) + " points=" + std::to_string(r.t_grid.size()));
  std::string set = "backends=";
  for (std::size_t i = 0; i < r.backend_set.size(); ++i) set += (i ? ";" : "") + r.backend_set[i];
  out.summary.push_back(set);
  for (const auto& p : r.parameters) out.summary.push_back(p);
  for (const auto& p : r.pairs) {
    out.summary.push_back("pair " + p.backend_a + " " + p.backend_b + " max=" + format_real(p.max_residual) +
                          " mean=" + format_real(p.mean_residual) + " tol=" + format_real(p.tolerance) +
                          (p.pass() ? " pass" : " FAIL"));
  }
  out.summary.push_back(std::string("result=") + (r.pass() ? "pass" : "FAIL"));
  return out;
}

// ------------------------------------------------------ |Xi| <= 1 scan

struct InequalityViolation {
  double sigma, t, value;
};

struct InequalityReport {
  std::vector<double> sigma_grid;
  std::vector<double> t_grid;
  double max_cf_modulus = 0.0;
  double tolerance = 1e-12;
  std::vector<InequalityViolation> violations;
  std::vector<ReportRow> rows;  // residual column holds |1 - |Xi||

  bool pass() const { return violations.empty(); }
};

/// |Xi_sigma(t)| <= 1 + tolerance at every grid point; requires sigma >= 1/2.
inline InequalityReport run_inequality_scan(const std::vector<double>& sigma_grid, const std::vector<double>& t_grid,
                                            double tolerance = 1e-12, const EvalAccuracy& acc = {}) {
  InequalityReport report;
  report.sigma_grid = sigma_grid;
  report.t_grid = t_grid;
  report.tolerance = tolerance;
  for (double sigma : sigma_grid) {
    if (!(sigma >= 0.5)) throw DomainError("run_inequality_scan: sigma must be >= 1/2");
    const XiDistribution dist(sigma, acc);
    for (double t : t_grid) {
      const double m = std::abs(dist.cf_direct(t));
      report.max_cf_modulus = std::max(report.max_cf_modulus, m);
      if (m > 1.0 + tolerance) report.violations.push_back({sigma, t, m});
      report.rows.push_back({sigma, t, "|direct|", "1", std::abs(1.0 - m)});
    }
  }
  return report;
}

inline CsvReport to_csv_report(const InequalityReport& r) {
  CsvReport out;
  out.rows = r.rows;
  out.summary.push_back("suite=inequality points=" + std::to_string(r.rows.size()));
  out.summary.push_back("max_cf_modulus=" + format_real(r.max_cf_modulus) + " tol=" + format_real(r.tolerance));
  out.summary.push_back("violations=" + std::to_string(r.violations.size()));
  for (const auto& v : r.violations) {
    out.summary.push_back("violation sigma=" + format_real(v.sigma) + " t=" + format_real(v.t) +
                          " modulus=" + format_real(v.value));
  }
  out.summary.push_back(std::string("result=") + (r.pass() ? "pass" : "FAIL"));
  return out;
}

// ------------------------------------------------- zero-product study

struct ZeroConvergenceReport {
  double sigma = 0.0;
  double t = 0.0;
  std::vector<std::pair<std::size_t, double>> residuals;  // (K, |zeros - direct| / |direct|)
  std::string zero_cache_checksum;

  /// Last residual no larger than the first.
  bool decreasing() const { return residuals.empty() || residuals.back().second <= residuals.front().second; }
};

inline ZeroConvergenceReport run_zero_convergence(double sigma, double t, const std::vector<std::size_t>& K_list,
                                                  const ZeroList& zl, const EvalAccuracy& acc = {}) {
  if (K_list.empty()) throw DomainError("run_zero_convergence: empty K list");
  if (!std::is_sorted(K_list.begin(), K_list.end()) ||
      std::adjacent_find(K_list.begin(), K_list.end()) != K_list.end()) {
    throw DomainError("run_zero_convergence: K list must be strictly increasing");
  }
  if (K_list.back() > zl.records.size()) {
    throw InsufficientZerosError("run_zero_convergence: K = " + std::to_string(K_list.back()) + " exceeds the " +
                                 std::to_string(zl.records.size()) + " available zeros");
  }
  ZeroConvergenceReport report;
  report.sigma = sigma;
  report.t = t;
  report.zero_cache_checksum = zero_cache_checksum(zl);
  const XiDistribution dist(sigma, acc);
  const Complex direct = dist.cf_direct(t);
  for (std::size_t K : K_list) {
    const Complex z = cf_from_zeros(sigma, t, zl, K).value;
    report.residuals.emplace_back(K, std::abs(z - direct) / std::abs(direct));
  }
  return report;
}

inline CsvReport to_csv_report(const std::vector<ZeroConvergenceReport>& reports) {
  CsvReport out;
  bool all = true;
  for (const auto& r : reports) {
    for (const auto& [K, res] : r.residuals) {
      out.rows.push_back({r.sigma, r.t, backend_name(Backend::zeros, K), "direct", res});
    }
    all = all && r.decreasing();
  }
  out.summary.push_back("suite=convergence residual=relative");
  if (!reports.empty()) out.summary.push_back("zero_cache_sha256=" + reports.front().zero_cache_checksum);
  for (const auto& r : reports) {
    out.summary.push_back("sigma=" + format_real(r.sigma) + " t=" + format_real(r.t) +
                          (r.decreasing() ? " decreasing" : " NOT decreasing"));
  }
  out.summary.push_back(std::string("result=") + (all ? "pass" : "FAIL"));
  return out;
}

}  // namespace xidist
