// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"
#include "xidist/xidist.hpp"

using namespace xidist;
using xidist_test::shared_zeros;

namespace {

struct Outcome {
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

Outcome at_most(double measured, double threshold, std::string note = "") {
  return {measured, threshold, measured <= threshold, std::move(note)};
}

std::vector<double> steps(double lo, double hi, double h) {
  std::vector<double> v;
  const long n = std::lround((hi - lo) / h);
  for (long i = 0; i <= n; ++i) v.push_back(lo + h * static_cast<double>(i));
  return v;
}

Outcome functional_equation() {
  double worst = 0.0;
  for (double sigma : steps(-5.0, 6.0, 0.5)) {
    for (double t : steps(-50.0, 50.0, 1.0)) {
      const Complex s(sigma, t);
      const Complex a = xi(s);
      worst = std::max(worst, std::abs(a - xi(1.0 - s)) / (1.0 + std::abs(a)));
    }
  }
  return at_most(worst, 1e-10);
}

Outcome normalization() {
  double worst = 0.0, min_pdf = HUGE_VAL;
  for (double sigma : {-1.0, 0.25, 0.5, 0.75, 1.0, 2.0, 4.0}) {
    const XiDistribution d(sigma);
    worst = std::max(worst, std::abs(d.total_mass() - 1.0));
    for (double p : d.table().pdf) min_pdf = std::min(min_pdf, p);
  }
  Outcome o = at_most(worst, 1e-8, "min pdf " + format_real(min_pdf));
  o.pass = o.pass && min_pdf >= -1e-12;
  return o;
}

Outcome density_backend() {
  double worst = 0.0;
  for (double sigma : {0.5, 0.75, 1.0, 2.0}) {
    const XiDistribution d(sigma);
    for (double t : steps(-10.0, 10.0, 0.25)) worst = std::max(worst, std::abs(d.cf_from_density(t) - d.cf_direct(t)));
  }
  return at_most(worst, 1e-6);
}

Outcome prime_triplet() {
  EvalAccuracy acc;
  acc.abs_tol = 1e-9;
  acc.rel_tol = 1e-9;
  const PrimeCutoff cut{100000, 40};
  const auto primes = primes_up_to(cut.p_max);
  double worst = 0.0;
  std::string note;
  for (double sigma : {1.5, 2.0, 3.0}) {
    const XiDistribution d(sigma);
    const auto tr = build_prime_levy_triplet(sigma, primes, cut.r_max, cut);
    double w = 0.0;
    for (double t : steps(-10.0, 10.0, 0.5)) w = std::max(w, std::abs(cf_from_triplet(tr, t, acc) - d.cf_direct(t)));
    worst = std::max(worst, w);
    note += (note.empty() ? "" : ", ") + ("sigma=" + format_real(sigma) + ": " + format_real(w));
  }
  return at_most(worst, 1e-6, note + "; atoms beyond p_max = 1e5 are dropped");
}

Outcome zero_product() {
  const ZeroList& zl = shared_zeros();
  double worst = 0.0;
  bool decreasing = true;
  for (double sigma : {0.75, 1.0, 2.0}) {
    const XiDistribution d(sigma);
    for (double t : steps(-5.0, 5.0, 0.5)) {
      const Complex direct = d.cf_direct(t);
      const double r_small = std::abs(cf_from_zeros(sigma, t, zl, 100).value - direct) / std::abs(direct);
      const double r_big = std::abs(cf_from_zeros(sigma, t, zl, 10000).value - direct) / std::abs(direct);
      worst = std::max(worst, r_big);
      // Both products are exactly 1 at t = 0.
      if (t != 0.0 ? !(r_big < r_small) : r_big != 0.0) decreasing = false;
    }
  }
  Outcome o = at_most(worst, 5e-3, decreasing ? "decreasing in K at every point" : "NOT decreasing in K");
  o.pass = o.pass && decreasing;
  return o;
}

Outcome modulus_bound() {
  const auto report = run_inequality_scan({0.5, 1.0, 2.0, 5.0}, steps(-50.0, 50.0, 0.25), 1e-12);
  Outcome o = at_most(report.max_cf_modulus, 1.0 + 1e-12, std::to_string(report.violations.size()) + " violations");
  o.pass = o.pass && report.pass();
  return o;
}

Outcome gamma_levy() {
  double worst = 0.0;
  for (double sigma : {0.5, 1.0, 2.0, 5.0}) {
    for (double t : steps(-10.0, 10.0, 0.5)) {
      worst = std::max(worst, std::abs(gamma_levy_log(sigma, t) - (log_gamma(Complex(sigma, -t)) - log_gamma(sigma))));
    }
  }
  return at_most(worst, 1e-8);
}

Outcome prime_measure() {
  const auto primes = primes_up_to(20000000);
  double worst = 0.0;
  for (double sigma : {2.0, 3.0}) {
    for (double t : steps(-10.0, 10.0, 0.5)) {
      const Complex ref = std::log(zeta(Complex(sigma, -t)) / zeta(Complex(sigma, 0.0)));
      worst = std::max(worst, std::abs(prime_log_ratio(sigma, t, primes, 40) - ref));
    }
  }
  return at_most(worst, 1e-8, "p_max = 2e7, r_max = 40");
}

Outcome pair_modulus() {
  const ZeroList& zl = shared_zeros();
  double worst = 0.0;
  bool above_one = true;
  for (double sigma : {0.6, 1.0, 2.0}) {
    for (std::size_t k = 0; k < 100; ++k) {
      const double g = zl.records[k].gamma, c = sigma - 0.5;
      const double t = std::sqrt(2.0 * (c * c + g * g));
      const double closed = phi_modulus_squared(sigma, g, t);
      above_one = above_one && closed > 1.0;
      worst = std::max(worst, std::abs(closed - phi_modulus_squared_from_log(sigma, g, t)));
    }
  }
  Outcome o = at_most(worst, 1e-10, above_one ? "|phi|^2 > 1 at all 300 points" : "|phi|^2 <= 1 somewhere");
  o.pass = o.pass && above_one;
  return o;
}

Outcome xi_star() {
  double min_density = HUGE_VAL;
  for (double sigma : {1.5, 2.0, 4.0}) {
    const auto tr = build_xi_star_triplet(sigma, {}, 40, {});
    for (double lx = -3.0; lx <= std::log10(50.0) + 1e-12; lx += 0.01) {
      min_density = std::min(min_density, tr.measure.continuous_density(std::pow(10.0, lx)));
    }
  }
  const PrimeCutoff cut{100000, 40};
  const auto tr = build_xi_star_triplet(2.0, primes_up_to(cut.p_max), cut.r_max, cut);
  double worst = 0.0;
  for (double t : steps(-10.0, 10.0, 0.5)) worst = std::max(worst, std::abs(cf_from_triplet(tr, t) - cf_xi_star(2.0, t)));
  Outcome o = at_most(worst, 1e-6, "min density " + format_real(min_density));
  o.pass = o.pass && min_density > 0.0;
  return o;
}

double bisect_Z(double lo, double hi) {
  double zlo = riemann_siegel_Z(lo);
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double zm = riemann_siegel_Z(mid);
    if ((zm < 0.0) == (zlo < 0.0)) {
      lo = mid;
      zlo = zm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Outcome zeros() {
  const ZeroList& zl = shared_zeros();
  double worst = 0.0;
  const double oracle[] = {14.13472514173469379, 21.022039638771554993, 25.010857580145688763};
  for (int k = 0; k < 3; ++k) {
    const double own = bisect_Z(oracle[k] - 0.05, oracle[k] + 0.05);
    worst = std::max({worst, std::abs(zl.records[k].gamma - own), std::abs(zl.records[k].gamma - oracle[k])});
  }
  const std::size_t below = zl.count_below(100.0);
  double window = 0.0;
  for (double T = 20.0; T <= 1000.0; T += 10.0) window = std::max(window, std::abs(windowed_completeness(zl, T)));
  Outcome o = at_most(worst, 1e-6, std::to_string(below) + " below 100, max |windowed deviation| to 1000 = " +
                                       format_real(window));
  o.pass = o.pass && below == 29 && window <= 1.0;
  return o;
}

Outcome sampling() {
  const XiDistribution d(2.0);
  auto x = d.sample(100000, 20240601);
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = d.cdf(x[i]);
    ks = std::max({ks, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return at_most(ks, 1.63 / std::sqrt(n));
}

Outcome total_variation() {
  const PrimeCutoff cut{10000000, 40};
  const auto tr = build_prime_levy_triplet(2.0, primes_up_to(cut.p_max), cut.r_max, cut);
  const auto tv = total_variation_integral(tr.measure);
  const auto b = prime_measure_bounds(2.0);
  // Atoms beyond the cutoff add at most their mass to the atomic part.
  const double value = tv.value + tr.measure.atom_tail_bound + tv.tail_bound;
  Outcome o = at_most(value, b.total(),
                      "atoms " + format_real(tv.atomic_part) + " < " + format_real(b.atomic) + ", continuous " +
                          format_real(tv.continuous_part) + " < " + format_real(b.gamma_part + b.linear_part));
  o.pass = o.pass && tv.converged && std::isfinite(tv.value) && tv.atomic_part + tr.measure.atom_tail_bound < b.atomic &&
           tv.continuous_part + tv.tail_bound < b.gamma_part + b.linear_part;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* what;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "functional equation xi(s) = xi(1-s)", functional_equation},
      {2, "density integrates to 1 and is nonnegative", normalization},
      {3, "density Fourier transform matches direct CF", density_backend},
      {4, "prime-measure triplet reconstructs the CF (p_max 1e5)", prime_triplet},
      {5, "zero product converges to the CF", zero_product},
      {6, "|Xi_sigma(t)| <= 1 for sigma >= 1/2", modulus_bound},
      {7, "Gamma Levy-Khintchine form matches log Gamma", gamma_levy},
      {8, "prime measure reproduces log zeta ratio", prime_measure},
      {9, "zero-pair factor modulus exceeds 1", pair_modulus},
      {10, "Xi* measure positive and triplet reconstructs Xi*", xi_star},
      {11, "zero list: first ordinates, count, completeness", zeros},
      {12, "sampler KS statistic at sigma = 2", sampling},
      {13, "total variation of the prime measure below its bound", total_variation},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %s: measured %.3e vs threshold %.3e (%.1fs)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.what,
                o.measured, o.threshold, secs, o.note.empty() ? "" : "; ", o.note.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
