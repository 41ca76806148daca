#pragma once

// Ordinates of the nontrivial zeta zeros on the critical line: sign-change
// scan of Z(t), bracket refinement, zero-count completeness check and a
// checksummed plain-text cache.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

#include <openssl/evp.h>

#include "xidist/accuracy.hpp"
#include "xidist/errors.hpp"
#include "xidist/format.hpp"
#include "xidist/specfun.hpp"

namespace xidist {

struct ZeroRecord {
  std::size_t index = 0;         // 1-based
  double gamma = 0.0;            // ordinate
  double bracket_halfwidth = 0.0;
  double beta = 0.5;             // real part

  friend bool operator==(const ZeroRecord&, const ZeroRecord&) = default;
};

/// Zeros with 0 < gamma <= t_max. `records` holds critical-line zeros;
/// `off_line` holds zeros with beta != 1/2 and is never filled by the scan.
struct ZeroList {
  std::vector<ZeroRecord> records;
  double t_max = 0.0;
  std::vector<ZeroRecord> off_line;

  std::size_t count_below(double t) const {
    return static_cast<std::size_t>(
        std::upper_bound(records.begin(), records.end(), t,
                         [](double v, const ZeroRecord& r) { return v < r.gamma; }) -
        records.begin());
  }

  friend bool operator==(const ZeroList&, const ZeroList&) = default;
};

/// Smooth zero-counting estimate theta(T)/pi + 1.
inline double zero_count_estimate(double t) { return siegel_theta(t) / std::numbers::pi + 1.0; }

/// count(gamma <= T) - (theta(T)/pi + 1).
inline double completeness_deviation(const ZeroList& zl, double t) {
  return static_cast<double>(zl.count_below(t)) - zero_count_estimate(t);
}

/// Mean of the deviation over 64 points of [T - window, T]. The pointwise
/// deviation S(T) itself can exceed 1 in magnitude; its mean stays small, and
/// a missed pair of zeros shifts it by 2.
inline double windowed_completeness(const ZeroList& zl, double t, double window = 10.0) {
  constexpr int kPoints = 64;
  const double lo = std::max(t - window, 1.0);
  double sum = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double tau = lo + (t - lo) * (i + 0.5) / kPoints;
    sum += completeness_deviation(zl, tau);
  }
  return sum / kPoints;
}

struct ZeroScanOptions {
  double step = 0.05;
  double certified_halfwidth = 5e-10;
  unsigned threads = 0;  // 0: hardware concurrency
  std::function<void(double)> progress;  // called with the scanned ordinate
};

namespace detail {

inline double round_to_15_digits(double v) { return std::stod(format_real(v)); }

inline int sign_of(double v) { return v < 0.0 ? -1 : 1; }

/// Evaluates Z on t_j = lo + j h, j = 0..count-1, optionally across threads.
inline std::vector<double> evaluate_grid(double lo, double h, std::size_t count, const EvalAccuracy& acc,
                                         unsigned threads) {
  std::vector<double> values(count);
  const auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) values[j] = riemann_siegel_Z(lo + h * static_cast<double>(j), acc);
  };
  if (threads <= 1 || count < 256) {
    fill(0, count);
    return values;
  }
  std::vector<std::jthread> workers;
  // Interleaved blocks balance the cost, which grows with t.
  const std::size_t block = 64;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t b = w * block; b < count; b += threads * block) fill(b, std::min(b + block, count));
    });
  }
  return values;
}

struct Bracket {
  double lo, hi, z_lo, z_hi;
};

/// Illinois regula falsi inside [lo, hi], then a certified bracket of
/// halfwidth `h` around the estimate; bisection of the surviving bracket if
/// certification fails.
inline ZeroRecord refine_bracket(Bracket b, const EvalAccuracy& acc, double h) {
  double a = b.lo, c = b.hi, za = b.z_lo, zc = b.z_hi;
  int side = 0;
  double estimate = 0.5 * (a + c);
  for (int iter = 0; iter < 60 && c - a > 2.0 * h; ++iter) {
    const double next = (a * zc - c * za) / (zc - za);
    const double zn = riemann_siegel_Z(next, acc);
    const bool converged = std::abs(next - estimate) < 1e-3 * h;
    estimate = next;
    if (zn == 0.0) break;
    if (sign_of(zn) == sign_of(zc)) {
      c = next;
      zc = zn;
      if (side == -1) za *= 0.5;
      side = -1;
    } else {
      a = next;
      za = zn;
      if (side == 1) zc *= 0.5;
      side = 1;
    }
    if (converged) break;
  }
  double gamma = round_to_15_digits(estimate);
  if (gamma - h > b.lo && gamma + h < b.hi &&
      sign_of(riemann_siegel_Z(gamma - h, acc)) != sign_of(riemann_siegel_Z(gamma + h, acc))) {
    return {0, gamma, h, 0.5};
  }
  double zl = riemann_siegel_Z(a, acc);
  // Bisect to width h so the rounded midpoint +- h still covers [a, c].
  while (c - a > h) {
    const double mid = 0.5 * (a + c);
    const double zm = riemann_siegel_Z(mid, acc);
    if (sign_of(zm) == sign_of(zl)) {
      a = mid;
      zl = zm;
    } else {
      c = mid;
    }
  }
  return {0, round_to_15_digits(0.5 * (a + c)), h, 0.5};
}

/// Sign-change brackets on a grid, plus brackets uncovered by resampling
/// around local minima of |Z| that show no sign change (close zero pairs).
inline void collect_brackets(double lo, double h, const std::vector<double>& z, const EvalAccuracy& acc,
                             int depth, std::vector<Bracket>& out) {
  for (std::size_t j = 0; j + 1 < z.size(); ++j) {
    const double a = lo + h * static_cast<double>(j);
    if (sign_of(z[j]) != sign_of(z[j + 1])) out.push_back({a, a + h, z[j], z[j + 1]});
  }
  if (depth <= 0) return;
  for (std::size_t j = 1; j + 1 < z.size(); ++j) {
    const bool same = sign_of(z[j - 1]) == sign_of(z[j]) && sign_of(z[j]) == sign_of(z[j + 1]);
    if (!same || !(std::abs(z[j]) < std::abs(z[j - 1]) && std::abs(z[j]) < std::abs(z[j + 1]))) continue;
    constexpr std::size_t kSub = 16;
    const double sub_lo = lo + h * static_cast<double>(j - 1);
    const double sub_h = 2.0 * h / kSub;
    std::vector<double> sub(kSub + 1);
    for (std::size_t i = 0; i <= kSub; ++i) sub[i] = riemann_siegel_Z(sub_lo + sub_h * static_cast<double>(i), acc);
    collect_brackets(sub_lo, sub_h, sub, acc, depth - 1, out);
  }
}

inline std::vector<ZeroRecord> scan_range(double lo, double hi, double step, const EvalAccuracy& acc,
                                          const ZeroScanOptions& opts, unsigned threads) {
  const auto intervals = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  const double h = (hi - lo) / static_cast<double>(intervals);
  const auto z = evaluate_grid(lo, h, intervals + 1, acc, threads);
  std::vector<Bracket> brackets;
  collect_brackets(lo, h, z, acc, 2, brackets);
  std::sort(brackets.begin(), brackets.end(), [](const Bracket& x, const Bracket& y) { return x.lo < y.lo; });
  std::vector<ZeroRecord> found;
  found.reserve(brackets.size());
  for (const auto& b : brackets) {
    found.push_back(refine_bracket(b, acc, opts.certified_halfwidth));
    if (opts.progress && found.size() % 500 == 0) opts.progress(b.hi);
  }
  return found;
}

inline void renumber(std::vector<ZeroRecord>& records) {
  std::sort(records.begin(), records.end(), [](const ZeroRecord& a, const ZeroRecord& b) { return a.gamma < b.gamma; });
  // Sub-brackets from the local-minimum probe can rediscover a zero already bracketed.
  records.erase(std::unique(records.begin(), records.end(),
                            [](const ZeroRecord& a, const ZeroRecord& b) { return std::abs(a.gamma - b.gamma) < 1e-6; }),
                records.end());
  for (std::size_t i = 0; i < records.size(); ++i) records[i].index = i + 1;
}

}  // namespace detail

/// All critical-line zeros with 0 < gamma <= t_max. Scans Z(t) on a uniform
/// grid, refines every bracket to halfwidth <= 1e-9 and checks the count
/// against theta(T)/pi + 1 at T = 100, 1000 and t_max. A failed check
/// triggers one rescan of that segment at a quarter of the step; a second
/// failure throws MissedZeroError.
inline ZeroList find_zeros(double t_max, const EvalAccuracy& acc = {}, const ZeroScanOptions& opts = {}) {
  acc.validate();
  if (!std::isfinite(t_max) || t_max < 15.0) throw DomainError("find_zeros: t_max must be >= 15");
  if (t_max > 1e4 + 1.0) throw DomainError("find_zeros: t_max beyond supported range 1e4");
  const unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());

  std::vector<double> checkpoints;
  for (double c : {100.0, 1000.0}) {
    if (c < t_max) checkpoints.push_back(c);
  }
  checkpoints.push_back(t_max);

  ZeroList zl;
  zl.t_max = t_max;
  double lo = 0.0;
  for (double cp : checkpoints) {
    auto segment = detail::scan_range(lo, cp, opts.step, acc, opts, threads);
    const auto merge = [&](std::vector<ZeroRecord> seg) {
      ZeroList trial = zl;
      trial.records.insert(trial.records.end(), seg.begin(), seg.end());
      detail::renumber(trial.records);
      return trial;
    };
    ZeroList trial = merge(segment);
    if (std::abs(windowed_completeness(trial, cp)) > 1.0) {
      segment = detail::scan_range(lo, cp, 0.25 * opts.step, acc, opts, threads);
      trial = merge(segment);
      const double dev = windowed_completeness(trial, cp);
      if (std::abs(dev) > 1.0) {
        throw MissedZeroError("find_zeros: zero count deviates from the counting estimate by " +
                                  std::to_string(dev) + " near T = " + std::to_string(cp),
                              cp);
      }
    }
    zl = std::move(trial);
    if (opts.progress) opts.progress(cp);
    lo = cp;
  }
  return zl;
}

namespace detail {

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256: digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

inline constexpr std::string_view kCacheMagic = "xi-dist-zeros v1 t_max=";

inline double parse_real(std::string_view text, std::size_t line, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ParseError(std::string("malformed ") + what + " '" + std::string(text) + "'", line);
  }
  return v;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

/// Cache text: header, one "index gamma bracket_halfwidth beta" line per
/// record (critical-line records first), then "sha256=<hex>" of all bytes
/// before that line.
inline std::string serialize_zero_cache(const ZeroList& zl) {
  std::string body;
  body += detail::kCacheMagic;
  body += format_real(zl.t_max);
  body += '\n';
  const auto emit = [&](const ZeroRecord& r) {
    body += std::to_string(r.index) + ' ' + format_real(r.gamma) + ' ' + format_real(r.bracket_halfwidth) + ' ' +
            format_real(r.beta) + '\n';
  };
  for (const auto& r : zl.records) emit(r);
  for (const auto& r : zl.off_line) emit(r);
  return body + "sha256=" + detail::sha256_hex(body) + '\n';
}

inline ZeroList parse_zero_cache(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty() || !lines.front().starts_with(detail::kCacheMagic)) {
    throw ParseError("missing 'xi-dist-zeros v1' header", 1);
  }
  ZeroList zl;
  zl.t_max = detail::parse_real(lines.front().substr(detail::kCacheMagic.size()), 1, "t_max");

  const std::string_view last = lines.back();
  if (!last.starts_with("sha256=") || text.back() != '\n') {
    throw ParseError("missing final sha256 line (truncated cache?)", lines.size());
  }
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = detail::split_ws(lines[i]);
    if (fields.size() != 4) throw ParseError("expected 'index gamma bracket_halfwidth beta'", line_no);
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), index);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size() || index == 0) {
      throw ParseError("malformed index '" + std::string(fields[0]) + "'", line_no);
    }
    ZeroRecord r{index, detail::parse_real(fields[1], line_no, "gamma"), detail::parse_real(fields[2], line_no, "bracket_halfwidth"),
                 detail::parse_real(fields[3], line_no, "beta")};
    if (!(r.gamma > 0.0) || !(r.bracket_halfwidth > 0.0) || !(r.beta > 0.0 && r.beta < 1.0)) {
      throw ParseError("record field out of range", line_no);
    }
    if (r.beta == 0.5) {
      if (!zl.off_line.empty()) throw ParseError("critical-line record after off-line records", line_no);
      if (r.index != zl.records.size() + 1 || (!zl.records.empty() && !(r.gamma > zl.records.back().gamma))) {
        throw ParseError("records must be consecutive and strictly increasing in gamma", line_no);
      }
      zl.records.push_back(r);
    } else {
      zl.off_line.push_back(r);
    }
  }
  const std::size_t body_size = static_cast<std::size_t>(last.data() - text.data());
  const std::string expected = detail::sha256_hex(text.substr(0, body_size));
  if (last.substr(7) != expected) throw ChecksumError("zero cache checksum mismatch");
  return zl;
}

inline void save_cache(const ZeroList& zl, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("save_cache: cannot open " + path);
  out << serialize_zero_cache(zl);
  if (!out) throw Error("save_cache: write failed for " + path);
}

inline ZeroList load_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("load_cache: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_zero_cache(buf.str());
}

/// Checksum recorded on the last cache line, for report provenance.
inline std::string zero_cache_checksum(const ZeroList& zl) {
  const std::string text = serialize_zero_cache(zl);
  return text.substr(text.rfind("sha256=") + 7, 64);
}

}  // namespace xidist
