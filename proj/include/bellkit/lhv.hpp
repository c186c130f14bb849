// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Local-hidden-variable bounds: exact enumeration over deterministic
// strategies, the cheaper fixed-outcome bound, and the closed-form /
// reference bounds for the preset families.
//
// The LHV maximum of a functional is attained on a deterministic strategy
// (the LHV polytope's vertices), so the exact bound is
//
//     B_LR = max over all d^(kN) strategies of  sum_m⃗ g(alpha⃗(m⃗) | m⃗),
//
// where party j answers alpha_j(m_j) from its response table.  The
// enumeration walks strategy indices in increasing lexicographic order and
// reports the lowest-index maximizer; the multi-threaded path partitions
// the index range into contiguous chunks and merges per-chunk results in
// chunk order with the same value-then-lowest-index rule, so the result is
// bit-identical to the sequential scan regardless of thread count.
// Scenarios whose strategy count exceeds the cap (or overflows 64 bits)
// raise EnumerationTooLarge before any work is done.
//
// The fixed-outcome bound restricts the search to strategies that ignore
// the setting (alpha_j constant per party): a lower bound on B_LR that is
// tight for several preset families but not all of them, which the tests
// pin family by family.
//
// Closed-form bounds:
//   * ekb_closed_form_bound: for the two-party k-setting dichotomic family
//     with weight f(1,1) = |f1| exp(-i theta_f), theta_f in [0, pi/2k],
//         B_LR = 2 |f1| cos(theta_f) / sin^2(pi / 2k),
//     matching exact enumeration to ~5e-15 over k = 2..5.
//   * mermin_reference_bound: 2^(N/2) for even N, 2^((N-1)/2) for odd N.
//
// Sign-summed bound for the N-party dichotomic family: with
// E(m⃗) = sum_alpha (-1)^(alpha_1+..+alpha_N) p(alpha⃗|m⃗) and the
// sign-weighted setting sums
//
//     S(c) = sum_m⃗  ( prod_j c_j^(m_j) )  E(m⃗),
//
// every deterministic strategy gives sum_c |S(c)| = 2^N exactly, and every
// LHV mixture satisfies sum_c |S(c)| <= 2^N by convexity.  Quantum states
// can exceed the per-sign-vector LHV maximum while still obeying their own
// bound, which is what zb_combined_bound_check measures.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "bellkit/functional.hpp"
#include "bellkit/probability.hpp"
#include "bellkit/scenario.hpp"

namespace bellkit {

// Tolerance used when comparing a value against a bound.
inline constexpr double kBoundComparisonTolerance = 1e-9;

// Result of a bound computation.  `argmax` is the flat index of the
// lowest-index maximizer: a strategy index for exact enumeration, an
// outcome-tuple index for the fixed-outcome bound, and 0 for closed forms
// (which have no search space).
struct BoundResult {
  double value = 0.0;
  std::uint64_t argmax = 0;
  std::string method;
};

namespace detail {

// Flat setting-tuple digits md[mi * N + j] = m_j, precomputed once per bound.
inline std::vector<int> setting_digits(const Scenario& s) {
  const std::uint64_t cols = s.setting_tuple_count();
  std::vector<int> md(static_cast<std::size_t>(cols) *
                      static_cast<std::size_t>(s.parties()));
  std::vector<int> m(static_cast<std::size_t>(s.parties()), 0);
  for (std::uint64_t mi = 0; mi < cols; ++mi) {
    for (int j = 0; j < s.parties(); ++j) {
      md[static_cast<std::size_t>(mi) * static_cast<std::size_t>(s.parties()) +
         static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(j)];
    }
    next_tuple(m, s.settings());
  }
  return md;
}

// Scans strategies [begin, end) and returns the best (value, lowest index).
// `responses` digits are 0-based: party j answers digit r[j*k + m] to
// setting m.
inline BoundResult scan_strategies(const Scenario& s, const std::vector<double>& g,
                                   const std::vector<int>& setting_digits,
                                   std::uint64_t begin, std::uint64_t end) {
  const int parties = s.parties();
  const int k = s.settings();
  const std::uint64_t d = static_cast<std::uint64_t>(s.outcomes());
  const std::uint64_t cols = s.setting_tuple_count();
  const std::size_t digit_count = static_cast<std::size_t>(parties) *
                                  static_cast<std::size_t>(k);

  // Decode the first strategy of the chunk; later ones advance by odometer.
  std::vector<int> r(digit_count, 0);
  {
    std::uint64_t rest = begin;
    for (std::size_t i = digit_count; i-- > 0;) {
      r[i] = static_cast<int>(rest % d);
      rest /= d;
    }
  }

  BoundResult best;
  best.value = -std::numeric_limits<double>::infinity();
  best.argmax = begin;
  best.method = "exact-enumeration";
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    double value = 0.0;
    for (std::uint64_t mi = 0; mi < cols; ++mi) {
      const int* dig = &setting_digits[static_cast<std::size_t>(mi) *
                                       static_cast<std::size_t>(parties)];
      std::uint64_t a_idx = 0;
      for (int j = 0; j < parties; ++j) {
        a_idx = a_idx * d +
                static_cast<std::uint64_t>(
                    r[static_cast<std::size_t>(j) * static_cast<std::size_t>(k) +
                      static_cast<std::size_t>(dig[j])]);
      }
      value += g[static_cast<std::size_t>(a_idx * cols + mi)];
    }
    if (value > best.value) {
      best.value = value;
      best.argmax = idx;
    }
    next_tuple(r, s.outcomes());
  }
  return best;
}

}  // namespace detail

// Exact LHV bound by full enumeration of deterministic strategies.
//
// Throws EnumerationTooLarge when the scenario's strategy count exceeds
// `cap`.  `threads` = 0 uses the hardware thread count; any thread count
// produces the identical result (value and lowest-index argmax).
inline BoundResult exact_lhv_bound(const BellFunctional& fn,
                                   std::uint64_t cap = Scenario::kDefaultStrategyCap,
                                   unsigned threads = 0) {
  const Scenario& s = fn.scenario();
  const std::uint64_t total = s.strategy_count();
  if (total > cap) {
    throw EnumerationTooLarge("exact LHV bound: scenario " + s.to_string() +
                              " has " + std::to_string(total) +
                              " deterministic strategies, above the cap of " +
                              std::to_string(cap));
  }
  const std::vector<int> md = detail::setting_digits(s);
  const std::vector<double>& g = fn.coefficients();

  unsigned worker_count = threads != 0 ? threads : std::thread::hardware_concurrency();
  if (worker_count == 0) worker_count = 1;
  // Small enumerations are cheaper sequentially than with thread startup.
  if (total < 65536 || worker_count == 1) {
    return detail::scan_strategies(s, g, md, 0, total);
  }

  const std::uint64_t chunk = (total + worker_count - 1) / worker_count;
  std::vector<BoundResult> partial(worker_count);
  std::vector<std::thread> pool;
  pool.reserve(worker_count);
  for (unsigned t = 0; t < worker_count; ++t) {
    const std::uint64_t begin = std::min<std::uint64_t>(t * chunk, total);
    const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, total);
    pool.emplace_back([&, t, begin, end]() {
      partial[t] = detail::scan_strategies(s, g, md, begin, end);
    });
  }
  for (std::thread& th : pool) th.join();

  // Chunks are merged in index order, so "first strict improvement wins"
  // reproduces the sequential lowest-index tie-break.
  BoundResult best = partial[0];
  for (unsigned t = 1; t < worker_count; ++t) {
    if (partial[t].value > best.value) best = partial[t];
  }
  return best;
}

// Fixed-outcome bound: the LHV maximum over strategies whose outcomes do
// not depend on the setting.  Always a lower bound on the exact value.
inline BoundResult fixed_alpha_bound(const BellFunctional& fn) {
  const Scenario& s = fn.scenario();
  const std::uint64_t rows = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();
  const std::vector<double>& g = fn.coefficients();
  BoundResult best;
  best.value = -std::numeric_limits<double>::infinity();
  best.argmax = 0;
  best.method = "fixed-alpha";
  for (std::uint64_t ai = 0; ai < rows; ++ai) {
    double value = 0.0;
    for (std::uint64_t mi = 0; mi < cols; ++mi) {
      value += g[static_cast<std::size_t>(ai * cols + mi)];
    }
    if (value > best.value) {
      best.value = value;
      best.argmax = ai;
    }
  }
  return best;
}

// --- Sign-summed dichotomic bound ------------------------------------------

namespace detail {

inline void require_dichotomic_pair_settings(const Scenario& s, const char* what) {
  if (s.outcomes() != 2 || s.settings() != 2) {
    throw ValidationError(std::string(what) +
                          ": requires two settings and two outcomes per party, got " +
                          s.to_string());
  }
}

}  // namespace detail

// Full N-party correlator E(m⃗) = sum_alpha (-1)^(alpha_1+..+alpha_N) p for
// a dichotomic scenario; conjugation signs are immaterial at d = 2.
inline std::vector<double> dichotomic_full_correlators(const ProbabilityTable& table) {
  const Scenario& s = table.scenario();
  if (s.outcomes() != 2) {
    throw ValidationError("full correlators: requires two outcomes per party, got " +
                          s.to_string());
  }
  const std::uint64_t rows = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();
  std::vector<double> e(static_cast<std::size_t>(cols), 0.0);
  std::vector<int> alpha(static_cast<std::size_t>(s.parties()), 0);
  for (std::uint64_t ai = 0; ai < rows; ++ai) {
    int parity = 0;
    for (int v : alpha) parity += v + 1;  // alpha_j = digit + 1
    const double w = (parity % 2 == 0) ? 1.0 : -1.0;
    for (std::uint64_t mi = 0; mi < cols; ++mi) {
      e[static_cast<std::size_t>(mi)] += w * table.at(ai, mi);
    }
    next_tuple(alpha, s.outcomes());
  }
  return e;
}

// Sign-weighted setting sum S(c) = sum_m⃗ (prod_j c_j^(m_j)) E(m⃗).
inline double zb_setting_sum(const ProbabilityTable& table, const SignVector& sign) {
  const Scenario& s = table.scenario();
  detail::require_dichotomic_pair_settings(s, "sign-weighted setting sum");
  if (sign.parties() != s.parties()) {
    throw ValidationError("sign-weighted setting sum: sign vector has " +
                          std::to_string(sign.parties()) + " entries for a " +
                          std::to_string(s.parties()) + "-party scenario");
  }
  const std::vector<double> e = dichotomic_full_correlators(table);
  const std::uint64_t cols = s.setting_tuple_count();
  double sum = 0.0;
  std::vector<int> m(static_cast<std::size_t>(s.parties()), 0);
  for (std::uint64_t mi = 0; mi < cols; ++mi) {
    double w = 1.0;
    for (int j = 0; j < s.parties(); ++j) {
      if (m[static_cast<std::size_t>(j)] == 1 &&
          sign.signs()[static_cast<std::size_t>(j)] < 0) {
        w = -w;
      }
    }
    sum += w * e[static_cast<std::size_t>(mi)];
    next_tuple(m, s.settings());
  }
  return sum;
}

// Combined sum over all 2^N sign vectors: sum_c |S(c)|.
inline double zb_combined_sum(const ProbabilityTable& table) {
  const Scenario& s = table.scenario();
  detail::require_dichotomic_pair_settings(s, "combined sign sum");
  double combined = 0.0;
  const std::uint64_t count = std::uint64_t{1} << s.parties();
  for (std::uint64_t ci = 1; ci <= count; ++ci) {
    combined += std::abs(zb_setting_sum(table, SignVector::from_index(s.parties(), ci)));
  }
  return combined;
}

// Exact maximum of the combined sum over deterministic strategies.  Every
// strategy evaluates to exactly 2^N, so this doubles as a numerical proof
// of the combined bound's tightness; it enumerates rather than assumes.
inline double zb_combined_exact_bound(int parties,
                                      std::uint64_t cap = Scenario::kDefaultStrategyCap) {
  const Scenario s(parties, 2, 2);
  if (s.strategy_count() > cap) {
    throw EnumerationTooLarge("combined sign sum: scenario " + s.to_string() +
                              " has " + std::to_string(s.strategy_count()) +
                              " deterministic strategies, above the cap of " +
                              std::to_string(cap));
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < s.strategy_count(); ++i) {
    const double value =
        zb_combined_sum(table_from_strategy(DeterministicStrategy::from_index(s, i)));
    best = std::max(best, value);
  }
  return best;
}

// Report for the combined-sum bound sum_c |S(c)| <= 2^N.
struct ZbCombinedReport {
  double combined = 0.0;  // sum_c |S(c)| for the given table
  double bound = 0.0;     // 2^N
  bool within = false;    // combined <= bound + 1e-9
};

inline ZbCombinedReport zb_combined_bound_check(const ProbabilityTable& table) {
  ZbCombinedReport report;
  report.combined = zb_combined_sum(table);
  report.bound = static_cast<double>(std::uint64_t{1} << table.scenario().parties());
  report.within = report.combined <= report.bound + kBoundComparisonTolerance;
  return report;
}

// --- Closed-form and reference bounds ---------------------------------------

// Closed-form LHV bound for the two-party k-setting dichotomic family with
// weight f1 = |f1| exp(-i theta_f).  Valid for theta_f in [0, pi/(2k)];
// other phases raise ValidationError because the closed form does not
// cover them (use exact enumeration instead).
inline BoundResult ekb_closed_form_bound(int settings, std::complex<double> f1) {
  if (settings < 2) {
    throw ValidationError("ekb closed form: settings must be >= 2, got " +
                          std::to_string(settings));
  }
  const double pi = PhaseTable::pi();
  const double half_step = pi / (2.0 * settings);
  double theta = -std::arg(f1);
  if (theta < -1e-12 || theta > half_step + 1e-12) {
    throw ValidationError("ekb closed form: weight phase " + std::to_string(theta) +
                          " outside [0, pi/(2k)] = [0, " + std::to_string(half_step) +
                          "]; use exact enumeration");
  }
  theta = std::clamp(theta, 0.0, half_step);
  const double sin_half = std::sin(half_step);
  BoundResult result;
  result.value = 2.0 * std::abs(f1) * std::cos(theta) / (sin_half * sin_half);
  result.argmax = 0;
  result.method = "closed-form";
  return result;
}

// Reference LHV bound for the N-party two-setting dichotomic family:
// 2^(N/2) for even N, 2^((N-1)/2) for odd N.
inline double mermin_reference_bound(int parties) {
  if (parties < 1) {
    throw ValidationError("reference bound: parties must be >= 1, got " +
                          std::to_string(parties));
  }
  const int exponent = (parties % 2 == 0) ? parties / 2 : (parties - 1) / 2;
  return static_cast<double>(std::uint64_t{1} << exponent);
}

}  // namespace bellkit
