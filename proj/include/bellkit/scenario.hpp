// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Measurement scenarios, sign vectors, and the shared phase arithmetic.
//
// A scenario fixes N parties, k measurement settings per party, and d
// outcomes per measurement.  Every index convention used throughout the
// library is anchored here:
//
//   * settings   m_j      are 0-based, m_j in {0, ..., k-1},
//   * outcomes   alpha_j  are 1-based, alpha_j in {1, ..., d},
//   * moment orders n_j   are 1-based, n_j in {1, ..., d-1} (the zeroth
//     moment is fixed by normalization and is never stored).
//
// Tuples over the parties are enumerated lexicographically with party 1
// as the most significant digit, so the tuple (t_1, ..., t_N) with per-site
// range R maps to the flat index
//
//     index = ((t_1' * R + t_2') * R + ...) + t_N',
//
// where t_j' is the 0-based digit.  All enumeration loops in the library
// walk these flat indices in increasing order, which makes tie-breaking
// rules ("lowest index wins") deterministic and reproducible.
//
// Phase arithmetic: the library works in the cyclic group generated by
//
//     zeta = exp(i 2 pi / (d k)),      omega = zeta^k = exp(i 2 pi / d).
//
// Instead of accumulating floating-point angles, every phase is carried as
// an integer exponent of zeta and reduced modulo d*k before a single table
// lookup.  This keeps repeated products exact: the identity zeta^k == omega
// holds to ~1e-16 for every d <= 16, k <= 8 because both sides are read
// from the same table.
//
// SignVector models the per-party conjugation choices c in {+1, -1}^N that
// select a branch of the correlation function.  Sign vectors are indexed
// canonically by 1..2^N: bit (j-1) of (index-1) is set exactly when party
// j carries a minus sign, so index 1 is the all-plus vector.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellkit {

// Thrown when a scenario, sign vector, table, or functional fails its
// structural checks (bad dimensions, broken normalization, mismatched
// shapes, out-of-range indices).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an exact enumeration would exceed the configured cap on the
// number of deterministic strategies (or when the count itself overflows
// 64-bit arithmetic, which is treated as "too large" as well).
class EnumerationTooLarge : public std::runtime_error {
 public:
  explicit EnumerationTooLarge(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Computes base^exp in unsigned 64-bit arithmetic, throwing
// EnumerationTooLarge when the product would wrap.  Used for all the
// combinatorial counts below so that an oversized scenario is rejected
// loudly instead of silently truncating.
inline std::uint64_t checked_pow_u64(std::uint64_t base, std::uint64_t exp,
                                     const char* what) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) {
      throw EnumerationTooLarge(std::string(what) +
                                ": count overflows 64-bit arithmetic");
    }
    result *= base;
  }
  return result;
}

}  // namespace detail

// A Bell scenario: N parties, k settings per party, d outcomes per setting.
class Scenario {
 public:
  // Default cap on the number of deterministic strategies an exact
  // enumeration is allowed to touch.
  static constexpr std::uint64_t kDefaultStrategyCap = 100'000'000;

  Scenario(int parties, int settings, int outcomes)
      : parties_(parties), settings_(settings), outcomes_(outcomes) {
    if (parties < 1) {
      throw ValidationError("scenario: parties must be >= 1, got " +
                            std::to_string(parties));
    }
    if (settings < 1) {
      throw ValidationError("scenario: settings must be >= 1, got " +
                            std::to_string(settings));
    }
    if (outcomes < 2) {
      throw ValidationError("scenario: outcomes must be >= 2, got " +
                            std::to_string(outcomes));
    }
    // Materialize the derived counts once; each constructor call validates
    // that the scenario's joint spaces fit in 64 bits.
    setting_tuples_ = detail::checked_pow_u64(
        static_cast<std::uint64_t>(settings_), parties_, "setting tuples");
    outcome_tuples_ = detail::checked_pow_u64(
        static_cast<std::uint64_t>(outcomes_), parties_, "outcome tuples");
    moment_tuples_ = detail::checked_pow_u64(
        static_cast<std::uint64_t>(outcomes_ - 1), parties_, "moment tuples");
    const std::uint64_t per_site = detail::checked_pow_u64(
        static_cast<std::uint64_t>(outcomes_),
        static_cast<std::uint64_t>(settings_), "strategies per site");
    strategy_count_ = detail::checked_pow_u64(per_site, parties_,
                                              "deterministic strategies");
  }

  int parties() const { return parties_; }
  int settings() const { return settings_; }
  int outcomes() const { return outcomes_; }

  // Number of joint setting tuples k^N.
  std::uint64_t setting_tuple_count() const { return setting_tuples_; }
  // Number of joint outcome tuples d^N.
  std::uint64_t outcome_tuple_count() const { return outcome_tuples_; }
  // Number of joint moment-order tuples (d-1)^N.
  std::uint64_t moment_tuple_count() const { return moment_tuples_; }
  // Number of deterministic local strategies d^(k*N).
  std::uint64_t strategy_count() const { return strategy_count_; }

  // Order of the phase group: phases live in zeta^Z with zeta of order d*k.
  int phase_order() const { return outcomes_ * settings_; }

  bool operator==(const Scenario& other) const {
    return parties_ == other.parties_ && settings_ == other.settings_ &&
           outcomes_ == other.outcomes_;
  }
  bool operator!=(const Scenario& other) const { return !(*this == other); }

  std::string to_string() const {
    return "(N=" + std::to_string(parties_) + ", k=" + std::to_string(settings_) +
           ", d=" + std::to_string(outcomes_) + ")";
  }

 private:
  int parties_;
  int settings_;
  int outcomes_;
  std::uint64_t setting_tuples_;
  std::uint64_t outcome_tuples_;
  std::uint64_t moment_tuples_;
  std::uint64_t strategy_count_;
};

// A choice of conjugation sign c_j in {+1, -1} for each party.
//
// Canonical indexing: signs are numbered 1..2^N with bit (j-1) of
// (index - 1) set exactly when c_j = -1.  Index 1 is therefore the
// all-plus vector and index 2^N the all-minus vector.
class SignVector {
 public:
  // All-plus sign vector for `parties` parties.
  explicit SignVector(int parties) : signs_(check_size(parties), +1) {}

  // Construct from explicit entries, each +1 or -1.
  explicit SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
    check_size(static_cast<int>(signs_.size()));
    for (std::size_t j = 0; j < signs_.size(); ++j) {
      if (signs_[j] != +1 && signs_[j] != -1) {
        throw ValidationError("sign vector: entry " + std::to_string(j + 1) +
                              " must be +1 or -1, got " +
                              std::to_string(signs_[j]));
      }
    }
  }

  // Construct from the canonical index in 1..2^N.
  static SignVector from_index(int parties, std::uint64_t index) {
    check_size(parties);
    const std::uint64_t count = std::uint64_t{1} << parties;
    if (index < 1 || index > count) {
      throw ValidationError("sign vector: index " + std::to_string(index) +
                            " outside 1.." + std::to_string(count));
    }
    std::vector<int> signs(parties, +1);
    const std::uint64_t bits = index - 1;
    for (int j = 0; j < parties; ++j) {
      if ((bits >> j) & 1u) signs[j] = -1;
    }
    return SignVector(std::move(signs));
  }

  int parties() const { return static_cast<int>(signs_.size()); }

  // Sign of party j, 1-based.
  int sign(int party) const {
    if (party < 1 || party > parties()) {
      throw ValidationError("sign vector: party " + std::to_string(party) +
                            " outside 1.." + std::to_string(parties()));
    }
    return signs_[static_cast<std::size_t>(party - 1)];
  }

  const std::vector<int>& signs() const { return signs_; }

  // Canonical index in 1..2^N (inverse of from_index).
  std::uint64_t index() const {
    std::uint64_t bits = 0;
    for (int j = 0; j < parties(); ++j) {
      if (signs_[static_cast<std::size_t>(j)] < 0) bits |= std::uint64_t{1} << j;
    }
    return bits + 1;
  }

  bool all_plus() const {
    for (int s : signs_) {
      if (s < 0) return false;
    }
    return true;
  }

  bool operator==(const SignVector& other) const { return signs_ == other.signs_; }
  bool operator!=(const SignVector& other) const { return !(*this == other); }

  // Compact text form, e.g. "+-+" for c = (+1, -1, +1).
  std::string to_string() const {
    std::string out;
    out.reserve(signs_.size());
    for (int s : signs_) out.push_back(s > 0 ? '+' : '-');
    return out;
  }

 private:
  static int check_size(int parties) {
    if (parties < 1 || parties > 62) {
      throw ValidationError("sign vector: parties must be in 1..62, got " +
                            std::to_string(parties));
    }
    return parties;
  }

  std::vector<int> signs_;
};

// Shared table of the d*k-th roots of unity for one scenario.
//
// unit_phase(e) returns zeta^e with zeta = exp(i 2 pi / (d k)), for any
// (possibly negative) integer exponent e; omega_pow(e) returns omega^e with
// omega = zeta^k.  Both reduce the exponent into [0, d*k) with exact integer
// arithmetic and then read a precomputed table entry, so chains of phase
// products never accumulate rounding error.
class PhaseTable {
 public:
  explicit PhaseTable(const Scenario& scenario)
      : order_(scenario.phase_order()), settings_(scenario.settings()) {
    table_.reserve(static_cast<std::size_t>(order_));
    const double step = 2.0 * pi() / static_cast<double>(order_);
    for (int e = 0; e < order_; ++e) {
      if ((4 * e) % order_ == 0) {
        // Quarter-circle points have exact double values; using them keeps
        // dichotomic coefficient tables (and the bounds enumerated from
        // them) free of the ~1e-16 dust that cos(pi/2) would inject.
        static constexpr double kQuarter[4][2] = {
            {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        const int quadrant = (4 * e / order_) % 4;
        table_.emplace_back(kQuarter[quadrant][0], kQuarter[quadrant][1]);
      } else {
        const double angle = step * static_cast<double>(e);
        table_.emplace_back(std::cos(angle), std::sin(angle));
      }
    }
  }

  int order() const { return order_; }

  // zeta^exponent for any integer exponent.
  std::complex<double> unit_phase(std::int64_t exponent) const {
    const std::int64_t order = order_;
    std::int64_t e = exponent % order;
    if (e < 0) e += order;
    return table_[static_cast<std::size_t>(e)];
  }

  // omega^exponent = zeta^(k * exponent).
  std::complex<double> omega_pow(std::int64_t exponent) const {
    return unit_phase(exponent * settings_);
  }

  static constexpr double pi() { return 3.141592653589793238462643383279502884; }

 private:
  int order_;
  int settings_;
  std::vector<std::complex<double>> table_;
};

// --- Tuple enumeration codecs -------------------------------------------
//
// The three tuple families (settings, outcomes, moment orders) share one
// mixed-radix layout: party 1 is the most significant digit and the flat
// index increases lexicographically.  The codecs below convert between a
// flat index and the per-party digit vector; enumeration loops are then a
// single counted for-loop over flat indices plus one decode, or an in-place
// odometer increment for hot paths.

// Decodes flat index -> settings tuple (0-based entries in {0..k-1}).
inline std::vector<int> settings_from_index(const Scenario& s, std::uint64_t index) {
  if (index >= s.setting_tuple_count()) {
    throw ValidationError("settings index " + std::to_string(index) +
                          " outside 0.." +
                          std::to_string(s.setting_tuple_count() - 1));
  }
  std::vector<int> m(static_cast<std::size_t>(s.parties()));
  const std::uint64_t base = static_cast<std::uint64_t>(s.settings());
  for (int j = s.parties(); j-- > 0;) {
    m[static_cast<std::size_t>(j)] = static_cast<int>(index % base);
    index /= base;
  }
  return m;
}

// Encodes settings tuple -> flat index.
inline std::uint64_t settings_to_index(const Scenario& s, const std::vector<int>& m) {
  if (static_cast<int>(m.size()) != s.parties()) {
    throw ValidationError("settings tuple has " + std::to_string(m.size()) +
                          " entries; scenario has " +
                          std::to_string(s.parties()) + " parties");
  }
  std::uint64_t index = 0;
  for (int j = 0; j < s.parties(); ++j) {
    const int mj = m[static_cast<std::size_t>(j)];
    if (mj < 0 || mj >= s.settings()) {
      throw ValidationError("setting m_" + std::to_string(j + 1) + " = " +
                            std::to_string(mj) + " outside 0.." +
                            std::to_string(s.settings() - 1));
    }
    index = index * static_cast<std::uint64_t>(s.settings()) +
            static_cast<std::uint64_t>(mj);
  }
  return index;
}

// Decodes flat index -> outcome tuple (1-based entries in {1..d}).
inline std::vector<int> outcomes_from_index(const Scenario& s, std::uint64_t index) {
  if (index >= s.outcome_tuple_count()) {
    throw ValidationError("outcomes index " + std::to_string(index) +
                          " outside 0.." +
                          std::to_string(s.outcome_tuple_count() - 1));
  }
  std::vector<int> alpha(static_cast<std::size_t>(s.parties()));
  const std::uint64_t base = static_cast<std::uint64_t>(s.outcomes());
  for (int j = s.parties(); j-- > 0;) {
    alpha[static_cast<std::size_t>(j)] = static_cast<int>(index % base) + 1;
    index /= base;
  }
  return alpha;
}

// Encodes outcome tuple -> flat index.
inline std::uint64_t outcomes_to_index(const Scenario& s, const std::vector<int>& alpha) {
  if (static_cast<int>(alpha.size()) != s.parties()) {
    throw ValidationError("outcome tuple has " + std::to_string(alpha.size()) +
                          " entries; scenario has " +
                          std::to_string(s.parties()) + " parties");
  }
  std::uint64_t index = 0;
  for (int j = 0; j < s.parties(); ++j) {
    const int aj = alpha[static_cast<std::size_t>(j)];
    if (aj < 1 || aj > s.outcomes()) {
      throw ValidationError("outcome alpha_" + std::to_string(j + 1) + " = " +
                            std::to_string(aj) + " outside 1.." +
                            std::to_string(s.outcomes()));
    }
    index = index * static_cast<std::uint64_t>(s.outcomes()) +
            static_cast<std::uint64_t>(aj - 1);
  }
  return index;
}

// Decodes flat index -> moment-order tuple (1-based entries in {1..d-1}).
inline std::vector<int> moments_from_index(const Scenario& s, std::uint64_t index) {
  if (index >= s.moment_tuple_count()) {
    throw ValidationError("moments index " + std::to_string(index) +
                          " outside 0.." +
                          std::to_string(s.moment_tuple_count() - 1));
  }
  std::vector<int> n(static_cast<std::size_t>(s.parties()));
  const std::uint64_t base = static_cast<std::uint64_t>(s.outcomes() - 1);
  for (int j = s.parties(); j-- > 0;) {
    n[static_cast<std::size_t>(j)] = static_cast<int>(index % base) + 1;
    index /= base;
  }
  return n;
}

// Encodes moment-order tuple -> flat index.
inline std::uint64_t moments_to_index(const Scenario& s, const std::vector<int>& n) {
  if (static_cast<int>(n.size()) != s.parties()) {
    throw ValidationError("moment tuple has " + std::to_string(n.size()) +
                          " entries; scenario has " +
                          std::to_string(s.parties()) + " parties");
  }
  std::uint64_t index = 0;
  for (int j = 0; j < s.parties(); ++j) {
    const int nj = n[static_cast<std::size_t>(j)];
    if (nj < 1 || nj > s.outcomes() - 1) {
      throw ValidationError("moment order n_" + std::to_string(j + 1) + " = " +
                            std::to_string(nj) + " outside 1.." +
                            std::to_string(s.outcomes() - 1));
    }
    index = index * static_cast<std::uint64_t>(s.outcomes() - 1) +
            static_cast<std::uint64_t>(nj - 1);
  }
  return index;
}

// In-place odometer step over a 0-based digit vector with uniform radix.
// Returns false once the vector wraps back to all zeros (i.e. enumeration
// is complete).  Digits increment rightmost-first so successive states
// follow the flat-index order of the codecs above.
inline bool next_tuple(std::vector<int>& digits, int radix) {
  for (std::size_t j = digits.size(); j-- > 0;) {
    if (++digits[j] < radix) return true;
    digits[j] = 0;
  }
  return false;
}

}  // namespace bellkit
