// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Joint probability tables, deterministic local strategies, and mixtures.
//
// A ProbabilityTable stores p(alpha_1..alpha_N | m_1..m_N) for one scenario
// as a dense row-major array indexed [outcome_index * M + setting_index],
// where M = k^N and both flat indices follow the lexicographic codecs in
// scenario.hpp.  Construction validates the two physical requirements that
// every consumer in the library assumes:
//
//   * entries are nonnegative — values in [-1e-12, 0) are treated as
//     floating-point dust and clamped to zero, anything more negative is
//     rejected;
//   * every setting column sums to 1 within 1e-10.
//
// A DeterministicStrategy assigns each party a fixed response table
// m -> alpha(m); the induced probability table is the 0/1 indicator of the
// joint response.  Strategies are indexed 0..d^(kN)-1 with party 1's
// response digits most significant and, within a party, setting 0 most
// significant, so strategy enumeration order is again lexicographic.
//
// LhvMixture is a convex combination of deterministic strategies, the
// general form of a local hidden-variable model in finite scenarios.
//
// random_table draws positive tables from the flat Dirichlet distribution,
// column by column, with a fully pinned generator contract (documented at
// the function) so that a seed reproduces bit-identical tables on any
// conforming platform.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bellkit/scenario.hpp"

namespace bellkit {

// Tolerances for probability-table validation.
inline constexpr double kNegativityTolerance = 1e-12;     // clamp window
inline constexpr double kNormalizationTolerance = 1e-10;  // per-setting sum

// Dense joint probability table for one scenario.
class ProbabilityTable {
 public:
  // Validating constructor.  `values` must hold outcome-major data:
  // values[a * M + m] = p(outcome tuple a | setting tuple m) with a and m
  // the flat indices from scenario.hpp.
  ProbabilityTable(const Scenario& scenario, std::vector<double> values)
      : scenario_(scenario), values_(std::move(values)) {
    const std::uint64_t rows = scenario_.outcome_tuple_count();
    const std::uint64_t cols = scenario_.setting_tuple_count();
    if (values_.size() != rows * cols) {
      throw ValidationError("probability table: expected " +
                            std::to_string(rows * cols) + " entries, got " +
                            std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] < 0.0) {
        if (values_[i] >= -kNegativityTolerance) {
          values_[i] = 0.0;  // numerical dust from upstream arithmetic
        } else {
          throw ValidationError(
              "probability table: entry " + std::to_string(i) + " is " +
              std::to_string(values_[i]) + ", below the -1e-12 clamp window");
        }
      }
    }
    for (std::uint64_t m = 0; m < cols; ++m) {
      double sum = 0.0;
      for (std::uint64_t a = 0; a < rows; ++a) {
        sum += values_[static_cast<std::size_t>(a * cols + m)];
      }
      if (std::abs(sum - 1.0) > kNormalizationTolerance) {
        throw ValidationError("probability table: setting column " +
                              std::to_string(m) + " sums to " +
                              std::to_string(sum) + ", not 1 within 1e-10");
      }
    }
  }

  const Scenario& scenario() const { return scenario_; }
  const std::vector<double>& values() const { return values_; }

  // p at flat indices.
  double at(std::uint64_t outcome_index, std::uint64_t setting_index) const {
    return values_[static_cast<std::size_t>(
        outcome_index * scenario_.setting_tuple_count() + setting_index)];
  }

  // p at tuple arguments (alpha 1-based, m 0-based).
  double probability(const std::vector<int>& alpha, const std::vector<int>& m) const {
    return at(outcomes_to_index(scenario_, alpha), settings_to_index(scenario_, m));
  }

 private:
  Scenario scenario_;
  std::vector<double> values_;
};

// One deterministic local strategy: party j answers outcomes_[j*k + m]
// (1-based) to setting m.  The flat strategy index treats party 1's
// response digits as most significant and setting 0 as the most
// significant digit within a party.
class DeterministicStrategy {
 public:
  DeterministicStrategy(const Scenario& scenario, std::vector<int> outcomes)
      : scenario_(scenario), outcomes_(std::move(outcomes)) {
    const std::size_t expected = static_cast<std::size_t>(scenario_.parties()) *
                                 static_cast<std::size_t>(scenario_.settings());
    if (outcomes_.size() != expected) {
      throw ValidationError("strategy: expected " + std::to_string(expected) +
                            " responses, got " + std::to_string(outcomes_.size()));
    }
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
      if (outcomes_[i] < 1 || outcomes_[i] > scenario_.outcomes()) {
        throw ValidationError("strategy: response " + std::to_string(i) +
                              " = " + std::to_string(outcomes_[i]) +
                              " outside 1.." + std::to_string(scenario_.outcomes()));
      }
    }
  }

  // Decode a flat strategy index in 0..d^(kN)-1.
  static DeterministicStrategy from_index(const Scenario& scenario,
                                          std::uint64_t index) {
    if (index >= scenario.strategy_count()) {
      throw ValidationError("strategy index " + std::to_string(index) +
                            " outside 0.." +
                            std::to_string(scenario.strategy_count() - 1));
    }
    const std::size_t digits = static_cast<std::size_t>(scenario.parties()) *
                               static_cast<std::size_t>(scenario.settings());
    std::vector<int> outcomes(digits);
    const std::uint64_t base = static_cast<std::uint64_t>(scenario.outcomes());
    for (std::size_t i = digits; i-- > 0;) {
      outcomes[i] = static_cast<int>(index % base) + 1;
      index /= base;
    }
    return DeterministicStrategy(scenario, std::move(outcomes));
  }

  const Scenario& scenario() const { return scenario_; }

  // Response of party j (1-based) to setting m (0-based), as a 1-based outcome.
  int response(int party, int setting) const {
    if (party < 1 || party > scenario_.parties()) {
      throw ValidationError("strategy: party " + std::to_string(party) +
                            " outside 1.." + std::to_string(scenario_.parties()));
    }
    if (setting < 0 || setting >= scenario_.settings()) {
      throw ValidationError("strategy: setting " + std::to_string(setting) +
                            " outside 0.." + std::to_string(scenario_.settings() - 1));
    }
    return outcomes_[static_cast<std::size_t>(party - 1) *
                         static_cast<std::size_t>(scenario_.settings()) +
                     static_cast<std::size_t>(setting)];
  }

  const std::vector<int>& responses() const { return outcomes_; }

  // Inverse of from_index.
  std::uint64_t index() const {
    std::uint64_t idx = 0;
    const std::uint64_t base = static_cast<std::uint64_t>(scenario_.outcomes());
    for (int v : outcomes_) idx = idx * base + static_cast<std::uint64_t>(v - 1);
    return idx;
  }

 private:
  Scenario scenario_;
  std::vector<int> outcomes_;
};

// Convex combination of deterministic strategies.
class LhvMixture {
 public:
  LhvMixture(std::vector<DeterministicStrategy> strategies, std::vector<double> weights)
      : strategies_(std::move(strategies)), weights_(std::move(weights)) {
    if (strategies_.empty()) {
      throw ValidationError("mixture: needs at least one strategy");
    }
    if (strategies_.size() != weights_.size()) {
      throw ValidationError("mixture: " + std::to_string(strategies_.size()) +
                            " strategies but " + std::to_string(weights_.size()) +
                            " weights");
    }
    double sum = 0.0;
    for (double w : weights_) {
      if (w < 0.0) {
        throw ValidationError("mixture: negative weight " + std::to_string(w));
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance) {
      throw ValidationError("mixture: weights sum to " + std::to_string(sum) +
                            ", not 1 within 1e-10");
    }
    for (std::size_t i = 1; i < strategies_.size(); ++i) {
      if (strategies_[i].scenario() != strategies_[0].scenario()) {
        throw ValidationError("mixture: strategy " + std::to_string(i) +
                              " belongs to a different scenario");
      }
    }
  }

  const Scenario& scenario() const { return strategies_[0].scenario(); }
  const std::vector<DeterministicStrategy>& strategies() const { return strategies_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<DeterministicStrategy> strategies_;
  std::vector<double> weights_;
};

// Indicator probability table of one deterministic strategy: p = 1 exactly
// when every party's recorded response matches the outcome tuple.
inline ProbabilityTable table_from_strategy(const DeterministicStrategy& strategy) {
  const Scenario& s = strategy.scenario();
  const std::uint64_t rows = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();
  std::vector<double> values(static_cast<std::size_t>(rows * cols), 0.0);
  std::vector<int> m(static_cast<std::size_t>(s.parties()), 0);
  for (std::uint64_t mi = 0; mi < cols; ++mi) {
    std::vector<int> alpha(static_cast<std::size_t>(s.parties()));
    for (int j = 1; j <= s.parties(); ++j) {
      alpha[static_cast<std::size_t>(j - 1)] =
          strategy.response(j, m[static_cast<std::size_t>(j - 1)]);
    }
    const std::uint64_t ai = outcomes_to_index(s, alpha);
    values[static_cast<std::size_t>(ai * cols + mi)] = 1.0;
    next_tuple(m, s.settings());
  }
  return ProbabilityTable(s, std::move(values));
}

// Weighted sum of the indicator tables of a mixture.
inline ProbabilityTable table_from_mixture(const LhvMixture& mixture) {
  const Scenario& s = mixture.scenario();
  const std::uint64_t rows = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();
  std::vector<double> values(static_cast<std::size_t>(rows * cols), 0.0);
  for (std::size_t i = 0; i < mixture.strategies().size(); ++i) {
    const double w = mixture.weights()[i];
    if (w == 0.0) continue;
    const ProbabilityTable part = table_from_strategy(mixture.strategies()[i]);
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      values[idx] += w * part.values()[idx];
    }
  }
  return ProbabilityTable(s, std::move(values));
}

// Draws a strictly positive probability table with each setting column an
// independent sample from the flat Dirichlet distribution.
//
// Generator contract (pinned so that equal seeds give bit-identical tables):
//   * engine: std::mt19937_64 seeded directly with `seed`;
//   * one exponential variate per (setting tuple, outcome tuple) pair,
//     visiting setting tuples in lexicographic order (outer loop) and
//     outcome tuples in lexicographic order (inner loop);
//   * each variate is e = -log1p(-u) with u = (engine() >> 11) * 2^-53,
//     i.e. a uniform double in [0, 1) built from the top 53 bits;
//   * after filling a setting column, the column is divided by its sum.
// No library distribution objects are used, because their streams are not
// specified identically across standard-library implementations.
inline ProbabilityTable random_table(const Scenario& scenario, std::uint64_t seed) {
  const std::uint64_t rows = scenario.outcome_tuple_count();
  const std::uint64_t cols = scenario.setting_tuple_count();
  std::vector<double> values(static_cast<std::size_t>(rows * cols), 0.0);
  std::mt19937_64 engine(seed);
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  for (std::uint64_t m = 0; m < cols; ++m) {
    double sum = 0.0;
    for (std::uint64_t a = 0; a < rows; ++a) {
      const double u = static_cast<double>(engine() >> 11) * kScale;
      const double e = -std::log1p(-u);
      values[static_cast<std::size_t>(a * cols + m)] = e;
      sum += e;
    }
    for (std::uint64_t a = 0; a < rows; ++a) {
      values[static_cast<std::size_t>(a * cols + m)] /= sum;
    }
  }
  return ProbabilityTable(scenario, std::move(values));
}

// No-signalling diagnostic: for each party j, setting mu of that party, and
// that party's outcome a, the marginal p(a | mu, rest) must not depend on
// the other parties' settings.  Returns the worst max-minus-min spread over
// all such cells; 0 for exactly no-signalling tables, and around 1e-16 for
// tables built from mixtures.  This is a report, not a validator: generic
// random tables are signalling and legitimately score O(1).
inline double no_signalling_report(const ProbabilityTable& table) {
  const Scenario& s = table.scenario();
  const std::uint64_t cols = s.setting_tuple_count();
  const std::uint64_t rows = s.outcome_tuple_count();
  double worst = 0.0;
  for (int j = 1; j <= s.parties(); ++j) {
    for (int mu = 0; mu < s.settings(); ++mu) {
      for (int a = 1; a <= s.outcomes(); ++a) {
        double lo = 2.0;
        double hi = -1.0;
        // Scan every joint setting whose j-th digit equals mu and fold the
        // marginal probability of outcome a at site j.
        std::vector<int> m(static_cast<std::size_t>(s.parties()), 0);
        for (std::uint64_t mi = 0; mi < cols; ++mi) {
          if (m[static_cast<std::size_t>(j - 1)] == mu) {
            double marginal = 0.0;
            for (std::uint64_t ai = 0; ai < rows; ++ai) {
              const std::vector<int> alpha = outcomes_from_index(s, ai);
              if (alpha[static_cast<std::size_t>(j - 1)] == a) {
                marginal += table.at(ai, mi);
              }
            }
            lo = std::min(lo, marginal);
            hi = std::max(hi, marginal);
          }
          next_tuple(m, s.settings());
        }
        worst = std::max(worst, hi - lo);
      }
    }
  }
  return worst;
}

}  // namespace bellkit
