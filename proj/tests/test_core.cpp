// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Tests for the scenario layer (validation, codecs, phase tables, sign
// vectors) and for the probability/correlation layer (table validation,
// deterministic strategies, mixtures, the pinned random-table generator,
// and the moment transform with its inverse).

#include <bellkit/correlation.hpp>
#include <bellkit/probability.hpp>
#include <bellkit/scenario.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace {

using bellkit::CorrelationTensor;
using bellkit::DeterministicStrategy;
using bellkit::LhvMixture;
using bellkit::PhaseTable;
using bellkit::ProbabilityTable;
using bellkit::Scenario;
using bellkit::SignVector;
using bellkit::ValidationError;

// Uniform table: every outcome tuple has probability d^-N for each setting.
ProbabilityTable uniform_table(const Scenario& s) {
  const double p = 1.0 / static_cast<double>(s.outcome_tuple_count());
  std::vector<double> v(s.outcome_tuple_count() * s.setting_tuple_count(), p);
  return ProbabilityTable(s, v);
}

}  // namespace

TEST_CASE("scenario validates its shape parameters") {
  REQUIRE_NOTHROW(Scenario(1, 1, 2));
  REQUIRE_NOTHROW(Scenario(3, 4, 5));
  REQUIRE_THROWS_AS(Scenario(0, 2, 2), ValidationError);
  REQUIRE_THROWS_AS(Scenario(2, 0, 2), ValidationError);
  REQUIRE_THROWS_AS(Scenario(2, 2, 1), ValidationError);
  REQUIRE_THROWS_AS(Scenario(-1, 2, 2), ValidationError);
}

TEST_CASE("scenario exposes tuple and strategy counts") {
  const Scenario s(3, 2, 4);
  REQUIRE(s.parties() == 3);
  REQUIRE(s.settings() == 2);
  REQUIRE(s.outcomes() == 4);
  REQUIRE(s.setting_tuple_count() == 8);     // k^N
  REQUIRE(s.outcome_tuple_count() == 64);    // d^N
  REQUIRE(s.moment_tuple_count() == 27);     // (d-1)^N
  REQUIRE(s.strategy_count() == 4096);       // d^(kN)
  REQUIRE(s.phase_order() == 8);             // d*k
  REQUIRE(s.to_string() == "(N=3, k=2, d=4)");
  REQUIRE(s == Scenario(3, 2, 4));
  REQUIRE(s != Scenario(3, 2, 5));
}

TEST_CASE("scenario rejects strategy spaces that overflow 64 bits") {
  // 2^(2*40) = 2^80 deterministic strategies cannot be counted in uint64.
  REQUIRE_THROWS_AS(Scenario(40, 2, 2), bellkit::EnumerationTooLarge);
}

TEST_CASE("sign vectors map bits to minus signs") {
  const int parties = 3;
  for (int index = 1; index <= 8; ++index) {
    const SignVector c = SignVector::from_index(parties, index);
    REQUIRE(c.index() == index);
    for (int j = 1; j <= parties; ++j) {
      const int expected = ((index - 1) >> (j - 1)) & 1 ? -1 : 1;
      REQUIRE(c.sign(j) == expected);
    }
  }
  REQUIRE(SignVector::from_index(3, 1).to_string() == "+++");
  REQUIRE(SignVector::from_index(3, 2).to_string() == "-++");
  REQUIRE(SignVector::from_index(3, 5).to_string() == "++-");
  REQUIRE(SignVector(3).all_plus());
  REQUIRE_FALSE(SignVector::from_index(3, 4).all_plus());
  REQUIRE(SignVector({1, -1, 1}).to_string() == "+-+");
  REQUIRE_THROWS_AS(SignVector({1, 0, 1}), ValidationError);
  REQUIRE_THROWS_AS(SignVector::from_index(2, 0), ValidationError);
  REQUIRE_THROWS_AS(SignVector::from_index(2, 5), ValidationError);
}

TEST_CASE("phase table agrees with polar form and is periodic") {
  for (int d = 2; d <= 16; d *= 2) {
    for (int k = 1; k <= 8; ++k) {
      const Scenario s(1, k, d);
      const PhaseTable phases(s);
      const int order = s.phase_order();
      for (int e = -order; e <= 2 * order; ++e) {
        const double angle =
            2.0 * PhaseTable::pi() * static_cast<double>(e) / order;
        const std::complex<double> reference(std::cos(angle), std::sin(angle));
        REQUIRE(std::abs(phases.unit_phase(e) - reference) < 1e-14);
        REQUIRE(std::abs(phases.unit_phase(e) - phases.unit_phase(e + order)) ==
                0.0);
      }
    }
  }
}

TEST_CASE("phase table is exact at quarter-circle exponents") {
  const Scenario s(2, 2, 2);  // phase order 4: the table is {1, i, -1, -i}
  const PhaseTable phases(s);
  REQUIRE(phases.unit_phase(0) == std::complex<double>(1.0, 0.0));
  REQUIRE(phases.unit_phase(1) == std::complex<double>(0.0, 1.0));
  REQUIRE(phases.unit_phase(2) == std::complex<double>(-1.0, 0.0));
  REQUIRE(phases.unit_phase(3) == std::complex<double>(0.0, -1.0));
  REQUIRE(phases.unit_phase(-1) == std::complex<double>(0.0, -1.0));
}

TEST_CASE("the k-th power of the basic phase is the outcome phase") {
  for (int d = 2; d <= 7; ++d) {
    for (int k = 1; k <= 5; ++k) {
      const Scenario s(2, k, d);
      const PhaseTable phases(s);
      for (int x = 0; x < d; ++x) {
        std::complex<double> zeta_pow(1.0, 0.0);
        for (int i = 0; i < k; ++i) zeta_pow *= phases.unit_phase(x);
        REQUIRE(std::abs(phases.omega_pow(x) - zeta_pow) < 1e-14);
      }
    }
  }
}

TEST_CASE("tuple codecs are lexicographic bijections") {
  const Scenario s(2, 3, 4);

  // Settings count from 0; party 1 is the most significant digit.
  REQUIRE(bellkit::settings_from_index(s, 0) == std::vector<int>{0, 0});
  REQUIRE(bellkit::settings_from_index(s, 3) == std::vector<int>{1, 0});
  REQUIRE(bellkit::settings_from_index(s, 8) == std::vector<int>{2, 2});
  for (std::uint64_t i = 0; i < s.setting_tuple_count(); ++i) {
    REQUIRE(bellkit::settings_to_index(s, bellkit::settings_from_index(s, i)) ==
            i);
  }

  // Outcomes count from 1.
  REQUIRE(bellkit::outcomes_from_index(s, 0) == std::vector<int>{1, 1});
  REQUIRE(bellkit::outcomes_from_index(s, 15) == std::vector<int>{4, 4});
  for (std::uint64_t i = 0; i < s.outcome_tuple_count(); ++i) {
    REQUIRE(bellkit::outcomes_to_index(s, bellkit::outcomes_from_index(s, i)) ==
            i);
  }

  // Moment orders count from 1 and stop at d-1.
  REQUIRE(bellkit::moments_from_index(s, 0) == std::vector<int>{1, 1});
  REQUIRE(bellkit::moments_from_index(s, 8) == std::vector<int>{3, 3});
  for (std::uint64_t i = 0; i < s.moment_tuple_count(); ++i) {
    REQUIRE(bellkit::moments_to_index(s, bellkit::moments_from_index(s, i)) ==
            i);
  }
}

TEST_CASE("next_tuple walks digits in lexicographic order") {
  std::vector<int> digits{0, 0, 0};
  int count = 1;
  std::vector<int> previous = digits;
  while (bellkit::next_tuple(digits, 3)) {
    ++count;
    REQUIRE(digits > previous);  // lexicographic successor
    previous = digits;
  }
  REQUIRE(count == 27);
  REQUIRE(digits == std::vector<int>{0, 0, 0});  // wrapped around
}

TEST_CASE("probability tables accept clamped dust and reject real negativity") {
  const Scenario s(2, 2, 2);
  std::vector<double> v(16, 0.25);

  SECTION("valid uniform table") { REQUIRE_NOTHROW(ProbabilityTable(s, v)); }

  SECTION("tiny negative dust is clamped to zero") {
    v[0] = -1e-13;          // outcome 0 of setting column 0
    v[4] = 0.5 + 1e-13;     // outcome 1 of the same column keeps the sum at 1
    v[8] = 0.25;
    v[12] = 0.25;
    const ProbabilityTable t(s, v);
    REQUIRE(t.at(0, 0) == 0.0);
  }

  SECTION("genuine negativity is rejected") {
    v[0] = -1e-11;
    v[4] = 0.5 + 1e-11;
    REQUIRE_THROWS_AS(ProbabilityTable(s, v), ValidationError);
  }

  SECTION("broken normalization is rejected") {
    v[0] = 0.25 + 2e-10;
    REQUIRE_THROWS_AS(ProbabilityTable(s, v), ValidationError);
  }

  SECTION("normalization dust inside the tolerance is accepted") {
    v[0] = 0.25 + 5e-11;
    REQUIRE_NOTHROW(ProbabilityTable(s, v));
  }

  SECTION("wrong element count is rejected") {
    v.pop_back();
    REQUIRE_THROWS_AS(ProbabilityTable(s, v), ValidationError);
  }
}

TEST_CASE("probability table exposes the documented memory layout") {
  const Scenario s(2, 2, 2);
  std::vector<double> v(16, 0.0);
  // Column for setting index 2 = (m1=1, m2=0): put everything on alpha
  // index 3 = (alpha1=2, alpha2=2); other settings stay uniform.
  for (std::uint64_t mi = 0; mi < 4; ++mi) {
    for (std::uint64_t ai = 0; ai < 4; ++ai) {
      v[ai * 4 + mi] = (mi == 2) ? (ai == 3 ? 1.0 : 0.0) : 0.25;
    }
  }
  const ProbabilityTable t(s, v);
  REQUIRE(t.at(3, 2) == 1.0);
  REQUIRE(t.at(0, 2) == 0.0);
  REQUIRE(t.probability({2, 2}, {1, 0}) == 1.0);
  REQUIRE(t.values()[3 * 4 + 2] == 1.0);
}

TEST_CASE("deterministic strategies are a base-d bijection") {
  const Scenario s(2, 2, 3);
  for (std::uint64_t index = 0; index < s.strategy_count(); ++index) {
    const DeterministicStrategy strategy =
        DeterministicStrategy::from_index(s, index);
    REQUIRE(strategy.index() == index);
    for (int party = 1; party <= 2; ++party) {
      for (int setting = 0; setting < 2; ++setting) {
        const int response = strategy.response(party, setting);
        REQUIRE(response >= 1);
        REQUIRE(response <= 3);
      }
    }
  }
  // Party-major, setting-major digit order: index 1 flips the response of
  // the last party's last setting.
  const DeterministicStrategy first = DeterministicStrategy::from_index(s, 0);
  const DeterministicStrategy second = DeterministicStrategy::from_index(s, 1);
  REQUIRE(first.response(2, 1) == 1);
  REQUIRE(second.response(2, 1) == 2);
  REQUIRE(second.response(1, 0) == 1);
}

TEST_CASE("strategy tables are indicator tables") {
  const Scenario s(2, 2, 3);
  const DeterministicStrategy strategy =
      DeterministicStrategy::from_index(s, 47);
  const ProbabilityTable t = bellkit::table_from_strategy(strategy);
  for (std::uint64_t mi = 0; mi < s.setting_tuple_count(); ++mi) {
    const std::vector<int> m = bellkit::settings_from_index(s, mi);
    double total = 0.0;
    for (std::uint64_t ai = 0; ai < s.outcome_tuple_count(); ++ai) {
      const std::vector<int> alpha = bellkit::outcomes_from_index(s, ai);
      const bool predicted = alpha[0] == strategy.response(1, m[0]) &&
                             alpha[1] == strategy.response(2, m[1]);
      REQUIRE(t.at(ai, mi) == (predicted ? 1.0 : 0.0));
      total += t.at(ai, mi);
    }
    REQUIRE(total == 1.0);
  }
}

TEST_CASE("mixtures validate their weights") {
  const Scenario s(2, 2, 2);
  const std::vector<DeterministicStrategy> strategies{
      DeterministicStrategy::from_index(s, 0),
      DeterministicStrategy::from_index(s, 7)};
  REQUIRE_NOTHROW(LhvMixture(strategies, {0.5, 0.5}));
  REQUIRE_THROWS_AS(LhvMixture(strategies, {0.6, 0.6}), ValidationError);
  REQUIRE_THROWS_AS(LhvMixture(strategies, {1.2, -0.2}), ValidationError);
  REQUIRE_THROWS_AS(LhvMixture(strategies, {1.0}), ValidationError);
}

TEST_CASE("mixture tables are convex combinations of strategy tables") {
  const Scenario s(2, 2, 2);
  const DeterministicStrategy a = DeterministicStrategy::from_index(s, 3);
  const DeterministicStrategy b = DeterministicStrategy::from_index(s, 12);
  const LhvMixture mixture({a, b}, {0.25, 0.75});
  const ProbabilityTable t = bellkit::table_from_mixture(mixture);
  const ProbabilityTable ta = bellkit::table_from_strategy(a);
  const ProbabilityTable tb = bellkit::table_from_strategy(b);
  for (std::size_t i = 0; i < t.values().size(); ++i) {
    REQUIRE(t.values()[i] ==
            Catch::Approx(0.25 * ta.values()[i] + 0.75 * tb.values()[i])
                .margin(1e-15));
  }
  REQUIRE(bellkit::no_signalling_report(t) < 1e-15);
}

TEST_CASE("signalling tables are detected by the marginal report") {
  const Scenario s(2, 2, 2);
  // Party 1 outputs its own setting regardless of anything else; party 2
  // outputs party 1's setting -- a maximally signalling table.
  std::vector<double> v(16, 0.0);
  for (std::uint64_t mi = 0; mi < 4; ++mi) {
    const std::vector<int> m = bellkit::settings_from_index(s, mi);
    const std::vector<int> alpha{m[0] + 1, m[0] + 1};
    v[bellkit::outcomes_to_index(s, alpha) * 4 + mi] = 1.0;
  }
  const ProbabilityTable t(s, v);
  REQUIRE(bellkit::no_signalling_report(t) == 1.0);
}

TEST_CASE("random tables are valid, seeded, and match the pinned generator") {
  const Scenario s(2, 3, 3);
  const ProbabilityTable t1 = bellkit::random_table(s, 42);
  const ProbabilityTable t2 = bellkit::random_table(s, 42);
  const ProbabilityTable t3 = bellkit::random_table(s, 43);
  REQUIRE(t1.values() == t2.values());
  REQUIRE(t1.values() != t3.values());

  // Reference implementation of the documented generator contract:
  // mt19937_64(seed); for each setting column in lexicographic order draw
  // one exponential variate per outcome tuple (also lexicographic) via
  // u = (engine() >> 11) * 2^-53, e = -log1p(-u), then normalize.
  std::mt19937_64 engine(42);
  constexpr double kScale = 1.0 / 9007199254740992.0;
  const std::uint64_t rows = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();
  std::vector<double> expected(rows * cols, 0.0);
  for (std::uint64_t mi = 0; mi < cols; ++mi) {
    double total = 0.0;
    std::vector<double> draws(rows, 0.0);
    for (std::uint64_t ai = 0; ai < rows; ++ai) {
      const double u = static_cast<double>(engine() >> 11) * kScale;
      draws[ai] = -std::log1p(-u);
      total += draws[ai];
    }
    for (std::uint64_t ai = 0; ai < rows; ++ai) {
      expected[ai * cols + mi] = draws[ai] / total;
    }
  }
  REQUIRE(t1.values() == expected);
}

TEST_CASE("moment transform inverts exactly within tolerance") {
  std::uint64_t seed = 1000;
  for (int parties : {1, 2, 3}) {
    for (int settings : {1, 2, 3}) {
      for (int outcomes : {2, 3, 4}) {
        const Scenario s(parties, settings, outcomes);
        const ProbabilityTable table = bellkit::random_table(s, seed++);
        for (int ci = 1; ci <= (1 << parties); ++ci) {
          const SignVector c = SignVector::from_index(parties, ci);
          const CorrelationTensor tensor =
              bellkit::correlations_from_probabilities(table, c);
          const ProbabilityTable back =
              bellkit::probabilities_from_correlations(tensor);
          double worst = 0.0;
          for (std::size_t i = 0; i < table.values().size(); ++i) {
            worst = std::max(worst,
                             std::abs(table.values()[i] - back.values()[i]));
          }
          REQUIRE(worst <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("correlation tensors carry a unit normalization component") {
  const Scenario s(2, 2, 3);
  const ProbabilityTable table = bellkit::random_table(s, 7);
  const CorrelationTensor tensor =
      bellkit::correlations_from_probabilities(table, SignVector(2));
  // The order tuple (d, d) sits at the lexicographically last index of the
  // full lattice and must carry the zeroth moment, i.e. exactly 1.
  const std::uint64_t norm_index = s.outcome_tuple_count() - 1;
  for (std::uint64_t mi = 0; mi < s.setting_tuple_count(); ++mi) {
    REQUIRE(std::abs(tensor.at(norm_index, mi) -
                     std::complex<double>(1.0, 0.0)) < 1e-12);
  }
  for (std::uint64_t ni = 0; ni < s.outcome_tuple_count(); ++ni) {
    for (std::uint64_t mi = 0; mi < s.setting_tuple_count(); ++mi) {
      REQUIRE(std::abs(tensor.at(ni, mi)) <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("correlation tensor on a deterministic strategy matches the formula") {
  const Scenario s(2, 2, 3);
  const SignVector c = SignVector::from_index(2, 2);  // (-, +)
  const DeterministicStrategy strategy =
      DeterministicStrategy::from_index(s, 47);
  const ProbabilityTable table = bellkit::table_from_strategy(strategy);
  const CorrelationTensor tensor =
      bellkit::correlations_from_probabilities(table, c);
  const PhaseTable phases(s);
  for (std::uint64_t ni = 0; ni < s.outcome_tuple_count(); ++ni) {
    const std::vector<int> n = bellkit::outcomes_from_index(s, ni);
    for (std::uint64_t mi = 0; mi < s.setting_tuple_count(); ++mi) {
      const std::vector<int> m = bellkit::settings_from_index(s, mi);
      // On a deterministic point the sum collapses to a single phase.
      const std::int64_t e =
          static_cast<std::int64_t>(c.sign(1)) * n[0] *
              strategy.response(1, m[0]) +
          static_cast<std::int64_t>(c.sign(2)) * n[1] *
              strategy.response(2, m[1]);
      REQUIRE(std::abs(tensor.at(ni, mi) - phases.omega_pow(e)) < 1e-14);
    }
  }
}

TEST_CASE("sign flips permute moment orders") {
  const Scenario s(2, 2, 3);
  const ProbabilityTable table = bellkit::random_table(s, 11);
  const CorrelationTensor plus =
      bellkit::correlations_from_probabilities(table, SignVector(2));
  const SignVector c = SignVector::from_index(2, 2);  // (-, +)
  const CorrelationTensor flipped =
      bellkit::correlations_from_probabilities(table, c);
  const int d = s.outcomes();
  for (std::uint64_t ni = 0; ni < s.outcome_tuple_count(); ++ni) {
    const std::vector<int> n = bellkit::outcomes_from_index(s, ni);
    // Flipping party 1 sends its order n to (-n mod d), with d kept as d.
    std::vector<int> reflected = n;
    reflected[0] = (d - n[0]) % d == 0 ? d : (d - n[0]) % d;
    const std::uint64_t ri = bellkit::outcomes_to_index(s, reflected);
    for (std::uint64_t mi = 0; mi < s.setting_tuple_count(); ++mi) {
      REQUIRE(std::abs(flipped.at(ni, mi) - plus.at(ri, mi)) < 1e-12);
    }
  }
}

TEST_CASE("tensor validation rejects inflated moduli and broken normalization") {
  const Scenario s(2, 2, 2);
  const ProbabilityTable table = uniform_table(s);
  const CorrelationTensor tensor =
      bellkit::correlations_from_probabilities(table, SignVector(2));
  SECTION("a clean tensor validates") {
    REQUIRE_NOTHROW(bellkit::validate_correlations(tensor));
  }
  SECTION("modulus above one is rejected") {
    std::vector<std::complex<double>> v = tensor.values();
    v[0] = std::complex<double>(1.5, 0.0);
    const CorrelationTensor broken(s, SignVector(2), v);
    REQUIRE_THROWS_AS(bellkit::validate_correlations(broken), ValidationError);
  }
  SECTION("normalization component away from one is rejected") {
    std::vector<std::complex<double>> v = tensor.values();
    v[(s.outcome_tuple_count() - 1) * s.setting_tuple_count() + 1] =
        std::complex<double>(0.5, 0.0);
    const CorrelationTensor broken(s, SignVector(2), v);
    REQUIRE_THROWS_AS(bellkit::validate_correlations(broken), ValidationError);
  }
}

TEST_CASE("inconsistent tensors fail the inverse transform") {
  const Scenario s(2, 2, 2);
  const DeterministicStrategy strategy =
      DeterministicStrategy::from_index(s, 5);
  const ProbabilityTable table = bellkit::table_from_strategy(strategy);
  const CorrelationTensor tensor =
      bellkit::correlations_from_probabilities(table, SignVector(2));
  // Negating one interior component keeps every modulus and the
  // normalization intact but produces negative pseudo-probabilities.
  std::vector<std::complex<double>> v = tensor.values();
  v[0] = -v[0];
  const CorrelationTensor broken(s, SignVector(2), v);
  REQUIRE_THROWS_AS(bellkit::probabilities_from_correlations(broken),
                    ValidationError);
}
