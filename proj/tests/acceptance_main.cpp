// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate.  Runs ten numbered criteria with pinned tolerances and
// runtime ceilings, prints one [PASS]/[FAIL] line per criterion, and exits
// with the number of failed criteria.  The command-line driver binary is
// passed as argv[1] for the reproduction criterion.
//
// Criterion 5 contains a strict-violation sub-check at two settings that
// is arithmetically unattainable: at k = 2 and real weight the quantum
// maximum k^2 |f1| and the local bound 2 |f1| / sin^2(pi/4) are the same
// number, so "quantum strictly above local" cannot hold there.  The check
// is kept as stated and reported honestly instead of being weakened.

#include <bellkit/bellkit.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using bellkit::BellFunctional;
using bellkit::BoundResult;
using bellkit::DeterministicStrategy;
using bellkit::LhvMixture;
using bellkit::ProbabilityTable;
using bellkit::QuantumMaxResult;
using bellkit::Scenario;
using bellkit::SignVector;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;  // shown indented under the status line

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

// Seeded mixture of up to eight deterministic strategies.
LhvMixture random_mixture(const Scenario& s, std::mt19937_64& engine) {
  const int count = 1 + static_cast<int>(engine() % 8);
  std::vector<DeterministicStrategy> strategies;
  std::vector<double> weights;
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    strategies.push_back(
        DeterministicStrategy::from_index(s, engine() % s.strategy_count()));
    const double u =
        static_cast<double>(engine() >> 11) * (1.0 / 9007199254740992.0);
    weights.push_back(-std::log1p(-u));
    total += weights.back();
  }
  for (double& w : weights) w /= total;
  return LhvMixture(std::move(strategies), std::move(weights));
}

BellFunctional random_functional(const Scenario& s, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<std::complex<double>> values(
      static_cast<std::size_t>(s.moment_tuple_count()));
  for (auto& v : values) v = std::complex<double>(coord(engine), coord(engine));
  return BellFunctional(s, SignVector(s.parties()),
                        bellkit::WeightFunction(s, std::move(values)), "random");
}

// --- criterion bodies -------------------------------------------------------

// Exact local bound 2 as an integer, quantum value 2 sqrt(2) within 1e-10.
Outcome criterion_1() {
  Outcome out;
  const BellFunctional fn = bellkit::make_chsh();
  const BoundResult bound = bellkit::exact_lhv_bound(fn);
  if (bound.value != 2.0) {
    out.fail("exact bound " + bellkit::format_double(bound.value) +
             " is not the integer 2");
  }
  const QuantumMaxResult q = bellkit::me_quantum_max(fn);
  const double target = 2.0 * std::sqrt(2.0);
  if (std::abs(q.ceiling - target) > 1e-10) {
    out.fail("ceiling " + bellkit::format_double(q.ceiling) +
             " misses 2*sqrt(2) by more than 1e-10");
  }
  if (std::abs(q.attained - target) > 1e-10) {
    out.fail("attained value " + bellkit::format_double(q.attained) +
             " misses 2*sqrt(2) by more than 1e-10");
  }
  return out;
}

// d = 3: bound 2, quantum value 8/(3 sqrt(3)) + 4/3 by both routes within
// 1e-9, and a flagged violation for every d in 2..10.
Outcome criterion_2() {
  Outcome out;
  const BellFunctional fn = bellkit::make_cglmp(3);
  const BoundResult bound = bellkit::exact_lhv_bound(fn);
  if (bound.value != 2.0) {
    out.fail("exact bound " + bellkit::format_double(bound.value) +
             " is not the integer 2");
  }
  const double target = 8.0 / (3.0 * std::sqrt(3.0)) + 4.0 / 3.0;
  const QuantumMaxResult q = bellkit::me_quantum_max(fn);
  if (std::abs(q.ceiling - target) > 1e-9) {
    out.fail("closed-form value " + bellkit::format_double(q.ceiling) +
             " misses the target by more than 1e-9");
  }
  const double operator_route =
      bellkit::quantum_value_operators(fn, {q.nu_total, 0.0});
  if (std::abs(operator_route - target) > 1e-9) {
    out.fail("operator-route value " + bellkit::format_double(operator_route) +
             " misses the target by more than 1e-9");
  }
  for (int d = 2; d <= 10; ++d) {
    if (!bellkit::violation_report(bellkit::make_cglmp(d)).violated) {
      out.fail("no violation flagged at d = " + std::to_string(d));
    }
  }
  return out;
}

// Exact enumerated bounds 2^((N-1)/2) for odd and 2^(N/2) for even N.
Outcome criterion_3() {
  Outcome out;
  for (int parties = 2; parties <= 5; ++parties) {
    const double expected = bellkit::mermin_reference_bound(parties);
    const BellFunctional fn = bellkit::make_mermin(parties);
    if (fn.scenario().strategy_count() > 1024) {
      out.fail("strategy count exceeds 2^10 at N = " + std::to_string(parties));
    }
    const double exact = bellkit::exact_lhv_bound(fn).value;
    if (exact != expected) {
      out.fail("N = " + std::to_string(parties) + ": enumerated " +
               bellkit::format_double(exact) + " != " +
               bellkit::format_double(expected));
    }
  }
  return out;
}

// Combined sign sum: every deterministic strategy sits at or below 2^N with
// equality attained, and random mixtures stay below 2^N + 1e-9.
Outcome criterion_4() {
  Outcome out;
  std::mt19937_64 engine(4001);
  for (int parties : {2, 3}) {
    const Scenario s(parties, 2, 2);
    const double bound = static_cast<double>(1 << parties);
    double best = 0.0;
    for (std::uint64_t i = 0; i < s.strategy_count(); ++i) {
      const double value = bellkit::zb_combined_sum(
          bellkit::table_from_strategy(DeterministicStrategy::from_index(s, i)));
      if (value > bound + 1e-12) {
        out.fail("strategy " + std::to_string(i) + " exceeds 2^N at N = " +
                 std::to_string(parties));
      }
      best = std::max(best, value);
    }
    if (std::abs(best - bound) > 1e-12) {
      out.fail("equality not attained at N = " + std::to_string(parties));
    }
    for (int trial = 0; trial < 1000; ++trial) {
      const ProbabilityTable table =
          bellkit::table_from_mixture(random_mixture(s, engine));
      if (bellkit::zb_combined_sum(table) > bound + 1e-9) {
        out.fail("mixture exceeds the bound at N = " + std::to_string(parties));
        break;
      }
    }
  }
  return out;
}

// k-setting dichotomic family: closed form against enumeration over the
// phase window, singular-value maximum, and strict violation at real weight.
Outcome criterion_5() {
  Outcome out;
  for (int k = 2; k <= 5; ++k) {
    const double half_step = bellkit::PhaseTable::pi() / (2.0 * k);
    for (int step = 0; step <= 4; ++step) {
      const double theta = half_step * step / 4.0;
      const std::complex<double> f1 = std::polar(0.5, -theta);
      const double closed = bellkit::ekb_closed_form_bound(k, f1).value;
      const double exact = bellkit::exact_lhv_bound(bellkit::make_ekb(k, f1)).value;
      if (std::abs(closed - exact) > 1e-9) {
        out.fail("closed form misses enumeration at k = " + std::to_string(k) +
                 ", theta step " + std::to_string(step));
      }
      const double svd_value = bellkit::ekb_quantum_max(k, f1);
      const double analytic = static_cast<double>(k) * k * std::abs(f1);
      if (std::abs(svd_value - analytic) > 1e-9 * analytic) {
        out.fail("k * sigma_max misses k^2 |f1| at k = " + std::to_string(k));
      }
    }
  }
  for (int k = 2; k <= 5; ++k) {
    const std::complex<double> f1(0.5, 0.0);  // theta_f = 0
    const double quantum = bellkit::ekb_quantum_max(k, f1);
    const double local = bellkit::ekb_closed_form_bound(k, f1).value;
    if (!(quantum > local)) {
      out.fail("strict violation fails at k = " + std::to_string(k) +
               ": quantum " + bellkit::format_double(quantum) +
               " does not exceed local " + bellkit::format_double(local) +
               "; at k = 2 both sides equal 4 |f1| identically because "
               "sin^2(pi/4) = 1/2, so the strict form of this sub-check is "
               "unattainable");
    }
  }
  return out;
}

// Transform round trip p -> E -> p within 1e-12 over 100 random tables for
// every scenario with N <= 3, d <= 4, k <= 3, under every sign vector.
Outcome criterion_6() {
  Outcome out;
  std::uint64_t seed = 60000;
  for (int parties = 1; parties <= 3; ++parties) {
    for (int settings = 1; settings <= 3; ++settings) {
      for (int outcomes = 2; outcomes <= 4; ++outcomes) {
        const Scenario s(parties, settings, outcomes);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
          const ProbabilityTable table = bellkit::random_table(s, seed++);
          for (int ci = 1; ci <= (1 << parties); ++ci) {
            const ProbabilityTable back = bellkit::probabilities_from_correlations(
                bellkit::correlations_from_probabilities(
                    table, SignVector::from_index(parties, ci)));
            for (std::size_t i = 0; i < table.values().size(); ++i) {
              worst = std::max(worst,
                               std::abs(table.values()[i] - back.values()[i]));
            }
          }
        }
        if (worst > 1e-12) {
          out.fail("round-trip error " + bellkit::format_double(worst) +
                   " in scenario " + s.to_string());
        }
      }
    }
  }
  return out;
}

// Setting sums of measurement powers equal k J^n entrywise within 1e-12 for
// d <= 6 and 2 <= k <= 5.  A single setting cannot close the identity (the
// conjugate branch survives the sum), so k = 1 is outside its statement.
Outcome criterion_7() {
  Outcome out;
  for (int d = 2; d <= 6; ++d) {
    for (int k = 2; k <= 5; ++k) {
      const Scenario s(2, k, d);
      for (int n = 1; n <= d - 1; ++n) {
        const double residue = bellkit::ladder_identity_check(s, n);
        if (residue > 1e-12) {
          out.fail("residue " + bellkit::format_double(residue) + " at d = " +
                   std::to_string(d) + ", k = " + std::to_string(k) +
                   ", n = " + std::to_string(n));
        }
      }
    }
  }
  return out;
}

// Probability-sum and correlation-sum evaluation agree to 1e-9 on 200
// random tables per preset.
Outcome criterion_8() {
  Outcome out;
  const std::vector<BellFunctional> presets = {
      bellkit::make_chsh(),
      bellkit::make_cglmp(2),
      bellkit::make_cglmp(3),
      bellkit::make_cglmp(4),
      bellkit::make_mermin(2),
      bellkit::make_mermin(3),
      bellkit::make_mermin(4),
      bellkit::make_mermin(5),
      bellkit::make_zb(2, SignVector::from_index(2, 3)),
      bellkit::make_zb(3, SignVector::from_index(3, 6)),
      bellkit::make_ekb(2, {0.5, 0.0}),
      bellkit::make_ekb(3, {0.5, 0.0}),
      bellkit::make_ekb(4, {0.5, 0.0}),
  };
  std::uint64_t seed = 80000;
  for (const BellFunctional& fn : presets) {
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const ProbabilityTable table = bellkit::random_table(fn.scenario(), seed++);
      const double by_probabilities = fn.evaluate(table);
      const double by_correlations = fn.evaluate(
          bellkit::correlations_from_probabilities(table, fn.sign()));
      worst = std::max(worst, std::abs(by_probabilities - by_correlations));
    }
    if (worst > 1e-9) {
      out.fail("forms disagree by " + bellkit::format_double(worst) + " for " +
               fn.name() + " on " + fn.scenario().to_string());
    }
  }
  return out;
}

// 500 random mixtures per functional never exceed the enumerated bound.
Outcome criterion_9() {
  Outcome out;
  std::vector<BellFunctional> functionals = {
      bellkit::make_chsh(),       bellkit::make_cglmp(2),
      bellkit::make_cglmp(3),     bellkit::make_cglmp(4),
      bellkit::make_mermin(2),    bellkit::make_mermin(3),
      bellkit::make_mermin(4),    bellkit::make_mermin(5),
      bellkit::make_zb(2, SignVector::from_index(2, 3)),
      bellkit::make_zb(3, SignVector::from_index(3, 6)),
      bellkit::make_ekb(2, {0.5, 0.0}),
      bellkit::make_ekb(3, {0.5, 0.0}),
      bellkit::make_ekb(4, {0.5, 0.0}),
  };
  std::uint64_t seed = 90001;
  for (int parties = 2; parties <= 3; ++parties) {
    for (int settings = 2; settings <= 3; ++settings) {
      for (int outcomes = 2; outcomes <= 3; ++outcomes) {
        functionals.push_back(
            random_functional(Scenario(parties, settings, outcomes), seed++));
      }
    }
  }
  std::mt19937_64 engine(9100);
  for (const BellFunctional& fn : functionals) {
    const double bound = bellkit::exact_lhv_bound(fn).value;
    for (int trial = 0; trial < 500; ++trial) {
      const LhvMixture mixture = random_mixture(fn.scenario(), engine);
      const double value = fn.evaluate(bellkit::table_from_mixture(mixture));
      if (value > bound + 1e-9) {
        out.fail(fn.name() + " on " + fn.scenario().to_string() +
                 ": mixture value " + bellkit::format_double(value) +
                 " exceeds bound " + bellkit::format_double(bound));
        break;
      }
    }
  }
  return out;
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string command = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
  return bellkit::read_text_file(path.string());
}

// The reproduction command finishes quickly, flags no row where the exact
// bound splits from its reference, and reruns byte-identically.
Outcome criterion_10(const char* cli_path) {
  Outcome out;
  if (cli_path == nullptr) {
    out.fail("no driver binary was passed as argv[1]");
    return out;
  }
  namespace fs = std::filesystem;
  const fs::path dir_a = fs::temp_directory_path() / "bellkit_reproduce_a";
  const fs::path dir_b = fs::temp_directory_path() / "bellkit_reproduce_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  fs::create_directories(dir_a);
  fs::create_directories(dir_b);

  const int code_a = run_cli(cli_path, "reproduce --out " + dir_a.string());
  const int code_b = run_cli(cli_path, "reproduce --out " + dir_b.string());
  if (code_a != 0 || code_b != 0) {
    out.fail("driver exited with " + std::to_string(code_a) + " / " +
             std::to_string(code_b));
    return out;
  }

  const std::string csv = slurp(dir_a / "reproduce.csv");
  if (csv != slurp(dir_b / "reproduce.csv") ||
      slurp(dir_a / "reproduce.json") != slurp(dir_b / "reproduce.json")) {
    out.fail("reruns are not byte-identical");
  }

  // Parse the CSV and flag rows whose exact bound splits from the reference.
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  if (line != "inequality,n,k,d,b_lr_exact,b_lr_reference,q_m,violated") {
    out.fail("unexpected header: " + line);
    return out;
  }
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    std::istringstream fields(line);
    std::string field;
    std::vector<std::string> row;
    while (std::getline(fields, field, ',')) row.push_back(field);
    if (row.size() != 8) {
      out.fail("malformed row: " + line);
      continue;
    }
    const double exact = std::strtod(row[4].c_str(), nullptr);
    const double reference = std::strtod(row[5].c_str(), nullptr);
    if (std::abs(exact - reference) > 1e-9) {
      out.fail("discrepancy flagged in row: " + line);
    }
  }
  if (rows != 13) {
    out.fail("expected 13 rows, found " + std::to_string(rows));
  }
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli_path = argc > 1 ? argv[1] : nullptr;

  struct Entry {
    int id;
    const char* label;
    double limit_ms;  // 0 = no ceiling
    Outcome outcome;
    double elapsed_ms = 0.0;
  };
  std::vector<Entry> entries = {
      {1, "two-setting two-outcome bound and quantum value", 1000.0, {}, 0.0},
      {2, "three-outcome chained bound, both quantum routes, violations to d = 10",
       10000.0, {}, 0.0},
      {3, "multi-party dichotomic bounds by full enumeration", 5000.0, {}, 0.0},
      {4, "combined sign sum: saturation and convexity", 0.0, {}, 0.0},
      {5, "k-setting dichotomic closed form, SVD maximum, strict violation",
       0.0, {}, 0.0},
      {6, "transform round trip across the scenario grid", 0.0, {}, 0.0},
      {7, "setting sums of measurement powers are ladder operators", 0.0, {}, 0.0},
      {8, "probability-sum and correlation-sum forms agree", 0.0, {}, 0.0},
      {9, "random mixtures respect enumerated bounds", 0.0, {}, 0.0},
      {10, "reproduction command: clean, fast, byte-stable", 60000.0, {}, 0.0},
  };

  for (Entry& entry : entries) {
    const Clock::time_point start = Clock::now();
    switch (entry.id) {
      case 1: entry.outcome = criterion_1(); break;
      case 2: entry.outcome = criterion_2(); break;
      case 3: entry.outcome = criterion_3(); break;
      case 4: entry.outcome = criterion_4(); break;
      case 5: entry.outcome = criterion_5(); break;
      case 6: entry.outcome = criterion_6(); break;
      case 7: entry.outcome = criterion_7(); break;
      case 8: entry.outcome = criterion_8(); break;
      case 9: entry.outcome = criterion_9(); break;
      case 10: entry.outcome = criterion_10(cli_path); break;
    }
    entry.elapsed_ms = ms_since(start);
    if (entry.limit_ms > 0.0 && entry.elapsed_ms > entry.limit_ms) {
      entry.outcome.fail("runtime " + std::to_string(entry.elapsed_ms) +
                         " ms exceeds the " + std::to_string(entry.limit_ms) +
                         " ms ceiling");
    }
  }

  int failures = 0;
  for (const Entry& entry : entries) {
    if (!entry.outcome.pass) ++failures;
    std::printf("[%s] criterion %d: %s (%.0f ms)\n",
                entry.outcome.pass ? "PASS" : "FAIL", entry.id, entry.label,
                entry.elapsed_ms);
    if (!entry.outcome.detail.empty()) {
      std::printf("       %s\n", entry.outcome.detail.c_str());
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failures,
              entries.size());
  return failures;
}
