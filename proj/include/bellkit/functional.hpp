// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Bell functionals: complex weights over correlation orders, the induced
// real coefficient tables over outcomes, and the named preset families.
//
// A functional is specified by a scenario, a sign vector c, and a complex
// weight f(n⃗) on the truncated order lattice n⃗ in {1..d-1}^N (the
// normalization order (d,...,d) carries no information and is excluded).
// It acts on a probability table through the real coefficients
//
//     g(alpha⃗|m⃗) = sum_n⃗ f(n⃗) zeta^( sum_j c_j n_j (k alpha_j + m_j) ) + c.c.
//
// with zeta = exp(i 2 pi / (d k)), and equivalently on the correlation
// tensor of the same sign vector through
//
//     G = sum_n⃗ f(n⃗) sum_m⃗ zeta^( sum_j c_j n_j m_j ) E_c[n⃗](m⃗) + c.c.
//
// The two evaluations agree on transform pairs to ~1e-12 (duality).  The
// conjugate pair makes g real by construction; the constructor still sums
// both branches independently and asserts the imaginary residue stays
// below 1e-12, so a bookkeeping bug cannot silently produce a complex g.
//
// Preset catalogue (value() gives the single bound convention used by the
// bound and quantum modules; see lhv.hpp and quantum.hpp):
//
//   chsh            (2,2,2), c = ++, f(1,1) = (1 - i)/2.
//   cglmp d         (2,2,d), c = +-, diagonal weight
//                   f(n,n) = sec(n pi / 2d) exp(i n pi / 2d) / (2(d-1)).
//   mermin N        (N,2,2), c = +..+, f(1,...,1) = 1/2.
//   zb N, c         (N,2,2), any sign vector, f(1,...,1) = (1 - i)/2.
//   ekb k, f1       (2,k,2), c = ++, f(1,1) = f1 (free complex parameter).
//
// chsh coincides with both cglmp at d = 2 and ekb at k = 2 with
// f1 = (1 - i)/2, which the tests use as cross-checks.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bellkit/correlation.hpp"
#include "bellkit/probability.hpp"
#include "bellkit/scenario.hpp"

namespace bellkit {

// Residue allowed when the two conjugate branches of g are summed
// independently.
inline constexpr double kCoefficientImagTolerance = 1e-12;

// Complex weight over the truncated order lattice {1..d-1}^N, stored
// densely in the lexicographic order of moments_from_index.
class WeightFunction {
 public:
  WeightFunction(const Scenario& scenario, std::vector<std::complex<double>> values)
      : scenario_(scenario), values_(std::move(values)) {
    if (values_.size() != scenario_.moment_tuple_count()) {
      throw ValidationError("weight function: expected " +
                            std::to_string(scenario_.moment_tuple_count()) +
                            " entries, got " + std::to_string(values_.size()));
    }
  }

  static WeightFunction zero(const Scenario& scenario) {
    return WeightFunction(
        scenario, std::vector<std::complex<double>>(
                      static_cast<std::size_t>(scenario.moment_tuple_count()),
                      std::complex<double>(0.0, 0.0)));
  }

  const Scenario& scenario() const { return scenario_; }
  const std::vector<std::complex<double>>& values() const { return values_; }

  std::complex<double> at(std::uint64_t order_index) const {
    if (order_index >= values_.size()) {
      throw ValidationError("weight function: order index " +
                            std::to_string(order_index) + " outside 0.." +
                            std::to_string(values_.size() - 1));
    }
    return values_[static_cast<std::size_t>(order_index)];
  }

  std::complex<double> value(const std::vector<int>& n) const {
    return values_[static_cast<std::size_t>(moments_to_index(scenario_, n))];
  }

  void set(const std::vector<int>& n, std::complex<double> value) {
    values_[static_cast<std::size_t>(moments_to_index(scenario_, n))] = value;
  }

  // True when every nonzero entry sits on the uniform diagonal
  // n⃗ = (n, ..., n).  The closed-form quantum maximizer requires this.
  bool diagonal_support() const {
    const std::uint64_t count = scenario_.moment_tuple_count();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (values_[static_cast<std::size_t>(idx)] == std::complex<double>(0.0, 0.0)) {
        continue;
      }
      const std::vector<int> n = moments_from_index(scenario_, idx);
      for (std::size_t j = 1; j < n.size(); ++j) {
        if (n[j] != n[0]) return false;
      }
    }
    return true;
  }

 private:
  Scenario scenario_;
  std::vector<std::complex<double>> values_;
};

// Expands a weight into the dense real coefficient table
// g[a_index * M + m_index], summing the f and conj(f) branches separately
// and checking that their imaginary parts cancel.
inline std::vector<double> coefficients_from_weight(const Scenario& s,
                                                    const SignVector& sign,
                                                    const WeightFunction& weight) {
  if (sign.parties() != s.parties()) {
    throw ValidationError("functional: sign vector has " +
                          std::to_string(sign.parties()) + " entries for a " +
                          std::to_string(s.parties()) + "-party scenario");
  }
  if (weight.scenario() != s) {
    throw ValidationError("functional: weight belongs to scenario " +
                          weight.scenario().to_string() + ", expected " +
                          s.to_string());
  }
  const PhaseTable phases(s);
  const std::uint64_t rows = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();
  const std::uint64_t orders = s.moment_tuple_count();
  const int k = s.settings();
  std::vector<double> g(static_cast<std::size_t>(rows * cols), 0.0);

  std::vector<int> alpha(static_cast<std::size_t>(s.parties()), 0);
  for (std::uint64_t ai = 0; ai < rows; ++ai) {
    std::vector<int> m(static_cast<std::size_t>(s.parties()), 0);
    for (std::uint64_t mi = 0; mi < cols; ++mi) {
      std::complex<double> acc(0.0, 0.0);
      std::vector<int> n(static_cast<std::size_t>(s.parties()), 0);
      for (std::uint64_t oi = 0; oi < orders; ++oi) {
        const std::complex<double> f = weight.at(oi);
        if (f != std::complex<double>(0.0, 0.0)) {
          std::int64_t exponent = 0;
          for (int j = 0; j < s.parties(); ++j) {
            const std::int64_t cj = sign.signs()[static_cast<std::size_t>(j)];
            const std::int64_t nj = n[static_cast<std::size_t>(j)] + 1;
            const std::int64_t phase_arg =
                static_cast<std::int64_t>(k) *
                    static_cast<std::int64_t>(alpha[static_cast<std::size_t>(j)] + 1) +
                static_cast<std::int64_t>(m[static_cast<std::size_t>(j)]);
            exponent += cj * nj * phase_arg;
          }
          acc += f * phases.unit_phase(exponent);
          acc += std::conj(f) * phases.unit_phase(-exponent);
        }
        next_tuple(n, s.outcomes() - 1);
      }
      if (std::abs(acc.imag()) > kCoefficientImagTolerance) {
        throw ValidationError("functional: coefficient at outcome index " +
                              std::to_string(ai) + ", setting index " +
                              std::to_string(mi) + " has imaginary residue " +
                              std::to_string(acc.imag()));
      }
      g[static_cast<std::size_t>(ai * cols + mi)] = acc.real();
      next_tuple(m, s.settings());
    }
    next_tuple(alpha, s.outcomes());
  }
  return g;
}

// A Bell functional: weight, sign vector, and the expanded coefficients.
class BellFunctional {
 public:
  BellFunctional(const Scenario& scenario, const SignVector& sign,
                 WeightFunction weight, std::string name = "custom")
      : scenario_(scenario),
        sign_(sign),
        weight_(std::move(weight)),
        name_(std::move(name)),
        coefficients_(coefficients_from_weight(scenario, sign, weight_)) {}

  const Scenario& scenario() const { return scenario_; }
  const SignVector& sign() const { return sign_; }
  const WeightFunction& weight() const { return weight_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  // g at flat indices.
  double coefficient(std::uint64_t outcome_index, std::uint64_t setting_index) const {
    return coefficients_[static_cast<std::size_t>(
        outcome_index * scenario_.setting_tuple_count() + setting_index)];
  }

  // Outcome-space evaluation: sum_{alpha, m} g(alpha|m) p(alpha|m).
  double evaluate(const ProbabilityTable& table) const {
    if (table.scenario() != scenario_) {
      throw ValidationError("functional: table belongs to scenario " +
                            table.scenario().to_string() + ", expected " +
                            scenario_.to_string());
    }
    double acc = 0.0;
    for (std::size_t idx = 0; idx < coefficients_.size(); ++idx) {
      acc += coefficients_[idx] * table.values()[idx];
    }
    return acc;
  }

  // Correlation-space evaluation; the tensor must carry the functional's
  // own sign vector (each sign selects a different stored branch of the
  // same data, so mixing branches is a bookkeeping error, not a transform).
  double evaluate(const CorrelationTensor& tensor) const {
    if (tensor.scenario() != scenario_) {
      throw ValidationError("functional: tensor belongs to scenario " +
                            tensor.scenario().to_string() + ", expected " +
                            scenario_.to_string());
    }
    if (tensor.sign() != sign_) {
      throw ValidationError("functional: tensor carries sign vector " +
                            tensor.sign().to_string() + ", expected " +
                            sign_.to_string());
    }
    const PhaseTable phases(scenario_);
    const std::uint64_t cols = scenario_.setting_tuple_count();
    const std::uint64_t orders = scenario_.moment_tuple_count();
    std::complex<double> acc(0.0, 0.0);
    std::vector<int> n(static_cast<std::size_t>(scenario_.parties()), 0);
    for (std::uint64_t oi = 0; oi < orders; ++oi) {
      const std::complex<double> f = weight_.at(oi);
      if (f != std::complex<double>(0.0, 0.0)) {
        // Re-encode the truncated order tuple into the tensor's full
        // {1..d}^N lattice.
        std::vector<int> n_full(static_cast<std::size_t>(scenario_.parties()));
        for (int j = 0; j < scenario_.parties(); ++j) {
          n_full[static_cast<std::size_t>(j)] = n[static_cast<std::size_t>(j)] + 1;
        }
        const std::uint64_t tensor_row = outcomes_to_index(scenario_, n_full);
        std::complex<double> setting_sum(0.0, 0.0);
        std::vector<int> m(static_cast<std::size_t>(scenario_.parties()), 0);
        for (std::uint64_t mi = 0; mi < cols; ++mi) {
          std::int64_t exponent = 0;
          for (int j = 0; j < scenario_.parties(); ++j) {
            exponent += static_cast<std::int64_t>(
                            sign_.signs()[static_cast<std::size_t>(j)]) *
                        static_cast<std::int64_t>(n_full[static_cast<std::size_t>(j)]) *
                        static_cast<std::int64_t>(m[static_cast<std::size_t>(j)]);
          }
          setting_sum += phases.unit_phase(exponent) * tensor.at(tensor_row, mi);
          next_tuple(m, scenario_.settings());
        }
        acc += f * setting_sum;
      }
      next_tuple(n, scenario_.outcomes() - 1);
    }
    return 2.0 * acc.real();
  }

 private:
  Scenario scenario_;
  SignVector sign_;
  WeightFunction weight_;
  std::string name_;
  std::vector<double> coefficients_;
};

// --- Preset catalogue ------------------------------------------------------

// Two parties, two dichotomic settings: f(1,1) = (1 - i)/2, all-plus signs.
inline BellFunctional make_chsh() {
  const Scenario s(2, 2, 2);
  WeightFunction w = WeightFunction::zero(s);
  w.set({1, 1}, std::complex<double>(0.5, -0.5));
  return BellFunctional(s, SignVector(2), std::move(w), "chsh");
}

// Two parties, two settings, d outcomes: diagonal weight
// f(n, n) = sec(n pi / 2d) exp(i n pi / 2d) / (2 (d - 1)), sign vector +-.
inline BellFunctional make_cglmp(int d) {
  if (d < 2) {
    throw ValidationError("cglmp preset: outcomes must be >= 2, got " +
                          std::to_string(d));
  }
  const Scenario s(2, 2, d);
  WeightFunction w = WeightFunction::zero(s);
  const double pi = PhaseTable::pi();
  for (int n = 1; n <= d - 1; ++n) {
    const double angle = static_cast<double>(n) * pi / (2.0 * d);
    const double magnitude = 1.0 / (2.0 * (d - 1) * std::cos(angle));
    w.set({n, n}, std::complex<double>(magnitude * std::cos(angle),
                                       magnitude * std::sin(angle)));
  }
  return BellFunctional(s, SignVector({+1, -1}), std::move(w), "cglmp");
}

// N parties, two dichotomic settings: f(1,...,1) = 1/2, all-plus signs.
inline BellFunctional make_mermin(int parties) {
  if (parties < 1) {
    throw ValidationError("mermin preset: parties must be >= 1, got " +
                          std::to_string(parties));
  }
  const Scenario s(parties, 2, 2);
  WeightFunction w = WeightFunction::zero(s);
  w.set(std::vector<int>(static_cast<std::size_t>(parties), 1),
        std::complex<double>(0.5, 0.0));
  return BellFunctional(s, SignVector(parties), std::move(w), "mermin");
}

// N parties, two dichotomic settings, arbitrary sign vector:
// f(1,...,1) = (1 - i)/2.
inline BellFunctional make_zb(int parties, const SignVector& sign) {
  if (parties < 1) {
    throw ValidationError("zb preset: parties must be >= 1, got " +
                          std::to_string(parties));
  }
  if (sign.parties() != parties) {
    throw ValidationError("zb preset: sign vector has " +
                          std::to_string(sign.parties()) + " entries for " +
                          std::to_string(parties) + " parties");
  }
  const Scenario s(parties, 2, 2);
  WeightFunction w = WeightFunction::zero(s);
  w.set(std::vector<int>(static_cast<std::size_t>(parties), 1),
        std::complex<double>(0.5, -0.5));
  return BellFunctional(s, sign, std::move(w), "zb");
}

// Two parties, k settings, two outcomes: f(1,1) = f1, all-plus signs.
inline BellFunctional make_ekb(int settings, std::complex<double> f1) {
  if (settings < 2) {
    throw ValidationError("ekb preset: settings must be >= 2, got " +
                          std::to_string(settings));
  }
  const Scenario s(2, settings, 2);
  WeightFunction w = WeightFunction::zero(s);
  w.set({1, 1}, f1);
  return BellFunctional(s, SignVector(2), std::move(w), "ekb");
}

}  // namespace bellkit
