// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// The discrete-Fourier correlation transform between probability tables
// and complex correlation tensors.
//
// For a sign vector c in {+1,-1}^N, the correlation of order n⃗ in {1..d}^N
// at joint setting m⃗ is
//
//     E_c[n⃗](m⃗) = sum_alpha  omega^( sum_j c_j n_j alpha_j ) p(alpha|m),
//
// with omega = exp(i 2 pi / d).  Because alpha_j runs over 1..d and omega
// has order d, the component with n⃗ = (d,...,d) is the normalization and
// always equals 1 for a genuine probability table; components of every
// other order are bounded by 1 in modulus.  The transform is invertible:
//
//     p(alpha|m) = d^-N  sum_{n⃗ in {1..d}^N}  omega^( -sum_j c_j n_j alpha_j )
//                         E_c[n⃗](m⃗),
//
// which this module implements together with the consistency checks that
// make the inverse safe on data that did not come from a probability table
// (modulus violations, broken normalization, negative or non-real
// reconstructed probabilities).
//
// Flipping one sign c_j -> -c_j is the same as conjugating that site's
// Fourier index, n_j -> (-n_j mod d); both tensors describe the same table,
// so the sign vector is bookkeeping for which branch of components is
// stored, not extra information.  All phase exponents are accumulated in
// 64-bit integers and reduced once per term by the shared PhaseTable.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bellkit/probability.hpp"
#include "bellkit/scenario.hpp"

namespace bellkit {

// Tolerances for correlation-tensor validation and inversion.
inline constexpr double kCorrelationModulusTolerance = 1e-10;   // |E| <= 1 + tol
inline constexpr double kCorrelationRoundTripTolerance = 1e-12; // advertised accuracy
inline constexpr double kInverseClampTolerance = 1e-9;          // clamp window on p

// Dense correlation tensor for one scenario and one sign vector.
//
// Storage is order-major: values[n_index * M + m_index] with M = k^N, where
// n_index runs over the full order lattice {1..d}^N using the same codec as
// outcome tuples (entries 1..d, party 1 most significant) and m_index is
// the flat setting index.
class CorrelationTensor {
 public:
  CorrelationTensor(const Scenario& scenario, const SignVector& sign,
                    std::vector<std::complex<double>> values)
      : scenario_(scenario), sign_(sign), values_(std::move(values)) {
    if (sign_.parties() != scenario_.parties()) {
      throw ValidationError("correlation tensor: sign vector has " +
                            std::to_string(sign_.parties()) +
                            " entries for a " + std::to_string(scenario_.parties()) +
                            "-party scenario");
    }
    const std::uint64_t expected =
        scenario_.outcome_tuple_count() * scenario_.setting_tuple_count();
    if (values_.size() != expected) {
      throw ValidationError("correlation tensor: expected " +
                            std::to_string(expected) + " entries, got " +
                            std::to_string(values_.size()));
    }
  }

  const Scenario& scenario() const { return scenario_; }
  const SignVector& sign() const { return sign_; }
  const std::vector<std::complex<double>>& values() const { return values_; }

  // E at flat indices: order_index over {1..d}^N, setting_index over {0..k-1}^N.
  std::complex<double> at(std::uint64_t order_index, std::uint64_t setting_index) const {
    return values_[static_cast<std::size_t>(
        order_index * scenario_.setting_tuple_count() + setting_index)];
  }

  // E at tuple arguments (n entries in 1..d, m entries in 0..k-1).
  std::complex<double> correlation(const std::vector<int>& n,
                                   const std::vector<int>& m) const {
    return at(outcomes_to_index(scenario_, n), settings_to_index(scenario_, m));
  }

 private:
  Scenario scenario_;
  SignVector sign_;
  std::vector<std::complex<double>> values_;
};

// Forward transform: probability table -> correlation tensor for one sign
// vector.  Exact cost d^N * k^N * d^N phase-weighted additions.
inline CorrelationTensor correlations_from_probabilities(const ProbabilityTable& table,
                                                         const SignVector& sign) {
  const Scenario& s = table.scenario();
  if (sign.parties() != s.parties()) {
    throw ValidationError("correlation transform: sign vector has " +
                          std::to_string(sign.parties()) + " entries for a " +
                          std::to_string(s.parties()) + "-party scenario");
  }
  const PhaseTable phases(s);
  const std::uint64_t orders = s.outcome_tuple_count();
  const std::uint64_t outcomes = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();

  // Phase matrix omega^( sum_j c_j n_j alpha_j ), reused across settings.
  std::vector<std::complex<double>> phase(
      static_cast<std::size_t>(orders * outcomes));
  std::vector<int> n(static_cast<std::size_t>(s.parties()), 0);
  for (std::uint64_t ni = 0; ni < orders; ++ni) {
    std::vector<int> alpha(static_cast<std::size_t>(s.parties()), 0);
    for (std::uint64_t ai = 0; ai < outcomes; ++ai) {
      std::int64_t exponent = 0;
      for (int j = 0; j < s.parties(); ++j) {
        const std::int64_t nj = n[static_cast<std::size_t>(j)] + 1;
        const std::int64_t aj = alpha[static_cast<std::size_t>(j)] + 1;
        exponent += static_cast<std::int64_t>(sign.signs()[static_cast<std::size_t>(j)]) *
                    nj * aj;
      }
      phase[static_cast<std::size_t>(ni * outcomes + ai)] = phases.omega_pow(exponent);
      next_tuple(alpha, s.outcomes());
    }
    next_tuple(n, s.outcomes());
  }

  std::vector<std::complex<double>> values(static_cast<std::size_t>(orders * cols));
  for (std::uint64_t ni = 0; ni < orders; ++ni) {
    for (std::uint64_t mi = 0; mi < cols; ++mi) {
      std::complex<double> acc(0.0, 0.0);
      for (std::uint64_t ai = 0; ai < outcomes; ++ai) {
        acc += phase[static_cast<std::size_t>(ni * outcomes + ai)] *
               table.at(ai, mi);
      }
      values[static_cast<std::size_t>(ni * cols + mi)] = acc;
    }
  }
  return CorrelationTensor(s, sign, std::move(values));
}

// Structural validation of a correlation tensor:
//   * every component satisfies |E| <= 1 + 1e-10;
//   * the normalization component E[(d,...,d)](m⃗) equals 1 within 1e-10
//     at every joint setting.
// Throws ValidationError with the offending index on failure.
inline void validate_correlations(const CorrelationTensor& tensor) {
  const Scenario& s = tensor.scenario();
  const std::uint64_t orders = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();
  for (std::uint64_t ni = 0; ni < orders; ++ni) {
    for (std::uint64_t mi = 0; mi < cols; ++mi) {
      const double modulus = std::abs(tensor.at(ni, mi));
      if (modulus > 1.0 + kCorrelationModulusTolerance) {
        throw ValidationError("correlation tensor: |E| = " + std::to_string(modulus) +
                              " exceeds 1 at order index " + std::to_string(ni) +
                              ", setting index " + std::to_string(mi));
      }
    }
  }
  const std::uint64_t norm_index = orders - 1;  // n⃗ = (d,...,d) is lex-last
  for (std::uint64_t mi = 0; mi < cols; ++mi) {
    const std::complex<double> e = tensor.at(norm_index, mi);
    if (std::abs(e - std::complex<double>(1.0, 0.0)) > kCorrelationModulusTolerance) {
      throw ValidationError(
          "correlation tensor: normalization component at setting index " +
          std::to_string(mi) + " is (" + std::to_string(e.real()) + ", " +
          std::to_string(e.imag()) + "), not 1 within 1e-10");
    }
  }
}

// Inverse transform: correlation tensor -> probability table.
//
// Validates the tensor first, then reconstructs each probability as the
// inverse Fourier sum.  Reconstructed entries in [-1e-9, 0) are clamped to
// zero; anything more negative, or any imaginary residue above 1e-9, means
// the tensor is not the transform of a probability table and raises a
// ValidationError.  For tensors produced by correlations_from_probabilities
// the round trip reproduces the table to well under 1e-12 per entry.
inline ProbabilityTable probabilities_from_correlations(const CorrelationTensor& tensor) {
  validate_correlations(tensor);
  const Scenario& s = tensor.scenario();
  const PhaseTable phases(s);
  const std::uint64_t orders = s.outcome_tuple_count();
  const std::uint64_t outcomes = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();
  const double norm = 1.0 / static_cast<double>(orders);
  const std::vector<int>& signs = tensor.sign().signs();

  // Conjugate phase matrix omega^( -sum_j c_j n_j alpha_j ).
  std::vector<std::complex<double>> phase(
      static_cast<std::size_t>(outcomes * orders));
  std::vector<int> alpha(static_cast<std::size_t>(s.parties()), 0);
  for (std::uint64_t ai = 0; ai < outcomes; ++ai) {
    std::vector<int> n(static_cast<std::size_t>(s.parties()), 0);
    for (std::uint64_t ni = 0; ni < orders; ++ni) {
      std::int64_t exponent = 0;
      for (int j = 0; j < s.parties(); ++j) {
        const std::int64_t nj = n[static_cast<std::size_t>(j)] + 1;
        const std::int64_t aj = alpha[static_cast<std::size_t>(j)] + 1;
        exponent -= static_cast<std::int64_t>(signs[static_cast<std::size_t>(j)]) *
                    nj * aj;
      }
      phase[static_cast<std::size_t>(ai * orders + ni)] = phases.omega_pow(exponent);
      next_tuple(n, s.outcomes());
    }
    next_tuple(alpha, s.outcomes());
  }

  std::vector<double> values(static_cast<std::size_t>(outcomes * cols));
  for (std::uint64_t ai = 0; ai < outcomes; ++ai) {
    for (std::uint64_t mi = 0; mi < cols; ++mi) {
      std::complex<double> acc(0.0, 0.0);
      for (std::uint64_t ni = 0; ni < orders; ++ni) {
        acc += phase[static_cast<std::size_t>(ai * orders + ni)] *
               tensor.at(ni, mi);
      }
      acc *= norm;
      if (std::abs(acc.imag()) > kInverseClampTolerance) {
        throw ValidationError(
            "inconsistent correlation tensor: reconstructed probability at "
            "outcome index " + std::to_string(ai) + ", setting index " +
            std::to_string(mi) + " has imaginary part " +
            std::to_string(acc.imag()));
      }
      double p = acc.real();
      if (p < 0.0) {
        if (p >= -kInverseClampTolerance) {
          p = 0.0;
        } else {
          throw ValidationError(
              "inconsistent correlation tensor: reconstructed probability at "
              "outcome index " + std::to_string(ai) + ", setting index " +
              std::to_string(mi) + " is " + std::to_string(p) +
              ", below the -1e-9 clamp window");
        }
      }
      values[static_cast<std::size_t>(ai * cols + mi)] = p;
    }
  }
  return ProbabilityTable(s, std::move(values));
}

}  // namespace bellkit
