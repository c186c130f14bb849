// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Spectral route to the quantum maximum of the two-party k-setting
// dichotomic family (the ekb presets).
//
// For scenario (2, k, 2) with weight f(1,1) = f1, collecting the
// coefficient of the joint correlator at settings (m1, m2) gives the real
// symmetric k x k kernel
//
//     beta(m1, m2) = f1 exp( i pi (m1 + m2) / k ) + c.c.,
//
// a rank-<=2 matrix (it is f1 v v^T + conj(f1) vbar vbar^T with
// v_m = exp(i pi m / k)).  The quantum maximum over states and dichotomic
// measurements for such a full-correlator functional is
//
//     Q = k * sigma_max(beta),
//
// the largest singular value scaled by the setting count; for this kernel
// sigma_max = k |f1| exactly, so Q = k^2 |f1|.  The singular values come
// from a dense SVD rather than the closed form, which makes the route an
// independent check against the ladder-algebra ceiling in quantum.hpp: the
// two must coincide although they share no code path.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "bellkit/scenario.hpp"

namespace bellkit {

// The real symmetric kernel beta(m1, m2) = 2 Re[ f1 exp(i pi (m1+m2)/k) ].
inline Eigen::MatrixXd beta_matrix(int settings, std::complex<double> f1) {
  if (settings < 2) {
    throw ValidationError("beta matrix: settings must be >= 2, got " +
                          std::to_string(settings));
  }
  Eigen::MatrixXd beta(settings, settings);
  const double step = PhaseTable::pi() / static_cast<double>(settings);
  for (int m1 = 0; m1 < settings; ++m1) {
    for (int m2 = 0; m2 < settings; ++m2) {
      const double angle = step * static_cast<double>(m1 + m2);
      const std::complex<double> phase(std::cos(angle), std::sin(angle));
      beta(m1, m2) = 2.0 * (f1 * phase).real();
    }
  }
  return beta;
}

// Singular values of the kernel, descending.  All but the leading two are
// zero up to rounding (the kernel has rank <= 2).
inline std::vector<double> ekb_singular_values(int settings, std::complex<double> f1) {
  const Eigen::MatrixXd beta = beta_matrix(settings, f1);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(beta);
  std::vector<double> values(static_cast<std::size_t>(settings));
  for (int i = 0; i < settings; ++i) {
    values[static_cast<std::size_t>(i)] = svd.singularValues()(i);
  }
  return values;
}

// Quantum maximum Q = k * sigma_max(beta).
inline double ekb_quantum_max(int settings, std::complex<double> f1) {
  const std::vector<double> sigma = ekb_singular_values(settings, f1);
  return static_cast<double>(settings) * sigma.front();
}

}  // namespace bellkit
