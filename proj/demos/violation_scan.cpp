// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scans a grid of scenarios with the uniform diagonal weight
// f(n,..,n) = (1 - i)/2 and prints, for each, the exact local bound by
// enumeration, the quantum ceiling on the maximally entangled state, and
// the violation ratio.  Illustrates how the quantum/local gap moves with
// the number of parties, settings, and outcomes.
//
// Output is CSV on stdout:
//   n,k,d,b_lr,q_m,ratio,violated

#include <bellkit/bellkit.hpp>

#include <complex>
#include <cstdio>
#include <vector>

int main() {
  using bellkit::BellFunctional;
  using bellkit::Scenario;
  using bellkit::SignVector;
  using bellkit::WeightFunction;

  std::printf("n,k,d,b_lr,q_m,ratio,violated\n");
  for (int parties : {2, 3}) {
    for (int settings : {2, 3}) {
      for (int outcomes : {2, 3, 4}) {
        const Scenario s(parties, settings, outcomes);
        WeightFunction weight = WeightFunction::zero(s);
        for (int n = 1; n <= outcomes - 1; ++n) {
          weight.set(std::vector<int>(static_cast<std::size_t>(parties), n),
                     std::complex<double>(0.5, -0.5));
        }
        const BellFunctional fn(s, SignVector(parties), std::move(weight),
                                "uniform-diagonal");
        const bellkit::ViolationReport report = bellkit::violation_report(fn);
        std::printf("%d,%d,%d,%s,%s,%s,%s\n", parties, settings, outcomes,
                    bellkit::format_double(report.lhv.value).c_str(),
                    bellkit::format_double(report.quantum.ceiling).c_str(),
                    bellkit::format_double(report.quantum.ceiling /
                                           report.lhv.value).c_str(),
                    report.violated ? "true" : "false");
      }
    }
  }
  return 0;
}
