// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header: the whole library in one include.
//
// bellkit is a header-only toolkit for correlation functionals in
// multipartite measurement scenarios: probability tables and their
// discrete-Fourier correlation tensors, complex-weighted functionals with
// named preset families, exact and closed-form local-hidden-variable
// bounds, the quantum maxima reachable with maximally entangled states,
// and deterministic CSV/JSON serialization for all of it.

#pragma once

#include "bellkit/scenario.hpp"      // scenarios, sign vectors, phase table
#include "bellkit/probability.hpp"   // tables, strategies, mixtures
#include "bellkit/correlation.hpp"   // Fourier transform both ways
#include "bellkit/functional.hpp"    // weights, coefficients, presets
#include "bellkit/lhv.hpp"           // classical bounds
#include "bellkit/quantum.hpp"       // quantum values and maxima
#include "bellkit/ekb.hpp"           // spectral route for the ekb family
#include "bellkit/io.hpp"            // CSV/JSON serialization
