#pragma once

// Random draws used by property checks, the selftest command and benchmarks.

#include <cstddef>
#include <random>

#include "corrlab/classical.h"
#include "corrlab/histories.h"
#include "corrlab/qmat.h"

namespace corrlab {

using Rng = std::mt19937_64;

/// Uniform in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng);
/// Isotropic unit vector.
Vec3 random_unit_vector(Rng& rng);
/// Haar-random pure state on C^dim.
State random_pure_state(std::size_t dim, Rng& rng);
/// Qubit state with Bloch vector uniform in the unit ball.
State random_qubit_state(Rng& rng);
/// n . sigma for an isotropic n.
Observable random_qubit_observable(Rng& rng);
/// Random qubit state with three random qubit observables.
HistoryFamily random_history_family(Rng& rng);
/// Random no-disturbance marginals: singles in [-1, 1], each correlator uniform over
/// the range keeping all four cells nonnegative. With `unbiased` all singles are 0.
MarginalSet random_marginal_set(std::size_t n, Rng& rng, bool unbiased = false);

}  // namespace corrlab
