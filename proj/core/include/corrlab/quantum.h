#pragma once

// Quantum correlators in the three co-measurability settings (joint, sequential,
// spatially separated) and the explicit configurations that violate cycle inequalities.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "corrlab/qmat.h"
#include "corrlab/scenario.h"

namespace corrlab {

/// Outcome statistics of two sequential projective measurements.
/// Index 0 is outcome +1, index 1 is outcome -1.
struct SequentialOutcomeTable {
  std::array<double, 2> p_first{};
  /// p_second_given_first[l][k] = q_{l|k}; zero for unpopulated first outcomes.
  std::array<std::array<double, 2>, 2> p_second_given_first{};
  std::array<bool, 2> populated{};

  /// sum_{k,l} k l p_k q_{l|k}.
  double correlator() const;
};

struct SequentialCorrelation {
  double value;
  SequentialOutcomeTable table;
};

inline constexpr double kCommutingTol = 1e-9;

/// Tr(rho x y) for a commuting pair. Throws PreconditionError if ||[x, y]||_max > 1e-9.
double correlation_joint(const State& rho, const Observable& x, const Observable& y);

/// Measures `first`, applies the Lueders update, then measures `second`.
SequentialCorrelation correlation_sequential(const State& rho, const Observable& first, const Observable& second);

/// 1/2 Tr(rho {x, y}).
double anticommutator_correlation(const State& rho, const Observable& x, const Observable& y);

/// Lueders probabilities of every outcome string for measurements applied in order.
/// Entry index bit b set means observable b returned -1.
std::vector<double> sequential_outcome_probabilities(const State& rho, std::span<const Observable> sequence);

/// Probability that the first and last outcomes agree in the sequence x -> y -> x.
double repeat_agreement_probability(const State& rho, const Observable& x, const Observable& y);

/// Tr(rho' (A_i (x) B_j)).
double correlation_spatial(const BipartiteConfig& cfg, std::size_t i, std::size_t j);
/// One correlator per pairing term.
CorrelationVector spatial_correlations(const BipartiteConfig& cfg);

/// Adjacent-pair correlators <X_{t_i} X_{t_{i+1 mod n}}> in the Heisenberg picture.
CorrelationVector temporal_correlations(const TemporalProtocol& p, const CycleScenario& s);
/// Same quantity from a Schroedinger-picture simulation of the two measurements.
CorrelationVector temporal_correlations_simulated(const TemporalProtocol& p, const CycleScenario& s);

/// sigma_z on a maximally mixed qubit, U = exp(i (8/5) pi t sigma_y), t = 0, 1/4, ..., 1.
TemporalProtocol temporal_kcbs_protocol();

struct ContextualConfig {
  State state;
  std::vector<Observable> observables;  ///< X_j compatible with X_{j+1 mod n}
};

/// Commuting-pair correlators Tr(rho X_j X_{j+1}) for a cycle.
CorrelationVector contextual_correlations(const ContextualConfig& cfg, const CycleScenario& s);

/// Qutrit pentagram: X_j = 2|v_j><v_j| - I with adjacent v_j orthogonal, state on the symmetry axis.
ContextualConfig contextual_kcbs_configuration();

/// X_j = 2|v_j><v_j| - I on C^3 from real unit vectors.
ContextualConfig contextual_from_vectors(std::span<const Vec3> vectors, const Vec3& state_vector);

/// |phi+>, A_i = sigma_i (x) I, B_i = I (x) sigma_i with sigma_i = R_i sz R_i^dagger,
/// R_i = exp(i 2 pi i / 5 sigma_y); terms <A_i B_{i+1 mod 5}>.
BipartiteConfig spatial_kcbs_configuration();

/// Chained-inequality settings on |phi+>: the bipartite split for even n and
/// the doubled, perfectly correlated settings for odd n.
BipartiteConfig chained_configuration(std::size_t n);

/// Spatial configuration with Alice and Bob sharing in-plane angles on |phi+>,
/// terms <A_i B_{i+1 mod n}> with canonical signs.
BipartiteConfig shared_angle_configuration(std::span<const double> angles);

/// Result of evaluating one named builder.
struct Evaluation {
  std::string builder;
  std::string setting;  ///< contextual | temporal | spatial
  CorrelationVector correlations;
  long long classical_bound;
  double lhs;
  /// <X_i> of each cycle observable, for building pair marginals
  std::vector<double> singles;
  /// contextual: ||[X_j, X_{j+1}]||_max per term
  std::vector<double> commutator_norms;
  /// spatial: <A_i B_i> for each required perfect pair
  std::vector<double> perfect_correlations;
  /// temporal: |Heisenberg - Schroedinger| per term
  std::vector<double> oracle_residuals;
};

/// Builders: kcbs-contextual, kcbs-temporal, kcbs-spatial, chained-<n>.
/// Throws PreconditionError for unknown names.
Evaluation evaluate_builder(const std::string& name);
std::vector<std::string> builder_names();

}  // namespace corrlab
