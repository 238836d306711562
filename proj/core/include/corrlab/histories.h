#pragma once

// Consistent-histories analysis of a three-time Leggett-Garg experiment.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "corrlab/qmat.h"
#include "corrlab/scenario.h"

namespace corrlab {

enum class Outcome { kPlus, kMinus, kAny };

Outcome outcome_from_sign(int sign);
int sign_of(Outcome o);
char symbol_of(Outcome o);

/// Outcomes at the three measurement slots; kAny marks a slot that is summed out.
struct History {
  std::array<Outcome, 3> outcomes;

  std::size_t wildcard_count() const;
  /// "(+,-,*)"
  std::string to_string() const;
  /// Copy with `slot` set to `o`.
  History with(std::size_t slot, Outcome o) const;

  friend bool operator==(const History&, const History&) = default;
};

inline constexpr std::size_t kHistorySlots = 3;

/// An initial state plus, per slot, the Heisenberg-picture projectors (P_+, P_-).
class HistoryFamily {
 public:
  /// Validates completeness, orthogonality, idempotence and hermiticity of each slot (1e-10).
  HistoryFamily(State state, std::array<std::array<ComplexMatrix, 2>, 3> projectors);
  /// Slot i uses the spectral projectors of observables[i].
  static HistoryFamily from_observables(State state, const std::array<Observable, 3>& observables);
  /// The protocol's first three times, each in the Heisenberg picture.
  static HistoryFamily from_protocol(const TemporalProtocol& protocol);

  const State& state() const { return state_; }
  const ComplexMatrix& projector(std::size_t slot, Outcome o) const;
  /// P_+ - P_-.
  Observable observable(std::size_t slot) const;

 private:
  State state_;
  std::array<std::array<ComplexMatrix, 2>, 3> projectors_;
};

/// P^{(3)}_m P^{(2)}_l P^{(1)}_k; kAny slots contribute the identity.
ComplexMatrix chain_operator(const HistoryFamily& f, const History& h);

/// Tr(C rho C^dagger) for a fully specified history. Throws PreconditionError on a wildcard.
double history_probability(const HistoryFamily& f, const History& h);

/// Probability with wildcard slots left unmeasured (identity in place of the projector).
double marginal_probability(const HistoryFamily& f, const History& h);

/// Re Tr(C_e rho C_g^dagger). Throws PreconditionError on a wildcard.
double consistency(const HistoryFamily& f, const History& e, const History& g);

/// 2 Re Tr(C_{e+} rho C_{e-}^dagger) with the single wildcard filled by + and -.
double interference_term(const HistoryFamily& f, const History& pattern);

inline constexpr double kConsistentTol = 1e-10;
inline constexpr double kInconsistentTol = 1e-6;

enum class Consistency { kConsistent, kMarginallyInconsistent, kInconsistent };

/// |value| <= 1e-10 consistent, >= 1e-6 inconsistent, marginal in between.
Consistency classify_consistency(double value);
const char* to_string(Consistency c);

struct HistoryPairReport {
  History first;
  History second;
  double value;  ///< Re Tr(C_first rho C_second^dagger)
  Consistency classification;
};

struct InterferenceReport {
  History pattern;
  double value;
  /// p(pattern) - p(+ filled) - p(- filled) - value, from independent evaluations.
  double marginal_identity_residual;
};

struct LgDecomposition {
  /// <X1X2>, <X2X3>, <X1X3> from history marginals.
  std::array<double, 3> correlators_histories;
  /// Same correlators from 1/2 Tr(rho {X_a, X_b}).
  std::array<double, 3> correlators_anticommutator;
  /// <X1X2> + <X2X3> + <X1X3> (classical bound -1).
  double lhs;
  bool violated;
  /// All eight fully specified histories, index bit b set means slot b is -1.
  std::array<double, 8> history_probabilities;
  /// (*,k,k), (k,*,k), (*,k,-k), (k,*,-k) for k = +, -.
  std::vector<InterferenceReport> interference;
  /// (k,k,*), (k,-k,*) for k = +, -; zero identically.
  std::vector<InterferenceReport> last_slot_interference;
  /// sum_k 4 p(k,k,k) + I(*,k,k) + I(k,*,k) - I(*,k,-k) - I(k,*,-k).
  double rewritten_expression;
  /// The four history-pair families, each for k = +, - (eight rows).
  std::vector<HistoryPairReport> pairs;
  /// Whether some pair is (at least marginally) inconsistent.
  bool any_inconsistent;
};

LgDecomposition lg_decomposition(const HistoryFamily& f);

/// All eight fully specified histories, in index order (bit b set means slot b is -1).
std::array<History, 8> all_histories();

}  // namespace corrlab
