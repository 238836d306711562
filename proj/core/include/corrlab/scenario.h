#pragma once

#include <cstddef>
#include <vector>

#include "corrlab/qmat.h"

namespace corrlab {

inline constexpr std::size_t kMaxEnumerationSize = 24;

/// n dichotomic observables where only cyclically adjacent pairs are co-measured,
/// plus the sign carried by each term <X_i X_{i+1 mod n}> of the tested inequality.
class CycleScenario {
 public:
  /// signs[i] must be +1 or -1; n = signs.size() >= 3.
  explicit CycleScenario(std::vector<int> signs);

  /// Signs (+1, ..., +1, (-1)^{n-1}).
  static CycleScenario canonical(std::size_t n);
  static CycleScenario all_plus(std::size_t n);

  std::size_t size() const { return signs_.size(); }
  const std::vector<int>& signs() const { return signs_; }
  int sign(std::size_t i) const { return signs_[i]; }
  bool is_canonical() const;
  /// Relabels observable i as i + shift (mod n); signs travel with their pair.
  CycleScenario rotated(std::size_t shift) const;

  friend bool operator==(const CycleScenario&, const CycleScenario&) = default;

 private:
  std::vector<int> signs_;
};

/// values[i] = <X_i X_{i+1 mod n}>.
class CorrelationVector {
 public:
  CorrelationVector(CycleScenario scenario, std::vector<double> values);

  const CycleScenario& scenario() const { return scenario_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  CycleScenario scenario_;
  std::vector<double> values_;
};

/// sum_i signs[i] * values[i].
double inequality_lhs(const CorrelationVector& c);

/// Minimum of sum_i signs[i] x_i x_{i+1} over all deterministic +-1 assignments.
/// Throws ResourceError for n > 24.
long long classical_bound(const CycleScenario& s);

/// A single qubit measured at several times while evolving under
/// U_t = su2_rotation(axis, angular_rate * t).
struct TemporalProtocol {
  State initial_state;
  Vec3 axis;
  double angular_rate;
  std::vector<double> times;
  Observable measured;

  /// Throws PreconditionError unless times are strictly increasing and the state is a qubit.
  void validate() const;
  ComplexMatrix evolution(double t) const { return su2_rotation(axis, angular_rate * t); }
  /// Heisenberg-picture observable U_t^dagger X U_t at times[i].
  Observable observable_at(std::size_t i) const { return measured.evolved(evolution(times[i])); }
};

/// One term sign * <A_alice B_bob> of a bipartite inequality.
struct PairTerm {
  std::size_t alice;
  std::size_t bob;
  int sign;
  /// Whether Alice's observable is X_i (rather than X_{i+1}) of the cycle edge.
  bool alice_first = true;
};

/// Two parties measuring local observables on a shared state.
struct BipartiteConfig {
  State state;
  std::vector<Observable> alice;  ///< on dim d_A
  std::vector<Observable> bob;    ///< on dim d_B
  std::vector<PairTerm> pairing;
  /// Index pairs required to be perfectly correlated (<A_i B_i> = 1); may be empty.
  std::vector<std::size_t> perfect_pairs;

  void validate() const;
  std::size_t alice_dim() const { return alice.front().dim(); }
  std::size_t bob_dim() const { return bob.front().dim(); }
  /// The cycle scenario whose signs are those of the pairing.
  CycleScenario scenario() const;
};

}  // namespace corrlab
