#include "corrlab/quantum.h"

#include <cmath>
#include <numbers>
#include <string>

#include "corrlab/errors.h"

namespace corrlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dims(const State& rho, const Observable& x, const Observable& y, const char* op) {
  if (rho.dim() != x.dim() || rho.dim() != y.dim()) {
    throw PreconditionError(std::string(op) + ": state and observable dimensions differ");
  }
}

// Probability p_k and the unnormalized post-measurement state P_k rho P_k.
struct Branch {
  double probability;
  ComplexMatrix post_state;
};

Branch luders_branch(const ComplexMatrix& rho, const ComplexMatrix& projector) {
  ComplexMatrix unnormalized = projector * rho * projector;
  const double p = unnormalized.trace().real();
  return {p, unnormalized};
}

int outcome_of(std::size_t index) { return index == 0 ? 1 : -1; }

}  // namespace

double SequentialOutcomeTable::correlator() const {
  double sum = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    if (!populated[k]) continue;
    for (std::size_t l = 0; l < 2; ++l) {
      sum += outcome_of(k) * outcome_of(l) * p_first[k] * p_second_given_first[l][k];
    }
  }
  return sum;
}

double correlation_joint(const State& rho, const Observable& x, const Observable& y) {
  require_dims(rho, x, y, "correlation_joint");
  const double comm = commutator_norm(x.matrix(), y.matrix());
  if (comm > kCommutingTol) {
    throw PreconditionError("correlation_joint: observables do not commute (||[x,y]|| = " + std::to_string(comm) + ")");
  }
  return rho.expectation(x.matrix() * y.matrix());
}

SequentialCorrelation correlation_sequential(const State& rho, const Observable& first, const Observable& second) {
  require_dims(rho, first, second, "correlation_sequential");
  SequentialOutcomeTable table;
  for (std::size_t k = 0; k < 2; ++k) {
    const Branch b = luders_branch(rho.matrix(), first.projector(outcome_of(k)));
    table.p_first[k] = std::max(0.0, b.probability);
    // Empty branches contribute nothing; their conditionals stay undefined (zero).
    if (b.probability <= 0.0) continue;
    table.populated[k] = true;
    for (std::size_t l = 0; l < 2; ++l) {
      table.p_second_given_first[l][k] =
          trace_of_product(second.projector(outcome_of(l)), b.post_state).real() / b.probability;
    }
  }
  return {table.correlator(), table};
}

double anticommutator_correlation(const State& rho, const Observable& x, const Observable& y) {
  require_dims(rho, x, y, "anticommutator_correlation");
  return 0.5 * rho.expectation(anticommutator(x.matrix(), y.matrix()));
}

std::vector<double> sequential_outcome_probabilities(const State& rho, std::span<const Observable> sequence) {
  for (const auto& o : sequence) {
    if (o.dim() != rho.dim()) throw PreconditionError("sequential_outcome_probabilities: dimension mismatch");
  }
  // Unnormalized branch states; the trace of each leaf is its probability.
  std::vector<ComplexMatrix> branches{rho.matrix()};
  for (const auto& obs : sequence) {
    // Step b sets index bit b on a -1 outcome: children of branch j are j and j + 2^b.
    std::vector<ComplexMatrix> next(branches.size() * 2);
    const std::size_t half = branches.size();
    for (std::size_t j = 0; j < half; ++j) {
      next[j] = obs.proj_plus() * branches[j] * obs.proj_plus();
      next[j + half] = obs.proj_minus() * branches[j] * obs.proj_minus();
    }
    branches = std::move(next);
  }
  std::vector<double> probs(branches.size());
  for (std::size_t j = 0; j < branches.size(); ++j) probs[j] = branches[j].trace().real();
  return probs;
}

double repeat_agreement_probability(const State& rho, const Observable& x, const Observable& y) {
  const std::vector<Observable> seq{x, y, x};
  const auto probs = sequential_outcome_probabilities(rho, seq);
  double agree = 0.0;
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    const bool first = idx & 1u;
    const bool third = idx & 4u;
    if (first == third) agree += probs[idx];
  }
  return agree;
}

double correlation_spatial(const BipartiteConfig& cfg, std::size_t i, std::size_t j) {
  if (i >= cfg.alice.size() || j >= cfg.bob.size()) {
    throw PreconditionError("correlation_spatial: index out of range");
  }
  return cfg.state.expectation(kron(cfg.alice[i].matrix(), cfg.bob[j].matrix()));
}

CorrelationVector spatial_correlations(const BipartiteConfig& cfg) {
  cfg.validate();
  std::vector<double> values;
  values.reserve(cfg.pairing.size());
  for (const auto& t : cfg.pairing) values.push_back(correlation_spatial(cfg, t.alice, t.bob));
  return CorrelationVector(cfg.scenario(), std::move(values));
}

CorrelationVector temporal_correlations(const TemporalProtocol& p, const CycleScenario& s) {
  p.validate();
  const std::size_t n = p.times.size();
  if (s.size() != n) throw PreconditionError("temporal_correlations: scenario size differs from time count");
  std::vector<Observable> heisenberg;
  heisenberg.reserve(n);
  for (std::size_t i = 0; i < n; ++i) heisenberg.push_back(p.observable_at(i));
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = anticommutator_correlation(p.initial_state, heisenberg[i], heisenberg[(i + 1) % n]);
  }
  return CorrelationVector(s, std::move(values));
}

CorrelationVector temporal_correlations_simulated(const TemporalProtocol& p, const CycleScenario& s) {
  p.validate();
  const std::size_t n = p.times.size();
  if (s.size() != n) throw PreconditionError("temporal_correlations_simulated: scenario size differs from time count");
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = i;
    std::size_t b = (i + 1) % n;
    if (p.times[a] > p.times[b]) std::swap(a, b);
    const ComplexMatrix u_first = p.evolution(p.times[a]);
    const ComplexMatrix u_gap = p.evolution(p.times[b] - p.times[a]);
    const ComplexMatrix at_first = u_first * p.initial_state.matrix() * u_first.adjoint();
    double value = 0.0;
    for (int k : {1, -1}) {
      const Branch br = luders_branch(at_first, p.measured.projector(k));
      if (br.probability <= 0.0) continue;
      const ComplexMatrix later = u_gap * br.post_state * u_gap.adjoint();
      for (int l : {1, -1}) value += k * l * trace_of_product(p.measured.projector(l), later).real();
    }
    values[i] = value;
  }
  return CorrelationVector(s, std::move(values));
}

TemporalProtocol temporal_kcbs_protocol() {
  return TemporalProtocol{
      State::maximally_mixed(2), Vec3{0.0, 1.0, 0.0}, 8.0 * kPi / 5.0, {0.0, 0.25, 0.5, 0.75, 1.0},
      Observable::from_matrix(pauli_z())};
}

CorrelationVector contextual_correlations(const ContextualConfig& cfg, const CycleScenario& s) {
  const std::size_t n = cfg.observables.size();
  if (s.size() != n) throw PreconditionError("contextual_correlations: scenario size differs from observable count");
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = correlation_joint(cfg.state, cfg.observables[i], cfg.observables[(i + 1) % n]);
  }
  return CorrelationVector(s, std::move(values));
}

ContextualConfig contextual_from_vectors(std::span<const Vec3> vectors, const Vec3& state_vector) {
  std::vector<Observable> obs;
  obs.reserve(vectors.size());
  for (const auto& v : vectors) {
    const std::vector<Complex> ket{v[0], v[1], v[2]};
    obs.push_back(Observable::from_projector(ComplexMatrix::outer(ket)));
  }
  const std::vector<Complex> psi{state_vector[0], state_vector[1], state_vector[2]};
  return ContextualConfig{State::pure(psi), std::move(obs)};
}

ContextualConfig contextual_kcbs_configuration() {
  // Cone half-angle with cos^2 = cos(pi/5) / (1 + cos(pi/5)) makes v_j and v_{j+1} orthogonal.
  const double c5 = std::cos(kPi / 5.0);
  const double cos_theta = std::sqrt(c5 / (1.0 + c5));
  const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
  std::vector<Vec3> vectors;
  for (int j = 0; j < 5; ++j) {
    const double phi = 4.0 * kPi * j / 5.0;
    vectors.push_back({sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta});
  }
  return contextual_from_vectors(vectors, {0.0, 0.0, 1.0});
}

BipartiteConfig spatial_kcbs_configuration() {
  BipartiteConfig cfg{phi_plus(), {}, {}, {}, {}};
  for (int i = 0; i < 5; ++i) {
    const ComplexMatrix r = su2_rotation({0.0, 1.0, 0.0}, 2.0 * kPi * i / 5.0);
    const Observable sigma = Observable::from_matrix(r * pauli_z() * r.adjoint());
    cfg.alice.push_back(sigma);
    cfg.bob.push_back(sigma);
    cfg.perfect_pairs.push_back(static_cast<std::size_t>(i));
  }
  for (std::size_t i = 0; i < 5; ++i) cfg.pairing.push_back({i, (i + 1) % 5, 1});
  cfg.validate();
  return cfg;
}

BipartiteConfig chained_configuration(std::size_t n) {
  if (n < 3) throw PreconditionError("chained_configuration: n must be at least 3");
  BipartiteConfig cfg{phi_plus(), {}, {}, {}, {}};
  const double dn = static_cast<double>(n);
  if (n % 2 == 0) {
    const std::size_t half = n / 2;
    for (std::size_t m = 0; m < half; ++m) {
      const double a = 2.0 * m * kPi / dn;
      const double b = (2.0 * m + 1.0) * kPi / dn;
      cfg.alice.push_back(bloch_observable({-std::sin(a), 0.0, std::cos(a)}));
      cfg.bob.push_back(bloch_observable({std::sin(b), 0.0, -std::cos(b)}));
    }
    // X_{2i} = A_i, X_{2i+1} = B_i: A_0B_0 + B_0A_1 + A_1B_1 + ... + A_{h-1}B_{h-1} - B_{h-1}A_0.
    for (std::size_t i = 0; i < half; ++i) {
      cfg.pairing.push_back({i, i, 1});
      if (i + 1 < half) {
        cfg.pairing.push_back({i + 1, i, 1, false});
      } else {
        cfg.pairing.push_back({0, i, -1, false});
      }
    }
  } else {
    const double step = kPi - kPi / dn;
    for (std::size_t m = 0; m < n; ++m) {
      const Observable o = bloch_observable({std::sin(step * m), 0.0, std::cos(step * m)});
      cfg.alice.push_back(o);
      cfg.bob.push_back(o);
      cfg.perfect_pairs.push_back(m);
    }
    for (std::size_t i = 0; i < n; ++i) cfg.pairing.push_back({i, (i + 1) % n, 1});
  }
  cfg.validate();
  return cfg;
}

BipartiteConfig shared_angle_configuration(std::span<const double> angles) {
  const std::size_t n = angles.size();
  if (n < 3) throw PreconditionError("shared_angle_configuration: need at least 3 angles");
  BipartiteConfig cfg{phi_plus(), {}, {}, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const Observable o = xz_observable(angles[i]);
    cfg.alice.push_back(o);
    cfg.bob.push_back(o);
    cfg.perfect_pairs.push_back(i);
  }
  const CycleScenario canon = CycleScenario::canonical(n);
  for (std::size_t i = 0; i < n; ++i) cfg.pairing.push_back({i, (i + 1) % n, canon.sign(i)});
  return cfg;
}

}  // namespace corrlab
