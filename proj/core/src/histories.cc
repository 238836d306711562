#include "corrlab/histories.h"

#include <cmath>

#include "corrlab/errors.h"
#include "corrlab/quantum.h"

namespace corrlab {

namespace {

constexpr double kSlotTol = 1e-10;

void require_full(const History& h, const char* op) {
  if (h.wildcard_count() != 0) {
    throw PreconditionError(std::string(op) + ": history " + h.to_string() + " has a summed-out slot");
  }
}

std::size_t wildcard_slot(const History& h) {
  for (std::size_t s = 0; s < kHistorySlots; ++s) {
    if (h.outcomes[s] == Outcome::kAny) return s;
  }
  return kHistorySlots;
}

History make(int a, int b, int c) {
  auto conv = [](int v) { return v == 0 ? Outcome::kAny : outcome_from_sign(v); };
  return History{{conv(a), conv(b), conv(c)}};
}

}  // namespace

Outcome outcome_from_sign(int sign) { return sign > 0 ? Outcome::kPlus : Outcome::kMinus; }

int sign_of(Outcome o) {
  switch (o) {
    case Outcome::kPlus:
      return 1;
    case Outcome::kMinus:
      return -1;
    case Outcome::kAny:
      break;
  }
  throw PreconditionError("sign_of: wildcard has no sign");
}

char symbol_of(Outcome o) {
  switch (o) {
    case Outcome::kPlus:
      return '+';
    case Outcome::kMinus:
      return '-';
    case Outcome::kAny:
      return '*';
  }
  return '?';
}

std::size_t History::wildcard_count() const {
  std::size_t count = 0;
  for (auto o : outcomes) count += (o == Outcome::kAny);
  return count;
}

std::string History::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (i) s += ',';
    s += symbol_of(outcomes[i]);
  }
  return s + ")";
}

History History::with(std::size_t slot, Outcome o) const {
  History h = *this;
  h.outcomes[slot] = o;
  return h;
}

HistoryFamily::HistoryFamily(State state, std::array<std::array<ComplexMatrix, 2>, 3> projectors)
    : state_(std::move(state)), projectors_(std::move(projectors)) {
  const std::size_t d = state_.dim();
  const ComplexMatrix id = ComplexMatrix::identity(d);
  for (std::size_t s = 0; s < kHistorySlots; ++s) {
    const auto& [plus, minus] = projectors_[s];
    if (plus.dim() != d || minus.dim() != d) throw PreconditionError("HistoryFamily: projector dimension mismatch");
    const bool ok = max_abs_diff(plus + minus, id) <= kSlotTol && (plus * minus).max_abs() <= kSlotTol &&
                    max_abs_diff(plus * plus, plus) <= kSlotTol && max_abs_diff(minus * minus, minus) <= kSlotTol &&
                    is_hermitian(plus, kSlotTol) && is_hermitian(minus, kSlotTol);
    if (!ok) throw PreconditionError("HistoryFamily: slot " + std::to_string(s + 1) + " is not a projective measurement");
  }
}

HistoryFamily HistoryFamily::from_observables(State state, const std::array<Observable, 3>& observables) {
  std::array<std::array<ComplexMatrix, 2>, 3> p;
  for (std::size_t s = 0; s < kHistorySlots; ++s) p[s] = {observables[s].proj_plus(), observables[s].proj_minus()};
  return HistoryFamily(std::move(state), std::move(p));
}

HistoryFamily HistoryFamily::from_protocol(const TemporalProtocol& protocol) {
  protocol.validate();
  if (protocol.times.size() < kHistorySlots) throw PreconditionError("HistoryFamily: protocol needs three times");
  return from_observables(protocol.initial_state,
                          {protocol.observable_at(0), protocol.observable_at(1), protocol.observable_at(2)});
}

const ComplexMatrix& HistoryFamily::projector(std::size_t slot, Outcome o) const {
  return projectors_[slot][o == Outcome::kPlus ? 0 : 1];
}

Observable HistoryFamily::observable(std::size_t slot) const {
  return Observable::from_matrix(projectors_[slot][0] - projectors_[slot][1]);
}

ComplexMatrix chain_operator(const HistoryFamily& f, const History& h) {
  ComplexMatrix c = ComplexMatrix::identity(f.state().dim());
  for (std::size_t s = 0; s < kHistorySlots; ++s) {
    if (h.outcomes[s] == Outcome::kAny) continue;
    c = f.projector(s, h.outcomes[s]) * c;  // later slots act on the left
  }
  return c;
}

double history_probability(const HistoryFamily& f, const History& h) {
  require_full(h, "history_probability");
  return marginal_probability(f, h);
}

double marginal_probability(const HistoryFamily& f, const History& h) {
  const ComplexMatrix c = chain_operator(f, h);
  return (c * f.state().matrix() * c.adjoint()).trace().real();
}

double consistency(const HistoryFamily& f, const History& e, const History& g) {
  require_full(e, "consistency");
  require_full(g, "consistency");
  return (chain_operator(f, e) * f.state().matrix() * chain_operator(f, g).adjoint()).trace().real();
}

double interference_term(const HistoryFamily& f, const History& pattern) {
  const std::size_t slot = wildcard_slot(pattern);
  if (pattern.wildcard_count() != 1) {
    throw PreconditionError("interference_term: pattern " + pattern.to_string() + " must have exactly one '*'");
  }
  return 2.0 * consistency(f, pattern.with(slot, Outcome::kPlus), pattern.with(slot, Outcome::kMinus));
}

Consistency classify_consistency(double value) {
  const double a = std::abs(value);
  if (a <= kConsistentTol) return Consistency::kConsistent;
  if (a < kInconsistentTol) return Consistency::kMarginallyInconsistent;
  return Consistency::kInconsistent;
}

const char* to_string(Consistency c) {
  switch (c) {
    case Consistency::kConsistent:
      return "consistent";
    case Consistency::kMarginallyInconsistent:
      return "marginally-inconsistent";
    case Consistency::kInconsistent:
      return "inconsistent";
  }
  return "unknown";
}

std::array<History, 8> all_histories() {
  std::array<History, 8> out;
  for (std::size_t idx = 0; idx < 8; ++idx) {
    for (std::size_t s = 0; s < kHistorySlots; ++s) out[idx].outcomes[s] = (idx >> s) & 1u ? Outcome::kMinus : Outcome::kPlus;
  }
  return out;
}

LgDecomposition lg_decomposition(const HistoryFamily& f) {
  LgDecomposition r{};
  const auto histories = all_histories();
  for (std::size_t idx = 0; idx < 8; ++idx) r.history_probabilities[idx] = history_probability(f, histories[idx]);

  // Two-time correlators from marginals with the unmeasured slot left out.
  constexpr std::array<std::array<std::size_t, 2>, 3> kPairs{{{0, 1}, {1, 2}, {0, 2}}};
  for (std::size_t p = 0; p < kPairs.size(); ++p) {
    double corr = 0.0;
    for (int a : {1, -1}) {
      for (int b : {1, -1}) {
        History h{{Outcome::kAny, Outcome::kAny, Outcome::kAny}};
        h.outcomes[kPairs[p][0]] = outcome_from_sign(a);
        h.outcomes[kPairs[p][1]] = outcome_from_sign(b);
        corr += a * b * marginal_probability(f, h);
      }
    }
    r.correlators_histories[p] = corr;
    r.correlators_anticommutator[p] =
        anticommutator_correlation(f.state(), f.observable(kPairs[p][0]), f.observable(kPairs[p][1]));
  }
  r.lhs = r.correlators_histories[0] + r.correlators_histories[1] + r.correlators_histories[2];
  r.violated = r.lhs < -1.0 - 1e-9;

  auto report = [&](const History& pattern) {
    const std::size_t slot = wildcard_slot(pattern);
    const double value = interference_term(f, pattern);
    const double residual = marginal_probability(f, pattern) - history_probability(f, pattern.with(slot, Outcome::kPlus)) -
                            history_probability(f, pattern.with(slot, Outcome::kMinus)) - value;
    return InterferenceReport{pattern, value, residual};
  };

  double rewritten = 0.0;
  for (int k : {1, -1}) {
    const InterferenceReport first_kk = report(make(0, k, k));
    const InterferenceReport middle_kk = report(make(k, 0, k));
    const InterferenceReport first_k_mk = report(make(0, k, -k));
    const InterferenceReport middle_k_mk = report(make(k, 0, -k));
    rewritten += 4.0 * history_probability(f, make(k, k, k)) + first_kk.value + middle_kk.value - first_k_mk.value -
                 middle_k_mk.value;
    r.interference.insert(r.interference.end(), {first_kk, middle_kk, first_k_mk, middle_k_mk});
    r.last_slot_interference.push_back(report(make(k, k, 0)));
    r.last_slot_interference.push_back(report(make(k, -k, 0)));
  }
  r.rewritten_expression = rewritten;

  // {(+,k,k),(-,k,k)}, {(k,+,k),(k,-,k)}, {(+,k,-k),(-,k,-k)}, {(k,+,-k),(k,-,-k)}
  r.any_inconsistent = false;
  for (const History& pattern : {make(0, 1, 1), make(0, -1, -1), make(1, 0, 1), make(-1, 0, -1), make(0, 1, -1),
                                  make(0, -1, 1), make(1, 0, -1), make(-1, 0, 1)}) {
    const std::size_t slot = wildcard_slot(pattern);
    const History e = pattern.with(slot, Outcome::kPlus);
    const History g = pattern.with(slot, Outcome::kMinus);
    const double value = consistency(f, e, g);
    const Consistency cls = classify_consistency(value);
    r.any_inconsistent = r.any_inconsistent || cls != Consistency::kConsistent;
    r.pairs.push_back({e, g, value, cls});
  }
  return r;
}

}  // namespace corrlab
