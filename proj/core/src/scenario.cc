#include "corrlab/scenario.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "corrlab/errors.h"

namespace corrlab {

CycleScenario::CycleScenario(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.size() < 3) throw PreconditionError("CycleScenario: need at least 3 observables");
  for (int s : signs_) {
    if (s != 1 && s != -1) throw PreconditionError("CycleScenario: signs must be +1 or -1");
  }
}

CycleScenario CycleScenario::canonical(std::size_t n) {
  std::vector<int> signs(n, 1);
  if (n > 0 && n % 2 == 0) signs.back() = -1;
  return CycleScenario(std::move(signs));
}

CycleScenario CycleScenario::all_plus(std::size_t n) { return CycleScenario(std::vector<int>(n, 1)); }

bool CycleScenario::is_canonical() const { return *this == canonical(size()); }

CycleScenario CycleScenario::rotated(std::size_t shift) const {
  const std::size_t n = size();
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[(i + shift) % n] = signs_[i];
  return CycleScenario(std::move(out));
}

CorrelationVector::CorrelationVector(CycleScenario scenario, std::vector<double> values)
    : scenario_(std::move(scenario)), values_(std::move(values)) {
  if (values_.size() != scenario_.size()) {
    throw PreconditionError("CorrelationVector: expected one value per cycle edge");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || std::abs(v) > 1.0 + 1e-9) {
      throw PreconditionError("CorrelationVector: correlator outside [-1, 1]");
    }
  }
}

double inequality_lhs(const CorrelationVector& c) {
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += c.scenario().sign(i) * c.values()[i];
  return sum;
}

long long classical_bound(const CycleScenario& s) {
  const std::size_t n = s.size();
  if (n > kMaxEnumerationSize) {
    throw ResourceError("classical_bound: n = " + std::to_string(n) + " exceeds the enumeration cap of 24");
  }
  // x_i x_{i+1} = -1 exactly when bits i and i+1 differ, so each assignment scores
  // total - 2 * (sum of signs over the differing edges).
  std::uint32_t plus_edges = 0;
  std::uint32_t minus_edges = 0;
  long long total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    (s.sign(i) > 0 ? plus_edges : minus_edges) |= (1u << i);
    total += s.sign(i);
  }
  const std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1u);
  long long best = std::numeric_limits<long long>::max();
  // Flipping every bit leaves the score unchanged, so x_0 = +1 suffices.
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t half = 0; half < count; ++half) {
    const std::uint32_t mask = static_cast<std::uint32_t>(half << 1);
    const std::uint32_t next = ((mask >> 1) | (mask << (n - 1))) & all;  // bit i holds x_{i+1}
    const std::uint32_t diff = mask ^ next;
    const long long score = total - 2LL * (std::popcount(diff & plus_edges) - std::popcount(diff & minus_edges));
    if (score < best) best = score;
  }
  return best;
}

void TemporalProtocol::validate() const {
  if (initial_state.dim() != 2 || measured.dim() != 2) {
    throw PreconditionError("TemporalProtocol: expects a qubit");
  }
  if (times.size() < 2) throw PreconditionError("TemporalProtocol: need at least two times");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw PreconditionError("TemporalProtocol: times must be strictly increasing");
  }
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > 1e-12) throw PreconditionError("TemporalProtocol: axis is not a unit vector");
}

void BipartiteConfig::validate() const {
  if (alice.empty() || bob.empty()) throw PreconditionError("BipartiteConfig: both parties need observables");
  for (const auto& a : alice) {
    if (a.dim() != alice_dim()) throw PreconditionError("BipartiteConfig: Alice observables differ in dimension");
  }
  for (const auto& b : bob) {
    if (b.dim() != bob_dim()) throw PreconditionError("BipartiteConfig: Bob observables differ in dimension");
  }
  if (state.dim() != alice_dim() * bob_dim()) throw PreconditionError("BipartiteConfig: state dimension mismatch");
  for (const auto& t : pairing) {
    if (t.alice >= alice.size() || t.bob >= bob.size()) throw PreconditionError("BipartiteConfig: pairing index out of range");
    if (t.sign != 1 && t.sign != -1) throw PreconditionError("BipartiteConfig: pairing sign must be +1 or -1");
  }
  for (auto i : perfect_pairs) {
    if (i >= alice.size() || i >= bob.size()) throw PreconditionError("BipartiteConfig: perfect pair out of range");
  }
}

CycleScenario BipartiteConfig::scenario() const {
  std::vector<int> signs;
  signs.reserve(pairing.size());
  for (const auto& t : pairing) signs.push_back(t.sign);
  return CycleScenario(std::move(signs));
}

}  // namespace corrlab
