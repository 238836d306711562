// Acceptance checks 1-9: one PASS/FAIL line each, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "app.h"
#include "corrlab/classical.h"
#include "corrlab/histories.h"
#include "corrlab/quantum.h"
#include "corrlab/sampling.h"
#include "corrlab/scenario.h"

namespace {

using Json = nlohmann::ordered_json;
using corrlab::Rng;
constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Json command(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "structured"});
  std::ostringstream out;
  std::ostringstream err;
  const int code = corrlab::cli::run(args, out, err);
  if (code != corrlab::cli::kExitOk) throw std::runtime_error("exit " + std::to_string(code) + ": " + err.str());
  return Json::parse(out.str())["result"];
}

Verdict criterion1() {
  Verdict v;
  const long long kcbs = command({"bound", "--n", "5"})["classical_bound"].get<long long>();
  v.require(kcbs == -3, "n=5 bound " + std::to_string(kcbs));
  const long long lg = command({"bound", "--signs", "+++"})["classical_bound"].get<long long>();
  v.require(lg == -1, "n=3 all-plus bound " + std::to_string(lg));
  for (int n = 3; n <= 16; ++n) {
    const long long b = command({"bound", "--n", std::to_string(n)})["classical_bound"].get<long long>();
    v.require(b == 2 - n, "n=" + std::to_string(n) + " bound " + std::to_string(b));
  }
  if (v.passed) v.detail = "n=5 -> -3, n=3 all-plus -> -1, canonical n=3..16 -> -n+2";
  return v;
}

double temporal_lhs = 0.0;

Verdict criterion2() {
  Verdict v;
  const Json r = command({"evaluate", "kcbs-temporal"});
  temporal_lhs = r["lhs"].get<double>();
  v.require(std::abs(temporal_lhs + 4.045085) <= 1e-6, fmt("lhs %.10f", temporal_lhs));
  double worst = 0.0;
  for (const auto& c : r["correlators"]) worst = std::max(worst, std::abs(c.get<double>() + 0.809017));
  v.require(worst <= 1e-6, fmt("correlator deviation %.3g", worst));
  if (v.passed) v.detail = fmt("lhs %.9f", temporal_lhs) + fmt(", max |c + 0.809017| %.2g", worst);
  return v;
}

Verdict criterion3() {
  Verdict v;
  const Json r = command({"evaluate", "kcbs-contextual"});
  const double lhs = r["lhs"].get<double>();
  const double want = 5.0 - 4.0 * std::sqrt(5.0);
  v.require(std::abs(lhs - want) <= 1e-6, fmt("lhs %.10f", lhs));
  double worst = 0.0;
  const Json& norms = r["diagnostics"]["commutator_norms"];
  v.require(norms.size() == 5, "five commutator norms");
  for (const auto& c : norms) worst = std::max(worst, c.get<double>());
  v.require(worst <= 1e-10, fmt("commutator norm %.3g", worst));
  if (v.passed) v.detail = fmt("lhs %.9f", lhs) + fmt(", max commutator norm %.2g", worst);
  return v;
}

Verdict criterion4() {
  Verdict v;
  const Json r = command({"evaluate", "kcbs-spatial"});
  const double lhs = r["lhs"].get<double>();
  v.require(std::abs(lhs - temporal_lhs) <= 1e-9, fmt("|spatial - temporal| %.3g", std::abs(lhs - temporal_lhs)));
  double worst = 0.0;
  const Json& perfect = r["diagnostics"]["perfect_correlations"];
  v.require(perfect.size() == 5, "five perfect pairs");
  for (const auto& c : perfect) worst = std::max(worst, std::abs(1.0 - c.get<double>()));
  v.require(worst <= 1e-10, fmt("max |1 - <A_i B_i>| %.3g", worst));
  if (v.passed) v.detail = fmt("lhs %.9f", lhs) + fmt(", max |1 - <A_i B_i>| %.2g", worst);
  return v;
}

Verdict criterion5() {
  Verdict v;
  double worst = 0.0;
  for (int n = 3; n <= 12; ++n) {
    const Json r = command({"evaluate", "chained-" + std::to_string(n)});
    const double want = n * std::cos(kPi * (n - 1) / n);
    worst = std::max(worst, std::abs(r["lhs"].get<double>() - want));
    v.require(r["classical_bound"].get<long long>() == 2 - n, "bound for n=" + std::to_string(n));
    v.require(r["violated"].get<bool>(), "violation for n=" + std::to_string(n));
  }
  v.require(worst <= 1e-8, fmt("max deviation %.3g", worst));
  if (v.passed) v.detail = fmt("n=3..12 max deviation %.2g, all violated", worst);
  return v;
}

Verdict criterion6() {
  Verdict v;
  v.require(!command({"feasibility", "kcbs-temporal"})["jpd"]["feasible"].get<bool>(), "kcbs-temporal infeasible");

  const auto witness = std::filesystem::temp_directory_path() / "corrlab_acceptance_witness.txt";
  const Json b = command({"feasibility", "--correlators", "-0.6,-0.6,-0.6,-0.6,-0.6", "--witness", witness.string()})["jpd"];
  const double residual = b["max_constraint_residual"].get<double>();
  v.require(b["feasible"].get<bool>(), "boundary feasible");
  v.require(residual <= 1e-7, fmt("boundary residual %.3g", residual));
  v.require(std::filesystem::exists(witness), "witness file written");
  std::filesystem::remove(witness);

  Rng rng(6);
  std::size_t feasible = 0;
  std::size_t violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial) % 4;
    const corrlab::MarginalSet m = corrlab::random_marginal_set(n, rng, trial % 2 == 0);
    if (!corrlab::jpd_feasible(m).feasible) continue;
    ++feasible;
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = m.correlator(i);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> signs(n);
      for (std::size_t k = 0; k < n; ++k) signs[k] = corrlab::assignment_value(mask, k);
      const corrlab::CycleScenario s(signs);
      if (corrlab::inequality_lhs(corrlab::CorrelationVector(s, c)) < static_cast<double>(corrlab::classical_bound(s)) - 1e-9) {
        ++violations;
      }
    }
  }
  v.require(violations == 0, std::to_string(violations) + " soundness violations");
  v.require(feasible > 0, "some random sets feasible");
  if (v.passed) {
    v.detail = fmt("temporal infeasible, boundary residual %.2g, ", residual) + std::to_string(feasible) +
               "/500 random sets feasible with 0 violated sign patterns";
  }
  return v;
}

Verdict criterion7() {
  Verdict v;
  Rng rng(7);
  double completeness = 0.0;
  double last_slot = 0.0;
  double identity = 0.0;
  std::size_t violating = 0;
  std::size_t unexplained = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const corrlab::LgDecomposition d = corrlab::lg_decomposition(corrlab::random_history_family(rng));
    double total = 0.0;
    for (double p : d.history_probabilities) total += p;
    completeness = std::max(completeness, std::abs(total - 1.0));
    for (const auto& x : d.last_slot_interference) {
      last_slot = std::max(last_slot, std::abs(x.value));
      identity = std::max(identity, std::abs(x.marginal_identity_residual));
    }
    for (const auto& x : d.interference) identity = std::max(identity, std::abs(x.marginal_identity_residual));
    if (d.lhs < -1.0 - 1e-6) {
      ++violating;
      bool found = false;
      for (const auto& p : d.pairs) found = found || std::abs(p.value) > 1e-6;
      if (!found) ++unexplained;
    }
  }
  v.require(completeness <= 1e-10, fmt("completeness %.3g", completeness));
  v.require(last_slot <= 1e-12, fmt("last-slot interference %.3g", last_slot));
  v.require(identity <= 1e-10, fmt("marginal identity %.3g", identity));
  v.require(violating > 0, "no violating family drawn");
  v.require(unexplained == 0, std::to_string(unexplained) + " violations without an inconsistent pair");
  if (v.passed) {
    v.detail = fmt("completeness %.2g, ", completeness) + fmt("last-slot %.2g, ", last_slot) +
               fmt("identity %.2g, ", identity) + std::to_string(violating) +
               " violating families all with an inconsistent pair";
  }
  return v;
}

corrlab::Observable random_rank_one_observable(std::size_t dim, Rng& rng) {
  const corrlab::State psi = corrlab::random_pure_state(dim, rng);
  return corrlab::Observable::from_projector(psi.matrix());
}

Verdict criterion8() {
  Verdict v;
  Rng rng(8);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const bool qubit = trial % 2 == 0;
    const corrlab::State rho = qubit ? corrlab::random_qubit_state(rng) : corrlab::random_pure_state(4, rng);
    const corrlab::Observable x = qubit ? corrlab::random_qubit_observable(rng) : random_rank_one_observable(4, rng);
    const corrlab::Observable y = qubit ? corrlab::random_qubit_observable(rng) : random_rank_one_observable(4, rng);
    worst = std::max(worst, std::abs(corrlab::correlation_sequential(rho, x, y).value -
                                     corrlab::anticommutator_correlation(rho, x, y)));
  }
  v.require(worst <= 1e-10, fmt("max deviation %.3g", worst));
  if (v.passed) v.detail = fmt("1000 draws (qubit and dimension 4), max deviation %.2g", worst);
  return v;
}

Verdict criterion9() {
  Verdict v;
  const double targets[2] = {temporal_lhs, 5.0 - 4.0 * std::sqrt(5.0)};
  const char* spaces[2] = {"temporal-times", "contextual-cone"};
  std::string detail;
  for (int k = 0; k < 2; ++k) {
    double lo = 1e300;
    double hi = -1e300;
    for (int seed = 1; seed <= 10; ++seed) {
      const Json r = command({"--seed", std::to_string(seed * 1009), "scan", "--optimize", spaces[k]});
      const double value = r["value"].get<double>();
      v.require(value <= r["best_seed_value"].get<double>(), std::string(spaces[k]) + " above best seed");
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    v.require(std::abs(lo - targets[k]) <= 1e-6 && std::abs(hi - targets[k]) <= 1e-6,
              std::string(spaces[k]) + fmt(" optimum %.10f", lo));
    v.require(hi - lo <= 1e-6, std::string(spaces[k]) + fmt(" seed spread %.3g", hi - lo));
    detail += std::string(k ? "; " : "") + spaces[k] + fmt(" %.9f", lo) + fmt(" (spread %.2g over 10 seeds)", hi - lo);
  }
  if (v.passed) v.detail = detail;
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_seconds;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria{{1, 5, criterion1},  {2, 1, criterion2},  {3, 1, criterion3},
                                        {4, 1, criterion4},  {5, 5, criterion5},  {6, 60, criterion6},
                                        {7, 30, criterion7}, {8, 10, criterion8}, {9, 60, criterion9}};
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds >= c.limit_seconds) v.require(false, fmt("time %.2f s over limit", seconds));
    std::printf("%s criterion %d: %s [%.3f s, limit %.0f s]\n", v.passed ? "PASS" : "FAIL", c.id, v.detail.c_str(), seconds,
                c.limit_seconds);
    failures += v.passed ? 0 : 1;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
