#include "app.h"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrlab/classical.h"
#include "corrlab/errors.h"
#include "corrlab/histories.h"
#include "corrlab/quantum.h"
#include "corrlab/sampling.h"
#include "corrlab/scenario_file.h"
#include "corrlab/search.h"

#ifndef CORRLAB_VERSION
#define CORRLAB_VERSION "0.0.0"
#endif

namespace corrlab::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kViolationTol = 1e-9;

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

std::string sign_string(const CycleScenario& s) {
  std::string out;
  for (int v : s.signs()) {
    if (!out.empty()) out += ' ';
    out += v > 0 ? '+' : '-';
  }
  return out;
}

/// "+ + -", "++-", "+,+,-" all accepted.
std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> signs;
  for (char c : text) {
    if (c == '+') {
      signs.push_back(1);
    } else if (c == '-') {
      signs.push_back(-1);
    } else if (c != ' ' && c != ',') {
      throw PreconditionError(std::string("signs may contain only '+' and '-', got '") + c + "'");
    }
  }
  return signs;
}

Json scenario_json(const CycleScenario& s) {
  return Json{{"n", s.size()}, {"signs", s.signs()}, {"canonical", s.is_canonical()}};
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') p = std::filesystem::path(dir) / p;
  }
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot write '" + path.string() + "'");
  f << content;
}

struct Outcome {
  Json result;
  std::string text;
  /// Nonzero when the command ran but a check it performs failed.
  int status = kExitOk;
};

struct Globals {
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string out;
};

// --- feasibility helpers -------------------------------------------------------

Json jpd_json(const JpdWitness& w, const std::optional<std::string>& witness_path) {
  Json j{{"feasible", w.feasible},
         {"within_tolerance_only", w.within_tolerance_only},
         {"phase1_objective", w.phase1_objective},
         {"max_constraint_residual", w.max_constraint_residual},
         {"support", w.distribution.size()},
         {"pivots", w.pivots}};
  j["witness_path"] = witness_path ? Json(*witness_path) : Json(nullptr);
  return j;
}

std::string witness_text(std::size_t n, const JpdWitness& w) {
  std::string out = format("# n = %zu; mask bit b set means x_b = -1\n# mask weight\n", n);
  for (const auto& [mask, weight] : w.distribution) {
    if (weight != 0.0) out += format("%u %.17g\n", mask, weight);
  }
  return out;
}

std::string jpd_text(const JpdWitness& w) {
  std::string s = w.feasible ? "feasible" : "infeasible";
  if (w.within_tolerance_only) s += " (within tolerance only)";
  s += format(", phase-1 objective %.3g", w.phase1_objective);
  if (w.feasible) s += format(", witness residual %.3g, support %zu", w.max_constraint_residual, w.distribution.size());
  return s;
}

// --- evaluate --------------------------------------------------------------------

struct EvaluateArgs {
  std::string builder;
  std::string scenario;
};

Json vector_json(const std::vector<double>& v) { return Json(v); }

std::string correlator_table(const CycleScenario& s, const std::vector<double>& values) {
  std::string out = "term  sign  correlator\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += format("%-5zu %-5s % .9f\n", i, s.sign(i) > 0 ? "+" : "-", values[i]);
  }
  return out;
}

Outcome summarize(const std::string& label, const std::string& setting, const CorrelationVector& c,
                  const std::vector<double>& singles, const MarginalSet* marginals, const Json& diagnostics,
                  const std::optional<std::string>& witness) {
  const CycleScenario& s = c.scenario();
  const long long bound = classical_bound(s);
  const double lhs = inequality_lhs(c);
  const bool violated = lhs < static_cast<double>(bound) - kViolationTol;

  Outcome o;
  o.result = Json{{"source", label}, {"setting", setting}, {"scenario", scenario_json(s)}};
  o.result["correlators"] = vector_json(c.values());
  o.result["singles"] = vector_json(singles);
  o.result["lhs"] = lhs;
  o.result["classical_bound"] = bound;
  o.result["violated"] = violated;
  if (!diagnostics.empty()) o.result["diagnostics"] = diagnostics;

  o.text = format("source        %s (%s)\n", label.c_str(), setting.c_str());
  o.text += format("n             %zu\nsigns         %s\n", s.size(), sign_string(s).c_str());
  o.text += correlator_table(s, c.values());
  o.text += format("lhs           %.9f\nbound         %lld\nviolated      %s\n", lhs, bound, violated ? "yes" : "no");

  if (s.size() > kMaxJpdSize) {
    o.result["jpd"] = nullptr;
    o.text += format("jpd           skipped (n > %zu)\n", kMaxJpdSize);
    return o;
  }
  std::optional<MarginalSet> owned;
  if (marginals == nullptr) owned.emplace(correlators_to_marginals(c, singles));
  const MarginalSet& m = marginals != nullptr ? *marginals : *owned;
  const JpdWitness w = jpd_feasible(m);
  std::optional<std::string> written;
  if (witness && w.feasible) {
    const auto path = resolve_output(*witness);
    write_file(path, witness_text(m.size(), w));
    written = path.string();
  }
  o.result["jpd"] = jpd_json(w, written);
  o.text += "jpd           " + jpd_text(w) + "\n";
  if (written) o.text += "witness       " + *written + "\n";
  return o;
}

Outcome from_builder(const std::string& name, const std::optional<std::string>& witness) {
  const Evaluation e = evaluate_builder(name);
  Json diag = Json::object();
  if (!e.commutator_norms.empty()) diag["commutator_norms"] = e.commutator_norms;
  if (!e.perfect_correlations.empty()) diag["perfect_correlations"] = e.perfect_correlations;
  if (!e.oracle_residuals.empty()) diag["oracle_residuals"] = e.oracle_residuals;
  Outcome o = summarize(e.builder, e.setting, e.correlations, e.singles, nullptr, diag, witness);
  if (!e.commutator_norms.empty()) {
    double worst = 0.0;
    for (double v : e.commutator_norms) worst = std::max(worst, v);
    o.text += format("max |[X_j,X_j+1]|  %.3g\n", worst);
  }
  if (!e.perfect_correlations.empty()) {
    double worst = 0.0;
    for (double v : e.perfect_correlations) worst = std::max(worst, std::abs(1.0 - v));
    o.text += format("max |1 - <A_i B_i>|  %.3g\n", worst);
  }
  return o;
}

Outcome from_file(const ScenarioFile& file, const std::string& path, const std::optional<std::string>& witness) {
  if (!file.pairs && !file.correlators) {
    if (!file.builder) throw PreconditionError("scenario file '" + path + "' defines no data and no builder");
    Outcome o = from_builder(*file.builder, witness);
    o.result["scenario_file"] = path;
    return o;
  }
  const MarginalSet m = scenario_marginals(file);
  if (m.size() != file.scenario.size()) throw PreconditionError("scenario file: pair count differs from n");
  std::vector<double> c(m.size());
  std::vector<double> s(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    c[i] = m.correlator(i);
    s[i] = m.single(i);
  }
  Outcome o = summarize(path, "data", CorrelationVector(file.scenario, c), s, &m, Json::object(), witness);
  o.result["scenario_file"] = path;
  return o;
}

// --- histories --------------------------------------------------------------------

std::string outcome_word(Consistency c) { return to_string(c); }

Outcome histories_outcome(const std::array<double, 3>& angles, const Vec3& bloch) {
  const double r2 = bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2];
  if (r2 > 1.0 + 1e-12) throw PreconditionError("state Bloch vector must have length <= 1");
  ComplexMatrix rho = ComplexMatrix::identity(2) + pauli_dot(bloch);
  rho *= 0.5;
  const HistoryFamily f = HistoryFamily::from_observables(
      State::from_matrix(rho), {xz_observable(angles[0]), xz_observable(angles[1]), xz_observable(angles[2])});
  const LgDecomposition d = lg_decomposition(f);

  Outcome o;
  Json& r = o.result;
  r["angles"] = angles;
  r["state_bloch"] = bloch;
  r["correlators"] = Json{{"histories", d.correlators_histories}, {"anticommutator", d.correlators_anticommutator}};
  r["lhs"] = d.lhs;
  r["classical_bound"] = -1;
  r["violated"] = d.violated;
  Json probs = Json::array();
  const auto hs = all_histories();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    probs.push_back(Json{{"history", hs[i].to_string()}, {"probability", d.history_probabilities[i]}});
  }
  r["history_probabilities"] = probs;
  auto interference = [](const std::vector<InterferenceReport>& rows) {
    Json a = Json::array();
    for (const auto& x : rows) {
      a.push_back(Json{{"pattern", x.pattern.to_string()},
                       {"value", x.value},
                       {"marginal_identity_residual", x.marginal_identity_residual}});
    }
    return a;
  };
  r["interference"] = interference(d.interference);
  r["last_slot_interference"] = interference(d.last_slot_interference);
  r["rewritten_expression"] = d.rewritten_expression;
  r["rewritten_minus_lhs"] = d.rewritten_expression - d.lhs;
  Json pairs = Json::array();
  for (const auto& p : d.pairs) {
    pairs.push_back(Json{{"first", p.first.to_string()},
                         {"second", p.second.to_string()},
                         {"value", p.value},
                         {"classification", outcome_word(p.classification)}});
  }
  r["pairs"] = pairs;
  r["any_inconsistent"] = d.any_inconsistent;

  std::string& t = o.text;
  t = format("angles        %.9f %.9f %.9f\n", angles[0], angles[1], angles[2]);
  t += format("state bloch   %.9f %.9f %.9f\n", bloch[0], bloch[1], bloch[2]);
  t += "history     probability\n";
  for (std::size_t i = 0; i < hs.size(); ++i) t += format("%-11s %.12f\n", hs[i].to_string().c_str(), d.history_probabilities[i]);
  t += "pattern     interference      identity residual\n";
  for (const auto& x : d.interference) {
    t += format("%-11s % .12f  %.3g\n", x.pattern.to_string().c_str(), x.value, x.marginal_identity_residual);
  }
  for (const auto& x : d.last_slot_interference) {
    t += format("%-11s % .12f  %.3g\n", x.pattern.to_string().c_str(), x.value, x.marginal_identity_residual);
  }
  t += "pair                     Re Tr(C rho C'^dag)  class\n";
  for (const auto& p : d.pairs) {
    t += format("%-8s %-8s       % .12f  %s\n", p.first.to_string().c_str(), p.second.to_string().c_str(), p.value,
                outcome_word(p.classification).c_str());
  }
  static const char* names[3] = {"<X1X2>", "<X2X3>", "<X1X3>"};
  for (std::size_t i = 0; i < 3; ++i) {
    t += format("%-8s      % .12f (histories)  % .12f (anticommutator)\n", names[i], d.correlators_histories[i],
                d.correlators_anticommutator[i]);
  }
  t += format("lhs           %.12f (bound -1, violated %s)\n", d.lhs, d.violated ? "yes" : "no");
  t += format("rewritten     %.12f (rewritten - lhs = %.12f)\n", d.rewritten_expression, d.rewritten_expression - d.lhs);
  t += format("inconsistent  %s\n", d.any_inconsistent ? "yes" : "no");
  return o;
}

// --- scan -------------------------------------------------------------------------

std::string csv(const std::vector<ScanRow>& rows) {
  std::string out = "parameter,lhs_value,classical_bound\n";
  for (const auto& r : rows) out += format("%.17g,%.17g,%.17g\n", r.parameter, r.lhs, r.classical_bound);
  return out;
}

// --- selftest -----------------------------------------------------------------------

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<Check> selftest_checks(std::uint64_t seed, std::size_t draws) {
  std::vector<Check> checks;
  Rng rng(seed);

  {
    bool ok = true;
    for (std::size_t n = 3; n <= 16; ++n) ok = ok && classical_bound(CycleScenario::canonical(n)) == -static_cast<long long>(n) + 2;
    ok = ok && classical_bound(CycleScenario::all_plus(3)) == -1;
    checks.push_back({"classical bounds", ok, "canonical n = 3..16 give -n+2; all-plus n = 3 gives -1"});
  }
  {
    const double t = evaluate_builder("kcbs-temporal").lhs;
    const double s = evaluate_builder("kcbs-spatial").lhs;
    const double c = evaluate_builder("kcbs-contextual").lhs;
    const double want_t = 5.0 * std::cos(4.0 * std::numbers::pi / 5.0);
    const double want_c = 5.0 - 4.0 * std::sqrt(5.0);
    const bool ok = std::abs(t - want_t) < 1e-9 && std::abs(s - want_t) < 1e-9 && std::abs(c - want_c) < 1e-9;
    checks.push_back({"kcbs values", ok, format("temporal %.9f spatial %.9f contextual %.9f", t, s, c)});
  }
  {
    double worst = 0.0;
    for (std::size_t n = 3; n <= 12; ++n) {
      const double want = static_cast<double>(n) * std::cos(std::numbers::pi * static_cast<double>(n - 1) / static_cast<double>(n));
      worst = std::max(worst, std::abs(evaluate_builder("chained-" + std::to_string(n)).lhs - want));
    }
    checks.push_back({"chained values", worst < 1e-8, format("max deviation %.3g for n = 3..12", worst)});
  }
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      const State rho = random_qubit_state(rng);
      const Observable x = random_qubit_observable(rng);
      const Observable y = random_qubit_observable(rng);
      worst = std::max(worst, std::abs(correlation_sequential(rho, x, y).value - anticommutator_correlation(rho, x, y)));
    }
    checks.push_back({"sequential = anticommutator", worst <= 1e-10, format("max deviation %.3g over %zu draws", worst, draws)});
  }
  {
    const bool temporal_infeasible = !jpd_feasible(correlators_to_marginals(evaluate_builder("kcbs-temporal").correlations)).feasible;
    const JpdWitness boundary = jpd_feasible(
        correlators_to_marginals(CorrelationVector(CycleScenario::canonical(5), std::vector<double>(5, -0.6))));
    std::size_t violations = 0;
    for (std::size_t i = 0; i < draws; ++i) {
      const std::size_t n = 3 + i % 4;
      const MarginalSet m = random_marginal_set(n, rng, i % 2 == 0);
      const JpdWitness w = jpd_feasible(m);
      if (!w.feasible) continue;
      const std::vector<double> c = witness_correlators(n, w.distribution);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> signs(n);
        for (std::size_t b = 0; b < n; ++b) signs[b] = assignment_value(mask, b);
        const CycleScenario s(signs);
        if (inequality_lhs(CorrelationVector(s, c)) < static_cast<double>(classical_bound(s)) - 1e-7) ++violations;
      }
    }
    const bool ok = temporal_infeasible && boundary.feasible && boundary.max_constraint_residual <= kWitnessResidualTol && violations == 0;
    checks.push_back({"jpd feasibility", ok,
                      format("temporal %s, boundary %s (residual %.3g), soundness violations %zu",
                             temporal_infeasible ? "infeasible" : "FEASIBLE", boundary.feasible ? "feasible" : "INFEASIBLE",
                             boundary.max_constraint_residual, violations)});
  }
  {
    double completeness = 0.0;
    double last_slot = 0.0;
    double identity = 0.0;
    std::size_t unexplained = 0;
    for (std::size_t i = 0; i < draws; ++i) {
      const LgDecomposition d = lg_decomposition(random_history_family(rng));
      double total = 0.0;
      for (double p : d.history_probabilities) total += p;
      completeness = std::max(completeness, std::abs(total - 1.0));
      for (const auto& x : d.last_slot_interference) last_slot = std::max(last_slot, std::abs(x.value));
      for (const auto& x : d.interference) identity = std::max(identity, std::abs(x.marginal_identity_residual));
      if (d.lhs < -1.0 - 1e-6) {
        bool found = false;
        for (const auto& p : d.pairs) found = found || std::abs(p.value) > kInconsistentTol;
        if (!found) ++unexplained;
      }
    }
    const bool ok = completeness <= 1e-10 && last_slot <= 1e-12 && identity <= 1e-10 && unexplained == 0;
    checks.push_back({"history identities", ok,
                      format("completeness %.3g, last-slot %.3g, marginal identity %.3g, unexplained violations %zu",
                             completeness, last_slot, identity, unexplained)});
  }
  {
    const SearchProblem p = kcbs_search_problem(SearchKind::kTemporalTimes);
    SearchOptions opt;
    opt.seed = seed;
    const SearchResult r = minimize_lhs(p.space, p.scenario, p.evaluator, opt);
    const double want = 5.0 * std::cos(4.0 * std::numbers::pi / 5.0);
    checks.push_back({"optimizer recovery", std::abs(r.value - want) < 1e-6, format("temporal-times optimum %.12f", r.value)});
  }
  return checks;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int report_failure(const std::exception_ptr& failure, std::ostream& err) {
  try {
    std::rethrow_exception(failure);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::exception& e) {
    err << "unexpected failure: " << e.what() << "\n";
    return kExitUnexpected;
  } catch (...) {
    err << "unexpected failure\n";
    return kExitUnexpected;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"corrlab: classical bounds, quantum correlations and joint-distribution tests for n-cycle inequalities",
               "corrlab"};
  app.set_version_flag("--version", CORRLAB_VERSION);
  app.require_subcommand(1);

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "structured"}))->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for random starts and draws")->capture_default_str();
  app.add_option("--out", g.out, "Write output to this file (relative paths resolve against $CORRLAB_OUT_DIR)");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a builder's configuration or a scenario file");
  evaluate->add_option("builder", ev.builder, "kcbs-contextual, kcbs-temporal, kcbs-spatial or chained-<n>");
  evaluate->add_option("--scenario", ev.scenario, "Scenario file");

  EvaluateArgs fe;
  std::vector<double> fe_correlators;
  std::vector<double> fe_singles;
  std::string fe_signs;
  std::string fe_witness;
  auto* feasibility = app.add_subcommand("feasibility", "Decide whether a joint distribution reproduces the pair marginals");
  feasibility->add_option("builder", fe.builder, "Builder name");
  feasibility->add_option("--scenario", fe.scenario, "Scenario file");
  feasibility->add_option("--correlators", fe_correlators, "Comma-separated adjacent correlators")->delimiter(',');
  feasibility->add_option("--singles", fe_singles, "Comma-separated single expectations (default 0)")->delimiter(',');
  feasibility->add_option("--signs", fe_signs, "Sign pattern such as '++++-' (default canonical)");
  feasibility->add_option("--witness", fe_witness, "Export the witness distribution (mask weight lines)");

  std::size_t bd_n = 0;
  std::string bd_signs;
  std::string bd_scenario;
  auto* bound = app.add_subcommand("bound", "Classical bound by enumeration of deterministic assignments");
  bound->add_option("--n", bd_n, "Number of observables");
  bound->add_option("--signs", bd_signs, "Sign pattern such as '+++' (default canonical)");
  bound->add_option("--scenario", bd_scenario, "Scenario file");

  std::vector<double> hs_angles{0.0, 2.0 * std::numbers::pi / 3.0, 4.0 * std::numbers::pi / 3.0};
  std::vector<double> hs_bloch{0.0, 0.0, 0.0};
  auto* histories = app.add_subcommand("histories", "Consistent-histories decomposition of a three-time experiment");
  histories->add_option("--angles", hs_angles, "Bloch angles in the xz-plane of the three observables")
      ->delimiter(',')
      ->expected(3);
  histories->add_option("--state-bloch", hs_bloch, "Bloch vector of the initial qubit state")->delimiter(',')->expected(3);

  std::string sc_sweep;
  std::string sc_optimize;
  std::optional<double> sc_from;
  std::optional<double> sc_to;
  std::optional<std::size_t> sc_steps;
  std::size_t sc_starts = 64;
  auto* scan = app.add_subcommand("scan", "Sweep one parameter or optimize a configuration space");
  auto* sweep_opt = scan->add_option("--sweep", sc_sweep, "chained-n, temporal-rate or spatial-step")
                        ->check(CLI::IsMember({"chained-n", "temporal-rate", "spatial-step"}));
  auto* optimize_opt = scan->add_option("--optimize", sc_optimize, "temporal-times, bloch-angles or contextual-cone");
  sweep_opt->excludes(optimize_opt);
  scan->add_option("--from", sc_from, "Grid start");
  scan->add_option("--to", sc_to, "Grid end");
  scan->add_option("--steps", sc_steps, "Grid points");
  scan->add_option("--starts", sc_starts, "Random starts for --optimize")->capture_default_str();

  std::size_t st_draws = 200;
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->add_option("--draws", st_draws, "Random draws per property")->capture_default_str();

  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool structured = g.format == "structured";
  std::string command;
  Outcome result;
  std::string rendered;
  try {
    if (evaluate->parsed()) {
      command = "evaluate";
      if (ev.builder.empty() == ev.scenario.empty()) throw CLI::ValidationError("evaluate", "give exactly one of a builder name or --scenario");
      result = ev.scenario.empty() ? from_builder(ev.builder, std::nullopt)
                                   : from_file(read_scenario_file(ev.scenario), ev.scenario, std::nullopt);
    } else if (feasibility->parsed()) {
      command = "feasibility";
      const int sources = !fe.builder.empty() + !fe.scenario.empty() + !fe_correlators.empty();
      if (sources != 1) throw CLI::ValidationError("feasibility", "give exactly one of a builder name, --scenario or --correlators");
      std::optional<std::string> witness;
      if (!fe_witness.empty()) witness = fe_witness;
      if (!fe.builder.empty()) {
        result = from_builder(fe.builder, witness);
      } else if (!fe.scenario.empty()) {
        result = from_file(read_scenario_file(fe.scenario), fe.scenario, witness);
      } else {
        const std::size_t n = fe_correlators.size();
        const CycleScenario s = fe_signs.empty() ? CycleScenario::canonical(n) : CycleScenario(parse_signs(fe_signs));
        if (s.size() != n) throw PreconditionError("--signs must have one entry per correlator");
        if (fe_singles.empty()) fe_singles.assign(n, 0.0);
        if (fe_singles.size() != n) throw PreconditionError("--singles must have one entry per correlator");
        if (n > kMaxJpdSize) throw ResourceError("feasibility: n = " + std::to_string(n) + " exceeds the LP cap of 16");
        result = summarize("correlators", "data", CorrelationVector(s, fe_correlators), fe_singles, nullptr, Json::object(), witness);
      }
    } else if (bound->parsed()) {
      command = "bound";
      CycleScenario s = CycleScenario::canonical(3);
      if (!bd_scenario.empty()) {
        if (bd_n != 0 || !bd_signs.empty()) throw CLI::ValidationError("bound", "--scenario excludes --n and --signs");
        s = read_scenario_file(bd_scenario).scenario;
      } else if (!bd_signs.empty()) {
        s = CycleScenario(parse_signs(bd_signs));
        if (bd_n != 0 && bd_n != s.size()) throw PreconditionError("--n disagrees with the length of --signs");
      } else {
        if (bd_n == 0) throw CLI::ValidationError("bound", "give --n, --signs or --scenario");
        if (bd_n > kMaxEnumerationSize) {
          throw ResourceError("bound: n = " + std::to_string(bd_n) + " exceeds the enumeration cap of 24");
        }
        s = CycleScenario::canonical(bd_n);
      }
      const long long b = classical_bound(s);
      result.result = Json{{"scenario", scenario_json(s)}, {"classical_bound", b}, {"assignments", 1ull << s.size()}};
      result.text = format("n             %zu\nsigns         %s\nbound         %lld\n", s.size(), sign_string(s).c_str(), b);
    } else if (histories->parsed()) {
      command = "histories";
      result = histories_outcome({hs_angles[0], hs_angles[1], hs_angles[2]}, {hs_bloch[0], hs_bloch[1], hs_bloch[2]});
    } else if (scan->parsed()) {
      command = "scan";
      if (sc_sweep.empty() == sc_optimize.empty()) throw CLI::ValidationError("scan", "give exactly one of --sweep or --optimize");
      if (!sc_sweep.empty()) {
        std::vector<ScanRow> rows;
        if (sc_sweep == "chained-n") {
          const double from = sc_from.value_or(3.0);
          const double to = sc_to.value_or(12.0);
          if (from < 3.0 || to < from || from != std::floor(from) || to != std::floor(to)) {
            throw PreconditionError("chained-n sweep needs integers 3 <= from <= to");
          }
          if (to > static_cast<double>(kMaxEnumerationSize)) {
            throw ResourceError("chained-n sweep: n exceeds the enumeration cap of 24");
          }
          rows = scan_chained(static_cast<std::size_t>(from), static_cast<std::size_t>(to));
        } else if (sc_sweep == "temporal-rate") {
          rows = scan_temporal_rate(sc_from.value_or(0.0), sc_to.value_or(2.0 * std::numbers::pi), sc_steps.value_or(41));
        } else {
          rows = scan_spatial_step(sc_from.value_or(0.0), sc_to.value_or(std::numbers::pi), sc_steps.value_or(41));
        }
        result.text = csv(rows);
        Json jr = Json::array();
        for (const auto& r : rows) jr.push_back(Json{{"parameter", r.parameter}, {"lhs_value", r.lhs}, {"classical_bound", r.classical_bound}});
        result.result = Json{{"sweep", sc_sweep}, {"rows", jr}};
      } else {
        const SearchProblem p = kcbs_search_problem(parse_search_kind(sc_optimize));
        SearchOptions opt;
        opt.seed = g.seed;
        opt.starts = sc_starts;
        const SearchResult r = minimize_lhs(p.space, p.scenario, p.evaluator, opt);
        const long long b = classical_bound(p.scenario);
        result.result = Json{{"space", sc_optimize},
                             {"dimension", p.space.dimension()},
                             {"starts", sc_starts},
                             {"value", r.value},
                             {"params", r.params},
                             {"best_start", r.best_start},
                             {"best_seed_value", r.best_seed_value},
                             {"evaluations", r.evaluations},
                             {"classical_bound", b},
                             {"violated", r.value < static_cast<double>(b) - kViolationTol}};
        result.text = format("space         %s (dimension %zu)\nstarts        %zu (seed %llu)\n", sc_optimize.c_str(),
                             p.space.dimension(), sc_starts, static_cast<unsigned long long>(g.seed));
        result.text += format("minimum       %.12f\nbound         %lld\nparams       ", r.value, b);
        for (double x : r.params) result.text += format(" %.9f", x);
        result.text += format("\nbest start    %zu\nevaluations   %zu\n", r.best_start, r.evaluations);
      }
    } else if (selftest->parsed()) {
      command = "selftest";
      const auto checks = selftest_checks(g.seed, st_draws);
      Json jc = Json::array();
      bool all = true;
      for (const auto& c : checks) {
        all = all && c.passed;
        jc.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        result.text += format("%s %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
      }
      result.result = Json{{"draws", st_draws}, {"checks", jc}, {"passed", all}};
      if (!all) result.status = kExitVerification;
    }
  } catch (...) {
    return report_failure(std::current_exception(), err);
  }

  if (structured) {
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Json report;
    report["schema"] = "corrlab-report/1";
    report["volatile"] = Json{{"timestamp", utc_timestamp()}, {"elapsed_seconds", elapsed}};
    report["header"] = Json{{"tool", "corrlab"}, {"version", CORRLAB_VERSION}, {"command", command}, {"arguments", args}, {"seed", g.seed}};
    report["result"] = std::move(result.result);
    rendered = report.dump(2) + "\n";
  } else {
    rendered = std::move(result.text);
  }

  try {
    if (g.out.empty()) {
      out << rendered;
    } else {
      write_file(resolve_output(g.out), rendered);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return result.status;
}

}  // namespace corrlab::cli
