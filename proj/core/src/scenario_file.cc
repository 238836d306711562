#include "corrlab/scenario_file.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "corrlab/errors.h"
#include "corrlab/quantum.h"

namespace corrlab {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_reals(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_real(values[i]);
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw PreconditionError("scenario file line " + std::to_string(line) + ": " + what);
}

std::vector<double> parse_reals(const std::string& value, std::size_t line) {
  std::istringstream in(value);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::size_t parse_count(const std::string& value, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) fail(line, "not a non-negative integer: '" + value + "'");
  return v;
}

}  // namespace

ScenarioFile parse_scenario_file(std::string_view text) {
  std::optional<std::size_t> n;
  std::optional<std::vector<int>> signs;
  std::map<std::size_t, PairDistribution> pairs;
  ScenarioFile out;

  std::istringstream lines{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(lines, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "n") {
      n = parse_count(value, line_no);
    } else if (key == "signs") {
      std::istringstream in(value);
      std::vector<int> s;
      std::string tok;
      while (in >> tok) {
        if (tok == "+" || tok == "+1" || tok == "1") {
          s.push_back(1);
        } else if (tok == "-" || tok == "-1") {
          s.push_back(-1);
        } else {
          fail(line_no, "sign must be + or -, got '" + tok + "'");
        }
      }
      signs = std::move(s);
    } else if (key == "builder") {
      out.builder = value;
    } else if (key.starts_with("param.")) {
      out.params[key.substr(6)] = value;
    } else if (key == "correlators") {
      out.correlators = parse_reals(value, line_no);
    } else if (key == "singles") {
      out.singles = parse_reals(value, line_no);
    } else if (key.starts_with("pair.")) {
      const std::size_t i = parse_count(key.substr(5), line_no);
      const auto cells = parse_reals(value, line_no);
      if (cells.size() != 4) fail(line_no, "a pair needs exactly 4 cells");
      pairs[i] = {cells[0], cells[1], cells[2], cells[3]};
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }

  if (!n) throw PreconditionError("scenario file: missing 'n'");
  if (signs) {
    if (signs->size() != *n) throw PreconditionError("scenario file: 'signs' must list n entries");
    out.scenario = CycleScenario(std::move(*signs));
  } else {
    out.scenario = CycleScenario::canonical(*n);
  }
  if (out.correlators && out.correlators->size() != *n) {
    throw PreconditionError("scenario file: 'correlators' must list n entries");
  }
  if (out.singles && out.singles->size() != *n) throw PreconditionError("scenario file: 'singles' must list n entries");
  if (out.singles && !out.correlators) throw PreconditionError("scenario file: 'singles' needs 'correlators'");
  if (!pairs.empty()) {
    if (pairs.size() != *n || pairs.rbegin()->first != *n - 1) {
      throw PreconditionError("scenario file: pair.0 ... pair.<n-1> must all be present");
    }
    std::vector<PairDistribution> ordered;
    for (auto& [i, p] : pairs) ordered.push_back(p);
    out.pairs = std::move(ordered);
  }
  return out;
}

std::string write_scenario_file(const ScenarioFile& file) {
  std::string out = "# corrlab scenario\n";
  out += "n = " + std::to_string(file.scenario.size()) + "\n";
  out += "signs =";
  for (int s : file.scenario.signs()) out += s > 0 ? " +" : " -";
  out += "\n";
  if (file.builder) out += "builder = " + *file.builder + "\n";
  for (const auto& [k, v] : file.params) out += "param." + k + " = " + v + "\n";
  if (file.correlators) out += "correlators = " + join_reals(*file.correlators) + "\n";
  if (file.singles) out += "singles = " + join_reals(*file.singles) + "\n";
  if (file.pairs) {
    for (std::size_t i = 0; i < file.pairs->size(); ++i) {
      const auto& p = (*file.pairs)[i];
      out += "pair." + std::to_string(i) + " = " + join_reals({p[0], p[1], p[2], p[3]}) + "\n";
    }
  }
  return out;
}

ScenarioFile read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_file(buf.str());
}

MarginalSet scenario_marginals(const ScenarioFile& file) {
  if (file.pairs) return MarginalSet(*file.pairs);
  if (file.correlators) {
    const CorrelationVector c(file.scenario, *file.correlators);
    if (file.singles) return correlators_to_marginals(c, *file.singles);
    return correlators_to_marginals(c);
  }
  if (file.builder) {
    const Evaluation e = evaluate_builder(*file.builder);
    return correlators_to_marginals(e.correlations, e.singles);
  }
  throw PreconditionError("scenario file: needs pair.<i>, correlators, or a builder to define marginals");
}

}  // namespace corrlab
