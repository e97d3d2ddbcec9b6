// cli_app.hpp - the `lightbulb` batch command line.
//
// Every subcommand builds one Envelope (parameters, a table of rows, scalar
// summary values and named pass/fail checks) and renders it as JSON or CSV.
// Exit codes: 0 all checks passed, 1 some check failed, 2 usage error.
#pragma once

#include "lightbulb/lightbulb.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <charconv>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lightbulb::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// monostate renders as JSON null / empty CSV field.
using Value = std::variant<std::monostate, std::int64_t, std::string, bool>;

struct Envelope {
  std::string command;
  std::vector<std::pair<std::string, Value>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  std::vector<std::pair<std::string, Value>> summary;
  std::vector<std::pair<std::string, bool>> status;

  bool passed() const {
    for (const auto& s : status)
      if (!s.second) return false;
    return true;
  }
};

/// Shortest text that round-trips to the same double.
inline std::string float_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Renderer {
  unsigned digits = 12;

  Value exact(const Rational& q) const { return to_fraction_string(q); }
  Value decimal(const Rational& q) const { return to_decimal_string(q, digits); }
  static Value real(double v) { return float_text(v); }
};

inline nlohmann::ordered_json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return nullptr;
        else
          return x;
      },
      v);
}

inline std::string to_csv_field(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return "";
        else if constexpr (std::is_same_v<T, bool>)
          return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>)
          return std::to_string(x);
        else
          return x;
      },
      v);
}

inline void write_json(const Envelope& e, std::ostream& out) {
  nlohmann::ordered_json j;
  j["command"] = e.command;
  auto& params = j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : e.parameters) params[k] = to_json(v);
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : e.rows) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < e.columns.size(); ++c) row[e.columns[c]] = to_json(r[c]);
    rows.push_back(std::move(row));
  }
  auto& summary = j["summary"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : e.summary) summary[k] = to_json(v);
  auto& status = j["status"] = nlohmann::ordered_json::object();
  for (const auto& [k, ok] : e.status) status[k] = ok ? "pass" : "fail";
  j["passed"] = e.passed();
  out << j.dump(2) << '\n';
}

/// Row table, a blank line, then key,value lines for parameters, summary
/// and status.
inline void write_csv(const Envelope& e, std::ostream& out) {
  for (std::size_t c = 0; c < e.columns.size(); ++c) out << (c ? "," : "") << e.columns[c];
  out << '\n';
  for (const auto& r : e.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << to_csv_field(r[c]);
    out << '\n';
  }
  out << "\nkey,value\n";
  out << "command," << e.command << '\n';
  for (const auto& [k, v] : e.parameters) out << "parameters." << k << ',' << to_csv_field(v) << '\n';
  for (const auto& [k, v] : e.summary) out << "summary." << k << ',' << to_csv_field(v) << '\n';
  for (const auto& [k, ok] : e.status) out << "status." << k << ',' << (ok ? "pass" : "fail") << '\n';
  out << "passed," << (e.passed() ? "true" : "false") << '\n';
}

inline Value opt_exact(const Renderer& fmt, const std::optional<Rational>& q) {
  return q ? fmt.exact(*q) : Value{};
}

inline Value opt_decimal(const Renderer& fmt, const std::optional<Rational>& q) {
  return q ? fmt.decimal(*q) : Value{};
}

inline std::string join_failures(const std::vector<std::string>& f) {
  std::string s;
  for (const auto& x : f) s += (s.empty() ? "" : ";") + x;
  return s;
}

inline int resolve_m(const std::string& flag, int n) {
  if (flag == "auto") return parity_class_of(n).m();
  if (flag == "0") return 0;
  if (flag == "1") return 1;
  throw UsageError("--m must be auto, 0 or 1");
}

inline void require_n(int n, int minimum, const char* what) {
  if (n < minimum)
    throw UsageError(std::string(what) + " requires --n >= " + std::to_string(minimum));
}

// ---- subcommands ----------------------------------------------------------

inline Envelope cmd_exact(int n, const Renderer& fmt) {
  require_n(n, 1, "exact");
  const Pmf w = exact_terminal_pmf(n);
  const ParityClass parity = parity_class_of(n);
  Envelope e;
  e.command = "exact";
  e.parameters = {{"n", std::int64_t{n}}};
  e.columns = {"w", "prob", "prob_decimal"};
  bool in_lattice = true;
  for (const auto& [x, p] : w.masses()) {
    e.rows.push_back({std::int64_t{x}, fmt.exact(p), fmt.decimal(p)});
    in_lattice = in_lattice && parity.contains(x);
  }
  const auto mv = pmf_mean_var(w);
  e.summary = {{"m", std::int64_t{parity.m()}},
               {"mean", fmt.exact(mv.mean)},
               {"mean_decimal", fmt.decimal(mv.mean)},
               {"variance", fmt.exact(mv.variance)},
               {"variance_decimal", fmt.decimal(mv.variance)}};
  e.status = {{"support_in_lattice", in_lattice}};
  return e;
}

inline Envelope cmd_clubbed(int n, const std::string& m_flag, const Renderer& fmt) {
  require_n(n, 1, "clubbed");
  const int m = resolve_m(m_flag, n);
  const ClubbedPmf c = clubbed_pmf(n, m);
  Envelope e;
  e.command = "clubbed";
  e.parameters = {{"n", std::int64_t{n}}, {"m", std::int64_t{m}}};
  e.columns = {"i", "prob", "prob_decimal"};
  for (const auto& [x, p] : c.dist().masses())
    e.rows.push_back({std::int64_t{x}, fmt.exact(p), fmt.decimal(p)});
  e.status = {{"balance", verify_balance(c)}};
  return e;
}

inline std::vector<std::string> report_columns() {
  return {"n",
          "m",
          "tv_exact",
          "tv_decimal",
          "tv_float",
          "bound",
          "ratio",
          "sharp_stein_norm",
          "sharp_stein_norm_decimal",
          "collision_prob",
          "collision_prob_decimal",
          "collision_bound",
          "failures"};
}

inline std::vector<Value> report_cells(const ReportRow& r, const Renderer& fmt) {
  return {std::int64_t{r.n},
          std::int64_t{r.m},
          fmt.exact(r.tv_exact),
          fmt.decimal(r.tv_exact),
          Renderer::real(r.tv_float),
          Renderer::real(r.bound),
          Renderer::real(r.ratio),
          opt_exact(fmt, r.sharp_stein_norm),
          opt_decimal(fmt, r.sharp_stein_norm),
          opt_exact(fmt, r.collision_prob),
          opt_decimal(fmt, r.collision_prob),
          Renderer::real(r.collision_bound),
          join_failures(r.failures)};
}

inline Envelope cmd_tv(int n, const Renderer& fmt) {
  require_n(n, 1, "tv");
  const ReportRow r = verify_theorem(n);
  Envelope e;
  e.command = "tv";
  e.parameters = {{"n", std::int64_t{n}}};
  e.columns = report_columns();
  e.rows.push_back(report_cells(r, fmt));
  auto failed = [&](const char* name) {
    for (const auto& f : r.failures)
      if (f == name) return true;
    return false;
  };
  e.status.emplace_back("tv_bound", !failed("tv_bound"));
  if (n >= 21) e.status.emplace_back("tv_below_1_percent", !failed("tv_below_1_percent"));
  if (n >= 28) e.status.emplace_back("tv_below_0.1_percent", !failed("tv_below_0.1_percent"));
  if (n >= 2) {
    e.status.emplace_back("stein_norm_bound", !failed("stein_norm_bound"));
    e.status.emplace_back("collision_bound", !failed("collision_bound"));
  }
  return e;
}

inline Envelope cmd_report(int n_max, const Renderer& fmt) {
  if (n_max < 1) throw UsageError("report requires --n-max >= 1");
  const auto rows = build_report(n_max);
  Envelope e;
  e.command = "report";
  e.parameters = {{"n_max", std::int64_t{n_max}}};
  e.columns = report_columns();
  for (const auto& r : rows) {
    e.rows.push_back(report_cells(r, fmt));
    e.status.emplace_back("n=" + std::to_string(r.n), r.passed());
  }
  // Diagnostic only: exact TV should shrink from n to n + 4.
  std::int64_t decay_violations = 0;
  std::string decay_at;
  for (std::size_t i = 0; i + 4 < rows.size(); ++i) {
    const auto& a = rows[i];
    const auto& b = rows[i + 4];
    if (a.n >= 4 && sgn(a.tv_exact) != 0 && sgn(b.tv_exact) != 0 && !(b.tv_exact < a.tv_exact)) {
      ++decay_violations;
      decay_at += (decay_at.empty() ? "" : ";") + std::to_string(a.n);
    }
  }
  e.summary = {{"decay_violations", decay_violations}, {"decay_violations_at", decay_at}};
  return e;
}

/// "all-singletons", "random:K:SEED", or a comma list forming one set.
inline std::vector<std::vector<int>> parse_sets(const std::string& spec, const ParityClass& parity) {
  std::vector<std::vector<int>> sets;
  if (spec == "all-singletons") {
    for (int x : parity.points()) sets.push_back({x});
    return sets;
  }
  if (spec.rfind("random:", 0) == 0) {
    const auto rest = spec.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw UsageError("--set random:K:SEED expected");
    try {
      const int k = std::stoi(rest.substr(0, colon));
      const std::uint64_t seed = std::stoull(rest.substr(colon + 1));
      if (k < 1) throw UsageError("--set random:K:SEED needs K >= 1");
      return random_lattice_subsets(parity, k, seed);
    } catch (const std::logic_error&) {
      throw UsageError("--set random:K:SEED expected");
    }
  }
  std::vector<int> one;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    int x = 0;
    try {
      x = std::stoi(tok, &used);
    } catch (const std::logic_error&) {
      throw UsageError("--set: '" + tok + "' is not an integer");
    }
    if (used != tok.size()) throw UsageError("--set: '" + tok + "' is not an integer");
    if (!parity.contains(x))
      throw UsageError("--set: " + std::to_string(x) + " is not in L_{" +
                       std::to_string(parity.m()) + "," + std::to_string(parity.n()) + "}");
    one.push_back(x);
  }
  sets.push_back(std::move(one));
  return sets;
}

inline std::string set_text(const std::vector<int>& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ";" : "") + std::to_string(a[i]);
  return s + "}";
}

inline Envelope cmd_stein_verify(int n, const std::string& m_flag, const std::string& set_spec,
                                 const Renderer& fmt) {
  require_n(n, 1, "stein verify");
  const int m = resolve_m(m_flag, n);
  const ParityClass parity(n, m);
  const auto sets = parse_sets(set_spec, parity);
  const SteinSolver solver(parity);

  Envelope e;
  e.command = "stein verify";
  e.parameters = {{"n", std::int64_t{n}}, {"m", std::int64_t{m}}, {"set", set_spec}};
  e.columns = {"set", "size", "pi_A", "pi_A_decimal", "sup_norm", "sup_norm_decimal",
               "max_abs_residual", "forms_agree"};
  Rational worst = 0;
  bool all_agree = true;
  for (const auto& a : sets) {
    const auto lin = solver.by_linearity(a);
    const bool agree = lin == solver.compact(a);
    all_agree = all_agree && agree;
    const Rational res = solver.max_abs_residual(lin);
    worst = std::max(worst, res);
    const Rational pa = solver.target_law().mass_of(lin.target_set());
    e.rows.push_back({set_text(lin.target_set()), static_cast<std::int64_t>(lin.target_set().size()),
                      fmt.exact(pa), fmt.decimal(pa), fmt.exact(lin.sup_norm()),
                      fmt.decimal(lin.sup_norm()), fmt.exact(res), agree});
  }
  e.summary = {{"sets", static_cast<std::int64_t>(sets.size())},
               {"max_abs_residual", fmt.exact(worst)}};
  e.status = {{"residual_zero", sgn(worst) == 0}, {"forms_agree", all_agree}};
  return e;
}

inline Envelope cmd_stein_norm(int n, const std::string& m_flag, const Renderer& fmt) {
  if (n < 2) throw UsageError("stein norm requires --n >= 2 (the bound is infinite for n <= 1)");
  const int m = resolve_m(m_flag, n);
  const ParityClass parity(n, m);
  const auto sup = SteinSolver(parity).sharp_sup();
  const double lemma = lemma_bound(n);
  const double scaled = to_double(sup.value) * std::sqrt(static_cast<double>(n)) * (n - 1);

  Envelope e;
  e.command = "stein norm";
  e.parameters = {{"n", std::int64_t{n}}, {"m", std::int64_t{m}}};
  e.columns = {"n", "m", "sharp", "sharp_decimal", "attained_at", "lemma_bound", "ratio",
               "scaled_sharp", "g1", "g2"};
  e.rows.push_back({std::int64_t{n}, std::int64_t{m}, fmt.exact(sup.value), fmt.decimal(sup.value),
                    std::int64_t{sup.at}, Renderer::real(lemma),
                    Renderer::real(to_double(sup.value) / lemma), Renderer::real(scaled),
                    Renderer::real(g1(n)), Renderer::real(g2(n))});
  e.status = {{"sharp_le_lemma_bound", sup.value <= from_double(lemma)}};
  return e;
}

inline Envelope cmd_simulate(int n, std::int64_t reps, std::uint64_t seed, std::int64_t batches,
                             const Renderer& fmt) {
  require_n(n, 1, "simulate");
  if (reps < 1) throw UsageError("simulate requires --reps >= 1");
  if (batches < 1 || batches > reps) throw UsageError("simulate requires 1 <= --batches <= --reps");
  SimConfig cfg{n, static_cast<std::uint64_t>(reps), seed, static_cast<unsigned>(batches)};
  const SimResult res = run(cfg);
  const Pmf exact = exact_terminal_pmf(n);

  Envelope e;
  e.command = "simulate";
  e.parameters = {{"n", std::int64_t{n}},
                  {"reps", reps},
                  {"seed", std::to_string(seed)},
                  {"batches", batches}};
  e.columns = {"w", "count", "frequency", "exact_prob", "exact_decimal"};
  std::vector<int> points;
  for (const auto& [w, c] : res.empirical) points.push_back(w);
  for (const auto& [w, p] : exact.masses())
    if (!res.empirical.contains(w)) points.push_back(w);
  std::sort(points.begin(), points.end());
  for (int w : points) {
    const auto it = res.empirical.find(w);
    const std::uint64_t c = it == res.empirical.end() ? 0 : it->second;
    e.rows.push_back({std::int64_t{w}, static_cast<std::int64_t>(c),
                      Renderer::real(static_cast<double>(c) / static_cast<double>(res.reps)),
                      fmt.exact(exact(w)), fmt.decimal(exact(w))});
  }
  e.summary = {{"reps", static_cast<std::int64_t>(res.reps)},
               {"parity_violations", static_cast<std::int64_t>(res.parity_violations)},
               {"empirical_tv", Renderer::real(empirical_tv(res, exact))}};
  e.status = {{"parity", res.parity_violations == 0}};
  return e;
}

inline Envelope cmd_collision(int n, const Renderer& fmt) {
  require_n(n, 2, "collision");
  const Rational p = collision_probability(n);
  const double bound = collision_bound(n);
  Envelope e;
  e.command = "collision";
  e.parameters = {{"n", std::int64_t{n}}};
  e.columns = {"n", "collision_prob", "collision_prob_decimal", "collision_bound"};
  e.rows.push_back({std::int64_t{n}, fmt.exact(p), fmt.decimal(p), Renderer::real(bound)});
  e.status = {{"collision_bound", p <= from_double(std::nextafter(bound, 0.0))},
              {"exponent_identity", exponent_identity(n)}};
  return e;
}

// ---- driver ---------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lightbulb-process distributions, clubbed binomial approximation and "
               "Stein-method bounds"};
  app.require_subcommand(1);

  int n = 0;
  int n_max = 0;
  std::string m_flag = "auto";
  std::string set_spec = "all-singletons";
  std::int64_t reps = 100000;
  std::uint64_t seed = 0;
  std::int64_t batches = 1;
  std::string format = "json";
  int digits = 12;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--float-digits", digits, "Decimal places for rendered rationals");
  };
  auto with_n = [&](CLI::App* sub) { sub->add_option("--n", n, "Bulb count")->required(); };

  auto* exact = app.add_subcommand("exact", "Exact law of the terminal on-count W_n");
  with_n(exact);
  common(exact);

  auto* clubbed = app.add_subcommand("clubbed", "Clubbed binomial law C_{m,n}");
  with_n(clubbed);
  clubbed->add_option("--m", m_flag, "Lattice parity: auto, 0 or 1");
  common(clubbed);

  auto* tv = app.add_subcommand("tv", "Exact d_TV(W_n, C_n) against the exponential bound");
  with_n(tv);
  common(tv);

  auto* report = app.add_subcommand("report", "tv rows for n = 1..n-max");
  report->add_option("--n-max", n_max, "Largest n")->required();
  common(report);

  auto* stein = app.add_subcommand("stein", "Stein equation solutions and norms");
  stein->require_subcommand(1);
  auto* verify = stein->add_subcommand("verify", "Exact residual of the Stein equation");
  with_n(verify);
  verify->add_option("--m", m_flag, "Lattice parity: auto, 0 or 1");
  verify->add_option("--set", set_spec, "Comma list, all-singletons, or random:K:SEED");
  common(verify);
  auto* norm = stein->add_subcommand("norm", "Sharp sup-norm of the solution vs. the lemma bound");
  with_n(norm);
  norm->add_option("--m", m_flag, "Lattice parity: auto, 0 or 1");
  common(norm);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo of the bulb-level process");
  with_n(simulate);
  simulate->add_option("--reps", reps, "Replicates");
  simulate->add_option("--seed", seed, "Master seed");
  simulate->add_option("--batches", batches, "Independent streams, run concurrently");
  common(simulate);

  auto* collision = app.add_subcommand("collision", "Pair-collision probability vs. exp(-(n+1)/3)");
  with_n(collision);
  common(collision);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (digits < 1) throw UsageError("--float-digits must be >= 1");
    const Renderer fmt{static_cast<unsigned>(digits)};
    Envelope env;
    if (exact->parsed())
      env = cmd_exact(n, fmt);
    else if (clubbed->parsed())
      env = cmd_clubbed(n, m_flag, fmt);
    else if (tv->parsed())
      env = cmd_tv(n, fmt);
    else if (report->parsed())
      env = cmd_report(n_max, fmt);
    else if (verify->parsed())
      env = cmd_stein_verify(n, m_flag, set_spec, fmt);
    else if (norm->parsed())
      env = cmd_stein_norm(n, m_flag, fmt);
    else if (simulate->parsed())
      env = cmd_simulate(n, reps, seed, batches, fmt);
    else
      env = cmd_collision(n, fmt);

    if (format == "csv")
      write_csv(env, out);
    else
      write_json(env, out);
    for (const auto& [name, ok] : env.status)
      if (!ok) err << "FAIL " << env.command << ": " << name << '\n';
    return env.passed() ? kExitPass : kExitFail;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace lightbulb::cli
