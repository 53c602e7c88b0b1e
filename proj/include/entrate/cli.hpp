#pragma once

// Command-line front end. `run` holds all of the logic so tests can drive it
// in-process; tools/entrate.cpp only forwards argv and the terminal check.
//
// Exit codes: 0 feasible / success, 1 infeasible, 2 input error,
// 3 grouped result disagrees with the brute-force oracle (--oracle).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "entrate/entropy.hpp"
#include "entrate/json.hpp"
#include "entrate/majorization.hpp"
#include "entrate/oracle.hpp"
#include "entrate/rates.hpp"
#include "entrate/spectrum.hpp"

namespace entrate::cli {

enum ExitCode : int { kSuccess = 0, kInfeasible = 1, kInputError = 2, kOracleMismatch = 3 };

struct CatalystSpec {
  GroupedSpectrum spectrum;
  std::uint64_t copies = 1;
};

struct ProblemFile {
  GroupedSpectrum source;
  GroupedSpectrum target;
  std::optional<CatalystSpec> catalyst;
  RateBudget budgets;
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t positive(const json& j, const char* name, bool allow_zero = false) {
  if (!j.is_number_integer() || j.get<long long>() < (allow_zero ? 0 : 1))
    throw InputError(std::string(name) + " must be a " + (allow_zero ? "non-negative" : "positive") + " integer");
  return j.get<std::uint64_t>();
}

}  // namespace detail

/// {"source":[...], "target":[...], "catalyst":{"spectrum":[...],"copies":c}?, "budgets":{...}?}
inline ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) throw InputError("problem file must be a JSON object");
  for (const char* key : {"source", "target"})
    if (!j.contains(key)) throw InputError(std::string("problem file lacks \"") + key + "\"");
  ProblemFile p{to_grouped(spectrum_from_json(j.at("source"))), to_grouped(spectrum_from_json(j.at("target"))),
                std::nullopt, RateBudget{}};
  if (j.contains("catalyst") && !j.at("catalyst").is_null()) {
    const auto& c = j.at("catalyst");
    if (!c.contains("spectrum")) throw InputError("catalyst lacks \"spectrum\"");
    p.catalyst = CatalystSpec{to_grouped(spectrum_from_json(c.at("spectrum"))),
                              c.contains("copies") ? detail::positive(c.at("copies"), "catalyst.copies") : 1};
  }
  if (j.contains("budgets") && !j.at("budgets").is_null()) {
    const auto& b = j.at("budgets");
    if (b.contains("m_max")) p.budgets.m_max = detail::positive(b.at("m_max"), "budgets.m_max");
    if (b.contains("n_cap")) p.budgets.n_cap = detail::positive(b.at("n_cap"), "budgets.n_cap");
    if (b.contains("q_grid"))
      p.budgets.q_grid = static_cast<std::uint32_t>(detail::positive(b.at("q_grid"), "budgets.q_grid", true));
    if (b.contains("copies_max"))
      p.budgets.copies_max = static_cast<std::uint32_t>(detail::positive(b.at("copies_max"), "budgets.copies_max", true));
  }
  return p;
}

inline ProblemFile load_problem(const std::string& path, std::istream& stdin_stream) {
  json j;
  try {
    if (path == "-") {
      j = json::parse(stdin_stream);
    } else {
      std::ifstream in(path);
      if (!in) throw InputError("cannot open problem file '" + path + "'");
      j = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(j);
}

namespace detail {

struct Options {
  std::string problem_path;
  std::string format;  // "json" | "table" | "" (auto)
  bool oracle = false;
  std::uint64_t m = 1, n = 1, k = 1;
  std::optional<std::uint64_t> m_max, n_cap;
  std::optional<std::uint32_t> q_grid, copies_max;
  std::string tau;
};

class Printer {
 public:
  Printer(std::ostream& out, bool as_json) : out_(out), json_(as_json) {}
  bool json_mode() const { return json_; }
  void emit(const json& j) { out_ << j.dump(2) << '\n'; }
  template <typename T>
  void row(const std::string& key, const T& value) {
    out_ << std::left << std::setw(24) << key << value << '\n';
  }

 private:
  std::ostream& out_;
  bool json_;
};

inline std::string fmt_real(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

// Compares a grouped verdict with the oracle when the expansion fits the guard.
// Returns false on disagreement, writing the details to err.
inline bool oracle_check_majorization(const GroupedSpectrum& a, const GroupedSpectrum& b,
                                      const MajorizationVerdict& verdict, std::ostream& err) {
  const BigInt guard = from_u64(oracle::kSizeGuard);
  if (a.dimension() > guard || b.dimension() > guard) {
    err << "oracle: skipped, expansion of " << to_string(a.dimension()) << " x " << to_string(b.dimension())
        << " entries exceeds the guard\n";
    return true;
  }
  auto da = oracle::dense(a), db = oracle::dense(b);
  bool naive = oracle::naive_majorizes(da, db);
  if (naive != verdict.holds) {
    err << "oracle: DISAGREEMENT grouped=" << verdict.holds << " naive=" << naive << '\n';
    return false;
  }
  if (verdict.witness) {
    auto l = to_u64(verdict.witness->prefix_length);
    if (oracle::naive_prefix_sum(da, l) != verdict.witness->source_prefix_sum ||
        oracle::naive_prefix_sum(db, l) != verdict.witness->target_prefix_sum) {
      err << "oracle: DISAGREEMENT witness prefix sums at l=" << l << '\n';
      return false;
    }
  }
  err << "oracle: agrees\n";
  return true;
}

inline int cmd_check(const ProblemFile& p, const Options& o, Printer& pr, std::ostream& err) {
  GroupedSpectrum a = tensor_power(p.source, o.m), b = tensor_power(p.target, o.n);
  MajorizationVerdict v = nielsen_transformable(a, b);
  if (o.oracle && !oracle_check_majorization(a, b, v, err)) return kOracleMismatch;
  if (pr.json_mode()) {
    json j = v;
    j["m"] = o.m;
    j["n"] = o.n;
    pr.emit(j);
  } else {
    pr.row("transformation", "source^" + std::to_string(o.m) + " -> target^" + std::to_string(o.n));
    pr.row("feasible", v.holds ? "yes" : "no");
    pr.row("breakpoints checked", v.breakpoints_checked);
    if (v.witness) {
      pr.row("violation at l", to_string(v.witness->prefix_length));
      pr.row("source prefix sum", to_string(v.witness->source_prefix_sum));
      pr.row("target prefix sum", to_string(v.witness->target_prefix_sum));
    }
  }
  return v.holds ? kSuccess : kInfeasible;
}

inline int cmd_rate(const ProblemFile& p, const Options& o, Printer& pr, std::ostream& err) {
  RateBudget budget = p.budgets;
  if (o.m_max) budget.m_max = *o.m_max;
  if (o.n_cap) budget.n_cap = *o.n_cap;
  RateReport r = rate_report(p.source, p.target, budget);

  if (o.oracle && !r.budget_too_small) {
    GroupedSpectrum a = tensor_power(p.source, r.lower_m);
    if (!oracle_check_majorization(a, tensor_power(p.target, r.lower_f), majorizes(a, tensor_power(p.target, r.lower_f)),
                                   err) ||
        !oracle_check_majorization(a, tensor_power(p.target, r.lower_f + 1),
                                   majorizes(a, tensor_power(p.target, r.lower_f + 1)), err))
      return kOracleMismatch;
  }
  if (r.budget_too_small)
    err << "no f(m) > 0 found for m <= " << budget.m_max << "; m >= " << r.positivity_threshold
        << " is guaranteed to work\n";

  if (pr.json_mode()) {
    pr.emit(json(r));
  } else {
    pr.row("lower bound on D", to_string(r.lower_bound) + "  (" + fmt_real(r.lower_bound.get_d()) + ")");
    pr.row("  witness", "f(" + std::to_string(r.lower_m) + ") = " + std::to_string(r.lower_f));
    pr.row("upper bound R", fmt_real(r.upper_bound) + "  at tau = " + r.upper_order.label());
    if (r.closed_form) pr.row("closed form -log_k a1", fmt_real(*r.closed_form));
    pr.row("asymptotic H/H", fmt_real(r.asymptotic));
    pr.row("m_max", r.m_max);
    pr.row("positivity threshold", r.positivity_threshold);
    if (r.budget_too_small) pr.row("budget too small", "yes");
  }
  return r.budget_too_small ? kInfeasible : kSuccess;
}

inline int cmd_catalyst(const ProblemFile& p, const Options& o, Printer& pr, std::ostream& err) {
  GroupedSpectrum a = tensor_power(p.source, o.m), b = tensor_power(p.target, o.n);
  std::uint32_t q_grid = o.q_grid.value_or(p.budgets.q_grid);
  std::uint32_t copies_max = o.copies_max.value_or(p.budgets.copies_max);

  CatalystReport r;
  if (p.catalyst) {
    r = catalyst_check(a, b, p.catalyst->spectrum, p.catalyst->copies);
  } else if (q_grid == 0 || copies_max == 0) {
    r.plain_feasible = majorizes(a, b).holds;
    r.catalyst_feasible = r.plain_feasible;
  } else {
    r = catalyst_search_2level(a, b, q_grid, copies_max);
  }

  if (o.oracle && r.catalyst && r.catalyst_feasible && !r.plain_feasible) {
    GroupedSpectrum c = tensor_power(r.catalyst->spectrum, r.catalyst->copies);
    GroupedSpectrum lhs = tensor_product(a, c), rhs = tensor_product(b, c);
    if (!oracle_check_majorization(lhs, rhs, majorizes(lhs, rhs), err)) return kOracleMismatch;
  }

  if (pr.json_mode()) {
    json j = r;
    j["m"] = o.m;
    j["n"] = o.n;
    pr.emit(j);
  } else {
    pr.row("transformation", "source^" + std::to_string(o.m) + " -> target^" + std::to_string(o.n));
    pr.row("plain feasible", r.plain_feasible ? "yes" : "no");
    pr.row("catalyst feasible", r.catalyst_feasible ? "yes" : (r.search_space ? "none in searched grid" : "no"));
    if (r.catalyst) {
      std::string spec;
      for (const auto& g : r.catalyst->spectrum.groups())
        for (BigInt i = 0; i < g.multiplicity && i < 8; ++i) spec += (spec.empty() ? "" : ", ") + to_string(g.value);
      pr.row("catalyst", "(" + spec + ") x " + std::to_string(r.catalyst->copies));
    }
    if (r.search_space)
      pr.row("searched", "q_grid=" + std::to_string(r.search_space->q_grid) +
                             " copies<=" + std::to_string(r.search_space->copies_max) + " (" +
                             std::to_string(r.search_space->candidates_tried) + " candidates)");
  }
  return r.catalyst_feasible ? kSuccess : kInfeasible;
}

inline int cmd_pmax(const ProblemFile& p, const Options& o, Printer& pr, std::ostream& err) {
  GroupedSpectrum a = tensor_power(p.source, o.k), b = tensor_power(p.target, o.k);
  Rational prob = max_conversion_probability(a, b);
  if (o.oracle) {
    const BigInt guard = from_u64(oracle::kSizeGuard);
    if (a.dimension() <= guard && b.dimension() <= guard) {
      Rational naive = oracle::naive_max_conversion_probability(oracle::dense(a), oracle::dense(b));
      if (naive != prob) {
        err << "oracle: DISAGREEMENT grouped=" << to_string(prob) << " naive=" << to_string(naive) << '\n';
        return kOracleMismatch;
      }
      err << "oracle: agrees\n";
    } else {
      err << "oracle: skipped, expansion exceeds the guard\n";
    }
  }
  if (pr.json_mode()) {
    pr.emit(json{{"k", o.k}, {"probability", to_string(prob)}, {"approx", real12(prob.get_d())}});
  } else {
    pr.row("copies k", o.k);
    pr.row("P_max", to_string(prob) + "  (" + fmt_real(prob.get_d()) + ")");
  }
  return kSuccess;
}

inline int cmd_renyi(const ProblemFile& p, const Options& o, Printer& pr, std::ostream&) {
  RenyiOrder order = RenyiOrder::zero();
  try {
    order = RenyiOrder::parse(o.tau);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  double s = renyi(p.source, order), t = renyi(p.target, order);
  std::optional<double> ratio;
  if (p.target.is_entangled()) ratio = s / t;
  if (pr.json_mode()) {
    pr.emit(json{{"order", order_json(order)},
                 {"source", real12(s)},
                 {"target", real12(t)},
                 {"ratio", ratio ? real12(*ratio) : json(nullptr)}});
  } else {
    pr.row("tau", order.label());
    pr.row("S(source) [bits]", fmt_real(s));
    pr.row("S(target) [bits]", fmt_real(t));
    pr.row("ratio", ratio ? fmt_real(*ratio) : std::string("undefined (product target)"));
  }
  return kSuccess;
}

}  // namespace detail

/// Entry point. `interactive` selects the default output format (table on a
/// terminal, JSON otherwise).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
               bool interactive = false) {
  detail::Options o;
  CLI::App app{"Deterministic LOCC transformability and exchange-rate bounds for bipartite pure states", "entrate"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("problem", o.problem_path, "Problem file (JSON), '-' for stdin")->required();
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_flag("--oracle", o.oracle, "Cross-check against brute-force expansion where feasible");
  };

  auto* check = app.add_subcommand("check", "Decide source^m -> target^n by majorization");
  add_common(check);
  check->add_option("-m,--m", o.m, "Source copies")->check(CLI::PositiveNumber);
  check->add_option("-n,--n", o.n, "Target copies")->check(CLI::PositiveNumber);

  auto* rate = app.add_subcommand("rate", "Lower and upper bounds on the deterministic exchange rate");
  add_common(rate);
  rate->add_option("--m-max", o.m_max, "Largest source copy count tried")->check(CLI::PositiveNumber);
  rate->add_option("--n-cap", o.n_cap, "Target copy ceiling per m")->check(CLI::PositiveNumber);

  auto* catalyst = app.add_subcommand("catalyst", "Verify a supplied catalyst or search two-level catalysts");
  add_common(catalyst);
  catalyst->add_option("-m,--m", o.m, "Source copies")->check(CLI::PositiveNumber);
  catalyst->add_option("-n,--n", o.n, "Target copies")->check(CLI::PositiveNumber);
  catalyst->add_option("--q-grid", o.q_grid, "Subdivisions of (1/2, 1) for q (0 disables search)");
  catalyst->add_option("--copies-max", o.copies_max, "Most catalyst copies tried (0 disables search)");

  auto* pmax = app.add_subcommand("pmax", "Maximal conversion probability for k copies");
  add_common(pmax);
  pmax->add_option("-k,--k", o.k, "Copies of both states")->check(CLI::PositiveNumber);

  auto* renyi_cmd = app.add_subcommand("renyi", "Renyi entropies of both states and their ratio");
  add_common(renyi_cmd);
  renyi_cmd->add_option("--tau", o.tau, "Order: 0, 1, inf or a positive number")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    ProblemFile p = load_problem(o.problem_path, in);
    bool as_json = o.format.empty() ? !interactive : o.format == "json";
    detail::Printer pr(out, as_json);
    if (*check) return detail::cmd_check(p, o, pr, err);
    if (*rate) return detail::cmd_rate(p, o, pr, err);
    if (*catalyst) return detail::cmd_catalyst(p, o, pr, err);
    if (*pmax) return detail::cmd_pmax(p, o, pr, err);
    return detail::cmd_renyi(p, o, pr, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const SpectrumError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ProductStateError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace entrate::cli
