#pragma once

// JSON forms of spectra and reports. Exact rationals and big integers travel as
// strings; reals are rounded to 12 significant digits.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "entrate/entropy.hpp"
#include "entrate/majorization.hpp"
#include "entrate/rates.hpp"
#include "entrate/spectrum.hpp"

namespace entrate {

using nlohmann::json;

/// Rounds to 12 significant digits; non-finite values become null.
inline json real12(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

inline json rational_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>()), 10));
  throw std::invalid_argument("expected an exact rational string, got " + j.dump());
}

inline BigInt bigint_from_json(const json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>(), 10);
  if (j.is_number_unsigned()) return from_u64(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()), 10);
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

// ---- spectra ---------------------------------------------------------------

/// ["2/5", "0.4", ...] -> SchmidtSpectrum. Binary floats are refused.
inline SchmidtSpectrum spectrum_from_json(const json& j) {
  if (!j.is_array()) throw SpectrumError(SpectrumErrorKind::Malformed, "spectrum must be a JSON array of strings");
  std::vector<std::string> entries;
  for (const auto& e : j) {
    if (!e.is_string())
      throw SpectrumError(SpectrumErrorKind::Malformed, "spectrum entries must be strings, got " + e.dump());
    entries.push_back(e.get<std::string>());
  }
  return parse_spectrum(std::span<const std::string>(entries));
}

/// Expanded string list when small, otherwise the grouped form.
inline json spectrum_json(const GroupedSpectrum& g) {
  if (g.dimension() <= 4096) {
    json out = json::array();
    const SchmidtSpectrum s = expand(g);
    for (const auto& p : s.probs()) out.push_back(to_string(p));
    return out;
  }
  json out = json::array();
  for (const auto& grp : g.groups()) out.push_back({{"value", to_string(grp.value)}, {"multiplicity", to_string(grp.multiplicity)}});
  return out;
}

inline GroupedSpectrum grouped_from_json(const json& j) {
  if (j.is_array() && !j.empty() && j.front().is_object()) {
    std::vector<Group> groups;
    for (const auto& g : j) groups.push_back(Group{rational_from_json(g.at("value")), bigint_from_json(g.at("multiplicity"))});
    return GroupedSpectrum(std::move(groups));
  }
  return to_grouped(spectrum_from_json(j));
}

// ---- majorization ----------------------------------------------------------

inline void to_json(json& j, const MajorizationVerdict& v) {
  j = json{{"holds", v.holds}, {"breakpoints_checked", v.breakpoints_checked}};
  if (v.witness)
    j["witness"] = {{"l", to_string(v.witness->prefix_length)},
                    {"lhs", to_string(v.witness->source_prefix_sum)},
                    {"rhs", to_string(v.witness->target_prefix_sum)}};
  else
    j["witness"] = nullptr;
}

inline void from_json(const json& j, MajorizationVerdict& v) {
  v.holds = j.at("holds").get<bool>();
  v.breakpoints_checked = j.value("breakpoints_checked", std::uint64_t{0});
  v.witness.reset();
  if (j.contains("witness") && !j.at("witness").is_null()) {
    const auto& w = j.at("witness");
    v.witness = MajorizationWitness{bigint_from_json(w.at("l")), rational_from_json(w.at("lhs")),
                                    rational_from_json(w.at("rhs"))};
  }
}

// ---- entropy ---------------------------------------------------------------

inline json order_json(const RenyiOrder& o) {
  json tau = o.kind() == RenyiOrder::Kind::Infinity ? json("inf") : real12(o.tau());
  return json{{"tau", tau}, {"u", real12(o.u())}};
}

inline RenyiOrder order_from_json(const json& j) {
  const auto& tau = j.at("tau");
  if (tau.is_string()) return RenyiOrder::parse(tau.get<std::string>());
  return RenyiOrder::from_tau(tau.get<double>());
}

inline void to_json(json& j, const EntropyRatioResult& r) {
  j = json{{"ratio", real12(r.ratio)},
           {"minimizing_order", order_json(r.minimizing_order)},
           {"grid_resolution", r.grid_resolution},
           {"refined", r.refined}};
}

inline void from_json(const json& j, EntropyRatioResult& r) {
  r.ratio = j.at("ratio").get<double>();
  r.minimizing_order = order_from_json(j.at("minimizing_order"));
  r.grid_resolution = j.at("grid_resolution").get<std::uint32_t>();
  r.refined = j.at("refined").get<bool>();
}

// ---- rates -----------------------------------------------------------------

inline void to_json(json& j, const RateReport& r) {
  j = json{{"lower_bound", to_string(r.lower_bound)},
           {"lower_witness", {{"m", r.lower_m}, {"f", r.lower_f}}},
           {"upper_bound", real12(r.upper_bound)},
           {"upper_order", order_json(r.upper_order)},
           {"closed_form", r.closed_form ? real12(*r.closed_form) : json(nullptr)},
           {"asymptotic", real12(r.asymptotic)},
           {"budget", {{"m_max", r.m_max}, {"n_cap", r.n_cap ? json(*r.n_cap) : json(nullptr)}}},
           {"budget_too_small", r.budget_too_small},
           {"positivity_threshold", r.positivity_threshold}};
}

inline void from_json(const json& j, RateReport& r) {
  r.lower_bound = rational_from_json(j.at("lower_bound"));
  r.lower_m = j.at("lower_witness").at("m").get<std::uint64_t>();
  r.lower_f = j.at("lower_witness").at("f").get<std::uint64_t>();
  r.upper_bound = j.at("upper_bound").get<double>();
  r.upper_order = order_from_json(j.at("upper_order"));
  r.closed_form = j.at("closed_form").is_null() ? std::nullopt : std::optional<double>(j.at("closed_form").get<double>());
  r.asymptotic = j.at("asymptotic").get<double>();
  r.m_max = j.at("budget").at("m_max").get<std::uint64_t>();
  const auto& cap = j.at("budget").at("n_cap");
  r.n_cap = cap.is_null() ? std::nullopt : std::optional<std::uint64_t>(cap.get<std::uint64_t>());
  r.budget_too_small = j.at("budget_too_small").get<bool>();
  r.positivity_threshold = j.at("positivity_threshold").get<std::uint64_t>();
}

inline void to_json(json& j, const CatalystReport& r) {
  j = json{{"plain_feasible", r.plain_feasible}, {"catalyst_feasible", r.catalyst_feasible}};
  j["catalyst"] = r.catalyst ? json{{"spectrum", spectrum_json(r.catalyst->spectrum)}, {"copies", r.catalyst->copies}}
                             : json(nullptr);
  j["search_space"] = r.search_space ? json{{"q_grid", r.search_space->q_grid},
                                            {"copies_max", r.search_space->copies_max},
                                            {"candidates_tried", r.search_space->candidates_tried}}
                                     : json(nullptr);
}

inline void from_json(const json& j, CatalystReport& r) {
  r.plain_feasible = j.at("plain_feasible").get<bool>();
  r.catalyst_feasible = j.at("catalyst_feasible").get<bool>();
  r.catalyst.reset();
  r.search_space.reset();
  if (!j.at("catalyst").is_null())
    r.catalyst = CatalystUse{grouped_from_json(j.at("catalyst").at("spectrum")),
                             j.at("catalyst").at("copies").get<std::uint64_t>()};
  if (!j.at("search_space").is_null()) {
    const auto& s = j.at("search_space");
    r.search_space = CatalystSearchSpace{s.at("q_grid").get<std::uint32_t>(), s.at("copies_max").get<std::uint32_t>(),
                                         s.at("candidates_tried").get<std::uint64_t>()};
  }
}

}  // namespace entrate
