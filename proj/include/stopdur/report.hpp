#pragma once

// Table reproduction and CSV/JSON serialization used by the command-line tool.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "duration.hpp"
#include "montecarlo.hpp"
#include "policies.hpp"
#include "setting.hpp"

namespace stopdur::report {

inline constexpr int default_precision = 6;

struct OutputRecord {
  std::string setting;
  std::optional<std::int64_t> n;  // absent: asymptotic
  std::string statistic;
  double value = 0.0;
  std::string provenance;  // exact, asymptotic or montecarlo

  bool operator==(const OutputRecord&) const = default;
};

/// %g with the given number of significant digits.
inline std::string format_value(double v, int precision = default_precision) {
  if (!std::isfinite(v))
    throw std::invalid_argument("format_value: non-finite value");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

inline std::string n_label(const std::optional<std::int64_t>& n) { return n ? std::to_string(*n) : "asymptotic"; }

inline std::string to_csv(const std::vector<OutputRecord>& records, int precision = default_precision) {
  std::ostringstream out;
  out << "setting,N,statistic,value,provenance\n";
  for (const auto& r : records)
    out << r.setting << ',' << n_label(r.n) << ',' << r.statistic << ',' << format_value(r.value, precision) << ','
        << r.provenance << '\n';
  return out.str();
}

inline nlohmann::json to_json(const std::vector<OutputRecord>& records, int precision = default_precision) {
  auto arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j;
    j["setting"] = r.setting;
    if (r.n)
      j["N"] = *r.n;
    else
      j["N"] = "asymptotic";
    j["statistic"] = r.statistic;
    j["value"] = std::stod(format_value(r.value, precision));
    j["provenance"] = r.provenance;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline std::vector<OutputRecord> from_json(const nlohmann::json& arr) {
  std::vector<OutputRecord> out;
  for (const auto& j : arr) {
    OutputRecord r;
    r.setting = j.at("setting").get<std::string>();
    if (j.at("N").is_number_integer())
      r.n = j.at("N").get<std::int64_t>();
    r.statistic = j.at("statistic").get<std::string>();
    r.value = j.at("value").get<double>();
    r.provenance = j.at("provenance").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string to_json_text(const std::vector<OutputRecord>& records, int precision = default_precision) {
  return to_json(records, precision).dump(2) + "\n";
}

// Tables ---------------------------------------------------------------------

inline const std::vector<std::int64_t>& table2_pool_sizes() {
  static const std::vector<std::int64_t> sizes = {9, 25, 49, 64, 100, 400, 2500, 10000};
  return sizes;
}

inline constexpr std::int64_t table2_large_n = 1000000;

/// Finite-pool means and medians for the Moser, Bearden, dowry and
/// full-information best-choice settings.
inline std::vector<OutputRecord> table2_records() {
  std::vector<OutputRecord> out;
  auto add = [&](const char* setting, std::int64_t n, const char* stat, double v, const char* prov = "exact") {
    out.push_back({setting, n, stat, v, prov});
  };
  auto sizes = table2_pool_sizes();
  sizes.push_back(table2_large_n);
  for (std::int64_t n : sizes) {
    const auto nd = static_cast<double>(n);
    const auto moser = cutoff_pmf(n, moser_cutoffs(n));
    const double moser_mean = moser.mean();
    const auto moser_median = moser.median();
    add("moser", n, "mean", moser_mean);
    add("moser", n, "mean_fraction", moser_mean / nd);
    add("moser", n, "median", static_cast<double>(moser_median));
    add("moser", n, "median_fraction", static_cast<double>(moser_median) / nd);

    for (Variant v : {Variant::Bearden, Variant::Secretary}) {
      const auto policy = single_threshold(SettingSpec::with_n(v, n));
      const auto tag = std::string(variant_tag(v));
      add(tag.c_str(), n, "mean", no_info_mean(n, policy));
      add(tag.c_str(), n, "median", static_cast<double>(no_info_pmf(n, policy).median()));
    }

    if (n <= default_gm_cap) {
      const auto gm = gm_pmf(n, gm_best_choice_cutoffs(n));
      add("gm-bestchoice", n, "mean", gm.mean());
      add("gm-bestchoice", n, "median", static_cast<double>(gm.median()));
    } else {
      const auto r = asymptotic_report(SettingSpec::make(Variant::GMBestChoice));
      add("gm-bestchoice", n, "mean", r.mean_fraction * nd, "asymptotic");
      add("gm-bestchoice", n, "median", r.median_fraction.value() * nd, "asymptotic");
    }
  }
  return out;
}

inline std::string setting_label(const SettingSpec& s) {
  std::string label(variant_tag(s.variant));
  if (s.s)
    label += ":S=" + std::to_string(*s.s);
  if (s.p)
    label += ":p=" + format_value(*s.p);
  if (s.b)
    label += ":b=" + std::to_string(*s.b);
  if (s.cost)
    label += ":cost=" + format_value(*s.cost);
  return label;
}

/// Rows of the asymptotic summary table (plus Gusein-Zade S = 10).
inline std::vector<SettingSpec> table3_settings() {
  std::vector<SettingSpec> rows = {
      SettingSpec::make(Variant::GuseinZade),
      SettingSpec::make(Variant::Moser),
      SettingSpec::make(Variant::FIDuration),
      SettingSpec::make(Variant::NoInfoDuration),
      SettingSpec::make(Variant::FIBestChoiceDuration),
  };
  for (int s : {25, 15, 10, 5, 3, 2})
    rows.push_back(SettingSpec::make(Variant::GuseinZade, {.s = s}));
  for (Variant v : {Variant::Lindley, Variant::NoInfoBestChoiceDuration, Variant::GMBestChoice, Variant::Secretary,
                    Variant::Postdoc, Variant::Sakaguchi})
    rows.push_back(SettingSpec::make(v));
  return rows;
}

inline std::vector<OutputRecord> table3_records() {
  std::vector<OutputRecord> out;
  for (const auto& s : table3_settings()) {
    const auto r = asymptotic_report(s);
    const auto label = setting_label(s);
    out.push_back({label, std::nullopt, "mean_fraction", r.mean_fraction, "asymptotic"});
    if (r.median_fraction)
      out.push_back({label, std::nullopt, "median_fraction", *r.median_fraction, "asymptotic"});
  }
  return out;
}

// Single-setting summaries ---------------------------------------------------

inline std::vector<OutputRecord> asymptotic_records(const SettingSpec& s) {
  const auto r = asymptotic_report(s);
  const auto label = setting_label(s);
  std::vector<OutputRecord> out{{label, std::nullopt, "mean_fraction", r.mean_fraction, "asymptotic"}};
  if (r.median_fraction)
    out.push_back({label, std::nullopt, "median_fraction", *r.median_fraction, "asymptotic"});
  if (r.success_prob)
    out.push_back({label, std::nullopt, "success", *r.success_prob, "asymptotic"});
  if (r.no_choice_prob)
    out.push_back({label, std::nullopt, "no_choice", *r.no_choice_prob, "asymptotic"});
  return out;
}

inline std::vector<OutputRecord> distribution_records(const SettingSpec& s, const DurationDistribution& d,
                                                      const std::vector<double>& quantiles = {0.25, 0.75}) {
  const auto label = setting_label(s);
  const auto stats = summarize(d, quantiles);
  std::vector<OutputRecord> out = {
      {label, d.n, "mean", stats.mean, "exact"},
      {label, d.n, "median", static_cast<double>(stats.median), "exact"},
      {label, d.n, "mean_fraction", *stats.mean_fraction, "exact"},
      {label, d.n, "median_fraction", *stats.median_fraction, "exact"},
  };
  for (const auto& [p, x] : stats.quantiles)
    out.push_back({label, d.n, "quantile_" + format_value(p), static_cast<double>(x), "exact"});
  if (d.no_choice_mass)
    out.push_back({label, d.n, "no_choice", *d.no_choice_mass, "exact"});
  return out;
}

// Simulation output ------------------------------------------------------------

inline nlohmann::json simulation_json(const SettingSpec& s, const SimulationSummary& sim,
                                      const std::optional<OutputRecord>& reference, int precision = default_precision) {
  auto num = [precision](double v) { return std::stod(format_value(v, precision)); };
  nlohmann::json j;
  j["setting"] = setting_label(s);
  if (s.n)
    j["N"] = *s.n;
  j["trials"] = sim.trials;
  j["seed"] = sim.seed;
  j["mean_T"] = num(sim.mean_t);
  j["se_mean"] = num(sim.se_mean);
  j["median_T"] = sim.median_t;
  j["mean_fraction"] = num(sim.mean_fraction);
  j["se_fraction"] = num(sim.se_fraction);
  if (sim.success_rate)
    j["success_rate"] = num(*sim.success_rate);
  if (sim.no_choice_rate)
    j["no_choice_rate"] = num(*sim.no_choice_rate);
  if (sim.mean_payoff) {
    j["mean_payoff"] = num(*sim.mean_payoff);
    j["se_payoff"] = num(*sim.se_payoff);
  }
  if (reference)
    j["reference"] = to_json({*reference}, precision)[0];
  return j;
}

inline std::string simulation_csv(const SettingSpec& s, const SimulationSummary& sim,
                                  const std::optional<OutputRecord>& reference, int precision = default_precision) {
  const auto j = simulation_json(s, sim, reference, precision);
  std::ostringstream out;
  out << "field,value\n";
  for (const auto& [key, value] : j.items()) {
    if (key == "reference")
      continue;
    out << key << ',';
    if (value.is_string())
      out << value.get<std::string>();
    else if (value.is_number_float())
      out << format_value(value.get<double>(), precision);
    else
      out << value.dump();
    out << '\n';
  }
  if (reference)
    out << "reference_" << reference->statistic << ',' << format_value(reference->value, precision) << '\n'
        << "reference_provenance," << reference->provenance << '\n';
  return out.str();
}

}  // namespace stopdur::report
