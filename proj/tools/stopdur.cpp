// stopdur: reproduce the duration tables, dump distributions, run simulations.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stopdur/duration.hpp"
#include "stopdur/montecarlo.hpp"
#include "stopdur/policies.hpp"
#include "stopdur/report.hpp"

namespace {

using namespace stopdur;

constexpr int exit_bad_flags = 2;
constexpr int exit_cap = 3;

struct SettingFlags {
  std::string setting;
  std::optional<std::int64_t> n;
  std::optional<int> s;
  std::optional<double> p;
  std::optional<std::int64_t> b;
  std::optional<double> cost;

  void attach(CLI::App& cmd) {
    cmd.add_option("--setting", setting, "problem variant, e.g. secretary, moser, gusein-zade")->required();
    cmd.add_option("--n", n, "pool size N");
    cmd.add_option("--s", s, "target rank S (gusein-zade)");
    cmd.add_option("--p", p, "acceptance probability (smith)");
    cmd.add_option("--b", b, "maximum pool size (presman-sonin)");
    cmd.add_option("--cost", cost, "observation or decision cost");
  }

  [[nodiscard]] SettingSpec spec() const {
    const auto v = parse_variant(setting);
    if (!v) {
      std::string known;
      for (Variant x : all_variants)
        known += std::string(known.empty() ? "" : ", ") + std::string(variant_tag(x));
      throw std::invalid_argument("unknown setting '" + setting + "' (known: " + known + ")");
    }
    return SettingSpec::make(*v, {.n = n, .s = s, .p = p, .b = b, .cost = cost});
  }
};

struct OutputFlags {
  std::string format = "csv";
  int precision = report::default_precision;
  std::string out;

  void attach(CLI::App& cmd) {
    cmd.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("--precision", precision, "significant digits")->check(CLI::Range(1, 17));
    cmd.add_option("--out", out, "output file (default: standard output)");
  }

  void write(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
      throw std::runtime_error("cannot open '" + out + "' for writing");
    f << text;
  }
};

std::string records_text(const std::vector<report::OutputRecord>& records, const OutputFlags& o) {
  return o.format == "json" ? report::to_json_text(records, o.precision) : report::to_csv(records, o.precision);
}

std::string pmf_text(const SettingSpec& spec, const std::vector<report::OutputRecord>& summary,
                     const std::vector<double>& pmf, const OutputFlags& o) {
  std::vector<double> cdf(pmf.size());
  specfun::CompensatedSum acc;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    acc.add(pmf[i]);
    cdf[i] = acc.value();
  }
  if (o.format == "json") {
    nlohmann::json j;
    j["setting"] = report::setting_label(spec);
    j["summary"] = report::to_json(summary, o.precision);
    auto num = [&](double v) { return std::stod(report::format_value(v, o.precision)); };
    j["pmf"] = nlohmann::json::array();
    j["cdf"] = nlohmann::json::array();
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      j["pmf"].push_back(num(pmf[i]));
      j["cdf"].push_back(num(cdf[i]));
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream s;
  for (const auto& r : summary)
    s << "# " << r.statistic << '=' << report::format_value(r.value, o.precision) << " (" << r.provenance << ")\n";
  s << "x,pmf,cdf\n";
  for (std::size_t i = 0; i < pmf.size(); ++i)
    s << i + 1 << ',' << report::format_value(pmf[i], o.precision) << ','
      << report::format_value(cdf[i], o.precision) << '\n';
  return s.str();
}

std::string cmd_dist(const SettingSpec& spec, const OutputFlags& o) {
  if (spec.variant == Variant::HouseSelling) {
    const double cost = *spec.cost;
    const auto stats = house_selling_stats(cost, {0.25, 0.75});
    const auto label = report::setting_label(spec);
    std::vector<report::OutputRecord> summary = {{label, std::nullopt, "mean", stats.mean, "exact"},
                                                 {label, std::nullopt, "median", double(stats.median), "exact"}};
    for (const auto& [p, x] : stats.quantiles)
      summary.push_back({label, std::nullopt, "quantile_" + report::format_value(p), double(x), "exact"});
    // Geometric law, listed until 0.9999 of the mass is covered.
    const double succ = 1.0 / stats.mean;
    std::vector<double> pmf;
    double left = 1.0;
    while (left > 1e-4 && pmf.size() < 1000000) {
      pmf.push_back(left * succ);
      left *= 1.0 - succ;
    }
    return pmf_text(spec, summary, pmf, o);
  }
  if (!spec.n)
    return records_text(report::asymptotic_records(spec), o);
  const auto policy = default_policy(spec);
  const auto d = exact_distribution(spec, policy);
  return pmf_text(spec, report::distribution_records(spec, d), d.pmf, o);
}

std::optional<report::OutputRecord> reference_for(const SettingSpec& spec, const Policy& policy) {
  const auto label = report::setting_label(spec);
  if (spec.n && spec.variant != Variant::HouseSelling) {
    try {
      const auto d = exact_distribution(spec, policy);
      return report::OutputRecord{label, spec.n, "mean", d.mean(), "exact"};
    } catch (const CapExceeded&) {
    } catch (const UnsupportedVariant&) {
    }
  }
  if (spec.variant == Variant::HouseSelling)
    return report::OutputRecord{label, std::nullopt, "mean", house_selling_stats(*spec.cost).mean, "exact"};
  try {
    const auto r = asymptotic_report(spec);
    return report::OutputRecord{label, std::nullopt, "mean_fraction", r.mean_fraction, "asymptotic"};
  } catch (const UnsupportedVariant&) {
    return std::nullopt;
  }
}

std::string cmd_simulate(const SettingSpec& spec, std::int64_t trials, std::uint64_t seed, const OutputFlags& o) {
  const auto policy = default_policy(spec);
  const auto sim = simulate(spec, policy, trials, seed);
  const auto ref = reference_for(spec, policy);
  if (o.format == "json")
    return report::simulation_json(spec, sim, ref, o.precision).dump(2) + "\n";
  return report::simulation_csv(spec, sim, ref, o.precision);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal stopping rules and the distribution of search duration"};
  app.require_subcommand(1);

  std::string which;
  OutputFlags table_out;
  auto* table = app.add_subcommand("table", "reproduce a summary table");
  table->add_option("which", which, "table2 (finite pools) or table3 (asymptotic)")
      ->required()
      ->check(CLI::IsMember({"table2", "table3"}));
  table_out.attach(*table);

  SettingFlags dist_setting;
  OutputFlags dist_out;
  auto* dist = app.add_subcommand("dist", "exact distribution of the search duration");
  dist_setting.attach(*dist);
  dist_out.attach(*dist);

  SettingFlags sim_setting;
  OutputFlags sim_out;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate under the optimal rule");
  sim_setting.attach(*sim);
  sim_out.attach(*sim);
  sim->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_bad_flags;
  }

  try {
    if (*table) {
      const auto records = which == "table2" ? report::table2_records() : report::table3_records();
      table_out.write(records_text(records, table_out));
    } else if (*dist) {
      dist_out.write(cmd_dist(dist_setting.spec(), dist_out));
    } else if (*sim) {
      sim_out.write(cmd_simulate(sim_setting.spec(), trials, seed, sim_out));
    }
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_cap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_bad_flags;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
