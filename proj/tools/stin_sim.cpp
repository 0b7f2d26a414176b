// stin-sim: command-line driver for the satellite-terrestrial sharing simulator.
//
//   stin-sim run      [--config f] [--out f.csv] [--workers n] [--seed s] [--set k=v ...]
//   stin-sim sweep    ... [--param key] [--values list|a:b:step] [--scenarios S1,S2,S3]
//   stin-sim compare  ... [--scenarios S1,S2,S3]
//   stin-sim validate --config f
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stin/stin.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Options {
  std::string config_path;
  std::string out_path;
  unsigned workers = 1;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  std::string param;
  std::string values;
  std::string scenarios;
};

// Thrown for anything the user can fix in the configuration or flags.
struct ConfigProblem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

stin::ConfigDocument load(const Options& opt) {
  try {
    const std::string text = opt.config_path.empty() ? std::string() : stin::read_text_file(opt.config_path);
    stin::ConfigDocument doc = stin::parse_document(text);
    for (const auto& o : opt.overrides) stin::apply_override(doc.config, o);
    if (opt.seed) doc.config.seed = *opt.seed;
    stin::validate(doc.config);
    return doc;
  } catch (const stin::ParseError& e) {
    throw ConfigProblem(opt.config_path + ": " + e.what());
  } catch (const stin::IoError& e) {
    throw ConfigProblem(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigProblem(e.what());
  }
}

void write_rows(const Options& opt, const std::vector<stin::CsvRow>& rows) {
  if (opt.out_path.empty()) return;
  stin::write_csv_file(rows, opt.out_path);
  std::cerr << "wrote " << rows.size() << " rows to " << opt.out_path << '\n';
}

stin::RunOptions run_options(const Options& opt) { return {opt.workers, false}; }

int cmd_validate(const Options& opt) {
  const auto doc = load(opt);
  std::cout << "configuration OK: scenario " << stin::scenario_token(doc.config.scenario) << ", "
            << doc.config.replications << " replications, seed " << doc.config.seed << '\n';
  return 0;
}

int cmd_run(const Options& opt) {
  const auto doc = load(opt);
  const auto report = stin::run(doc.config, run_options(opt));
  std::cout << stin::format_summary(report, std::string(stin::scenario_token(doc.config.scenario)));
  write_rows(opt, {{doc.config.reserved_mhz, doc.config.scenario, report}});
  return 0;
}

int cmd_sweep(const Options& opt) {
  const auto doc = load(opt);
  stin::SweepSettings settings = doc.sweep.value_or(stin::SweepSettings{});
  try {
    if (!opt.param.empty()) settings.parameter = opt.param;
    if (!opt.values.empty()) settings.values = stin::detail::parse_values(opt.values);
    if (!opt.scenarios.empty()) settings.scenarios = stin::detail::parse_scenarios(opt.scenarios);
    stin::SweepSpec probe{settings.parameter, settings.values, doc.config};
    stin::validate(probe);
    for (auto sc : settings.scenarios) {
      probe.base.scenario = sc;
      for (double v : settings.values) (void)stin::sweep_config(probe, v);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigProblem(e.what());
  }

  // rows[value][scenario]
  std::vector<std::vector<stin::CsvRow>> grid(settings.values.size());
  for (auto sc : settings.scenarios) {
    stin::SweepSpec spec{settings.parameter, settings.values, doc.config};
    spec.base.scenario = sc;
    const auto points = stin::sweep(spec, run_options(opt));
    for (std::size_t i = 0; i < points.size(); ++i)
      grid[i].push_back({points[i].value, sc, points[i].report});
  }

  std::vector<stin::CsvRow> rows;
  std::printf("%-12s %-4s %14s %14s %14s %14s %8s\n", settings.parameter.c_str(), "scn",
              "ntn_cap", "tn_cap", "sum_cap", "tn_rate", "sap");
  for (const auto& per_value : grid)
    for (const auto& row : per_value) {
      std::printf("%-12.6g %-4s %14.6g %14.6g %14.6g %14.6g %8.4f\n", row.swept_value,
                  std::string(stin::scenario_token(row.scenario)).c_str(),
                  row.report.ntn_capacity.mean, row.report.tn_capacity.mean,
                  row.report.sum_capacity.mean, row.report.tn_user_rate.mean, row.report.sap.p);
      rows.push_back(row);
    }
  write_rows(opt, rows);
  return 0;
}

int cmd_compare(const Options& opt) {
  const auto doc = load(opt);
  stin::CompareSettings settings = doc.compare.value_or(stin::CompareSettings{});
  std::vector<stin::ScenarioConfig> configs;
  try {
    if (!opt.scenarios.empty()) settings.scenarios = stin::detail::parse_scenarios(opt.scenarios);
    for (auto sc : settings.scenarios) {
      auto c = doc.config;
      c.scenario = sc;
      stin::validate(c);
      configs.push_back(c);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigProblem(e.what());
  }

  const auto table = stin::compare(configs, run_options(opt));
  std::vector<stin::CsvRow> rows;
  const std::string ref(stin::scenario_token(configs[0].scenario));
  for (const auto& row : table.rows) {
    const std::string label(stin::scenario_token(row.config.scenario));
    std::cout << stin::format_summary(row.report, label);
    if (&row != &table.rows.front()) {
      std::cout << "  paired difference vs " << ref << ":\n";
      for (const auto& d : row.vs_reference)
        std::printf("    %-24s %14.6g +/- %.3g\n", d.metric.c_str(), d.difference.mean,
                    d.difference.half_width);
    }
    rows.push_back({row.config.reserved_mhz, row.config.scenario, row.report});
  }
  write_rows(opt, rows);
  return 0;
}

void add_common(CLI::App* sub, Options& opt, bool simulate) {
  sub->add_option("--config", opt.config_path, "configuration file (INI or JSON); defaults if omitted");
  sub->add_option("--set", opt.overrides, "override a key, e.g. --set spectrum.reserved_mhz=60")
      ->take_all();
  sub->add_option("--seed", opt.seed, "master seed (overrides run.seed)");
  if (!simulate) return;
  sub->add_option("--out", opt.out_path, "CSV output path");
  sub->add_option("--workers", opt.workers, "worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for satellite-terrestrial spectrum sharing"};
  app.require_subcommand(1);
  Options opt;

  auto* run = app.add_subcommand("run", "simulate one scenario and print a summary");
  add_common(run, opt, true);

  auto* sweep = app.add_subcommand("sweep", "sweep one parameter over one or more scenarios");
  add_common(sweep, opt, true);
  sweep->add_option("--param", opt.param, "numeric key to sweep (default spectrum.reserved_mhz)");
  sweep->add_option("--values", opt.values, "comma list or start:stop:step");
  sweep->add_option("--scenarios", opt.scenarios, "comma list of S1, S2, S3");

  auto* compare = app.add_subcommand("compare", "paired-seed comparison of scenarios");
  add_common(compare, opt, true);
  compare->add_option("--scenarios", opt.scenarios, "comma list; the first is the reference");

  auto* validate = app.add_subcommand("validate", "parse and validate a configuration, no simulation");
  add_common(validate, opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(opt);
    if (*sweep) return cmd_sweep(opt);
    if (*compare) return cmd_compare(opt);
    return cmd_validate(opt);
  } catch (const ConfigProblem& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
