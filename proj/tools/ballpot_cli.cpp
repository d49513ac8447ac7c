// ballpot: run verification scenarios and summarize their records.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ballpot/catalog.hpp"
#include "ballpot/errors.hpp"
#include "ballpot/report.hpp"
#include "ballpot/scenario.hpp"

namespace fs = std::filesystem;
using namespace ballpot;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

Scenario resolve(const std::string& target, const ScenarioOverrides& o) {
  if (isCatalogScenario(target)) {
    Scenario s = catalogScenario(target);
    applyOverrides(s, o);
    validateScenario(s);
    return s;
  }
  if (fs::exists(target)) return loadScenario(target, o);
  throw ConfigError("'" + target + "' is neither a catalog scenario nor a readable file (try `list`)");
}

int runCommand(const std::vector<std::string>& targets, const ScenarioOverrides& o, const fs::path& out_dir,
               bool parallel) {
  std::vector<Scenario> scenarios;
  for (const auto& t : targets) {
    if (t == "all") {
      for (const auto& name : catalogNames()) scenarios.push_back(resolve(name, o));
    } else {
      scenarios.push_back(resolve(t, o));
    }
  }

  std::vector<ResultRecord> records(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  auto one = [&](std::size_t i) {
    try {
      records[i] = runScenario(scenarios[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (parallel && scenarios.size() > 1) {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < scenarios.size(); ++i) pool.emplace_back(one, i);
  } else {
    for (std::size_t i = 0; i < scenarios.size(); ++i) one(i);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  bool ok = true;
  for (const auto& rec : records) {
    const auto files = writeRecord(rec, out_dir);
    std::cerr << "wrote " << files.record.string() << " and " << files.csv.string() << " (" << rec.wall_clock_seconds
              << " s)\n";
    ok = ok && rec.passed();
  }
  std::cout << summaryText(records);
  return ok ? 0 : kExitCheckFailed;
}

int listCommand() {
  for (const auto& name : catalogNames()) std::cout << name << "  " << catalogDescription(name) << "\n";
  return 0;
}

int reportCommand(const std::vector<std::string>& paths, const fs::path& out_dir) {
  std::vector<ResultRecord> records;
  for (const auto& p : paths) records.push_back(loadRecord(p));
  std::cout << summaryText(records);
  fs::create_directories(out_dir);
  const auto csv = out_dir / "report.csv";
  writeFileAtomic(csv, recordsToCsv(records));
  std::cerr << "wrote " << csv.string() << "\n";
  bool ok = true;
  for (const auto& r : records) ok = ok && r.passed();
  return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green potentials on the unit ball of C^n: scenario-driven verification"};
  app.require_subcommand(1);

  fs::path out_dir = "results";
  std::uint64_t seed = 0;
  double budget_scale = 1.0;
  bool override_p = false;
  bool parallel = false;

  std::vector<std::string> targets;
  auto* run = app.add_subcommand("run", "run catalog scenarios (or 'all') and/or scenario files");
  run->add_option("targets", targets, "scenario names or config paths")->required();
  auto* seed_opt = run->add_option("--seed", seed, "override every scenario's seed");
  run->add_option("--budget-scale", budget_scale, "multiply sample budgets")->check(CLI::PositiveNumber);
  run->add_option("--out-dir", out_dir, "directory for records and CSV tables");
  run->add_flag("--override-p-range", override_p, "accept any p > 0");
  run->add_flag("--parallel", parallel, "run scenarios concurrently");

  app.add_subcommand("list", "list catalog scenarios");

  std::vector<std::string> record_paths;
  auto* report = app.add_subcommand("report", "summarize record files and merge their tables");
  report->add_option("records", record_paths, "record files")->required()->check(CLI::ExistingFile);
  report->add_option("--out-dir", out_dir, "directory for report.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ScenarioOverrides o;
      if (*seed_opt) o.seed = seed;
      o.budget_scale = budget_scale;
      o.override_p_range = override_p;
      return runCommand(targets, o, out_dir, parallel);
    }
    if (app.got_subcommand("list")) return listCommand();
    if (*report) return reportCommand(record_paths, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
