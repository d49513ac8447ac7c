#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ballpot/estimator.hpp"
#include "ballpot/measure.hpp"
#include "ballpot/smoothness.hpp"

namespace ballpot {

/// first, first/2, ..., count terms. For the r-grid the terms are values of 1-r.
struct GridSpec {
  double first;
  std::size_t count;
};

struct Tolerances {
  double smoothness_slope = 0.15;
  double mean_slope = 0.2;
  /// Exponent agreement for iff-forward, iff-reverse and realized-gamma.
  double iff = 0.25;
  double gauge_cap = 4.0;
  double vanishing_ratio = 0.5;
  /// Lemma 1: bound on max ratio / min ratio across the sweep.
  double lemma1_spread = 100.0;
};

/// Names accepted in Scenario::checks.
const std::vector<std::string>& knownChecks();

struct Scenario {
  std::string name;
  /// How the measure was referenced: "builtin:<name>", a file path, or "inline".
  std::string measure_source;
  std::optional<Measure> measure;
  int n = 2;
  double p = 1.25;
  std::optional<double> gamma_expected;
  GridSpec r_grid{0.25, 7};
  GridSpec delta_grid{0.125, 7};
  std::uint64_t seed = 1;
  SamplingBudget budget;
  Tolerances tolerances;
  std::vector<std::string> checks;
  bool override_p_range = false;
  /// Trials per dimension for the inclusion check.
  std::size_t inclusion_trials = 100000;
};

/// Throws ConfigError on the first violated constraint.
void validateScenario(const Scenario& s);

/// Command-line values that take precedence over the file.
struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  /// Multiplies the initial and maximal sample counts.
  double budget_scale = 1.0;
  bool override_p_range = false;
};

void applyOverrides(Scenario& s, const ScenarioOverrides& o);

/// Scenario files are JSON; see README for the fields. Relative measure paths resolve against
/// base_dir. Overrides are applied before validation. Throws ConfigError with a line number or
/// field path.
Scenario parseScenario(std::string_view text, std::string_view source, const std::filesystem::path& base_dir = {},
                       const ScenarioOverrides& overrides = {});
Scenario loadScenario(const std::filesystem::path& path, const ScenarioOverrides& overrides = {});

/// Every effective configuration value.
nlohmann::json scenarioToJson(const Scenario& s);

enum class CheckStatus { pass, fail, skip };
std::string_view statusName(CheckStatus s);

struct FitSummary {
  std::string quantity;
  double slope;
  double intercept;
  double residual_rms;
};

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::skip;
  std::string detail;
  std::vector<FitSummary> fits;
  std::map<std::string, double> metrics;
};

/// One CSV row: a grid point of a quantity used by a check.
struct TableRow {
  std::string check;
  std::string quantity;
  double abscissa;
  double value;
  double std_error;
  std::size_t samples;
};

struct ResultRecord {
  std::string scenario;
  nlohmann::json config;
  std::vector<CheckResult> checks;
  std::vector<TableRow> rows;
  double wall_clock_seconds = 0.0;

  bool passed() const;
};

/// Runs every listed check once, in the listed order. Validation failures throw ConfigError;
/// unconverged Monte Carlo estimates turn the dependent checks into skips.
ResultRecord runScenario(const Scenario& s);

}  // namespace ballpot
