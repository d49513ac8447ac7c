#include "ballpot/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <regex>
#include <sstream>

#include "ballpot/ball_geometry.hpp"
#include "ballpot/catalog.hpp"
#include "ballpot/errors.hpp"
#include "ballpot/measure_io.hpp"
#include "ballpot/random.hpp"
#include "ballpot/sphere_integration.hpp"
#include "json_fields.hpp"

namespace ballpot {

using namespace detail;

namespace {

constexpr std::uint64_t kLambdaStream = 0x4c414d4244410000ULL;
constexpr std::uint64_t kMeanStream = 0x4d45414e00000000ULL;
constexpr std::uint64_t kLemma1Stream = 0x4c454d4d41310000ULL;
constexpr std::uint64_t kInclusionStream = 0x494e434c00000000ULL;

const std::vector<std::string> kChecks = {
    "mean-equals-kernel", "smoothness-slope",   "mean-slope",          "iff-forward",
    "iff-reverse",        "realized-gamma",     "upper-bound-exponents", "gauge-mean",
    "gauge-smoothness",   "theorem-a-vanishing", "theorem2-o-vanishing", "prop1-vanishing",
    "lemma1-bounded",     "inclusion10",
};

bool needsMeasure(const std::string& c) { return c != "lemma1-bounded" && c != "inclusion10"; }
bool needsGamma(const std::string& c) {
  return c == "smoothness-slope" || c == "mean-slope" || c == "realized-gamma" || c == "upper-bound-exponents" ||
         c == "gauge-mean" || c == "gauge-smoothness";
}
bool isTheoremCheck(const std::string& c) {
  return c != "mean-equals-kernel" && c != "lemma1-bounded" && c != "inclusion10" && c != "prop1-vanishing";
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(4);
  ss << x;
  return ss.str();
}

// A quantity estimated along one grid.
struct Series {
  std::string quantity;
  std::vector<double> abscissa;
  std::vector<MeanEstimate> est;

  std::optional<std::size_t> firstUnconverged() const {
    for (std::size_t k = 0; k < est.size(); ++k) {
      if (!est[k].converged) return k;
    }
    return std::nullopt;
  }
  std::vector<double> values() const {
    std::vector<double> v;
    for (const auto& e : est) v.push_back(e.value);
    return v;
  }
  // The coarsest point is left out of fits.
  std::vector<GridPoint> fitPoints() const {
    std::vector<GridPoint> pts;
    for (std::size_t k = 1; k < est.size(); ++k) pts.push_back({abscissa[k], est[k].value});
    return pts;
  }
};

class SkipCheck : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Runner {
 public:
  Runner(const Scenario& s, ResultRecord& rec) : s_(s), rec_(rec) {}

  CheckResult run(const std::string& name) {
    CheckResult c;
    c.name = name;
    try {
      dispatch(c);
    } catch (const SkipCheck& e) {
      c.status = CheckStatus::skip;
      c.detail = e.what();
    } catch (const FitError& e) {
      c.status = CheckStatus::fail;
      c.detail = std::string("fit rejected: ") + e.what();
    }
    return c;
  }

 private:
  const Measure& mu() const { return *s_.measure; }

  std::vector<double> grid(const GridSpec& g) const { return geometricGrid(g.first, g.count); }

  const Series& lambda(int rep) {
    auto& slot = lambda_[rep];
    if (!slot) {
      Series out{"lambda_p", grid(s_.delta_grid), {}};
      const SphereSampler sampler{s_.n, deriveSeed(s_.seed, kLambdaStream, static_cast<std::uint64_t>(rep))};
      for (double d : out.abscissa) out.est.push_back(smoothnessLp(mu(), d, s_.p, sampler, s_.budget));
      slot = std::move(out);
    }
    return *slot;
  }

  const Series& mean(int rep) {
    auto& slot = mean_[rep];
    if (!slot) {
      Series out{"m_p", grid(s_.r_grid), {}};
      const SphereSampler sampler{s_.n, deriveSeed(s_.seed, kMeanStream, static_cast<std::uint64_t>(rep))};
      MeanOptions opts{s_.budget, s_.override_p_range};
      for (double x : out.abscissa) out.est.push_back(mp(1.0 - x, mu(), s_.p, sampler, opts));
      slot = std::move(out);
    }
    return *slot;
  }

  static void requireConverged(const Series& series, const std::string& what) {
    if (const auto k = series.firstUnconverged()) {
      throw SkipCheck("budget exhausted: " + what + " at abscissa " + fmt(series.abscissa[*k]) +
                      " did not reach the target error with " + std::to_string(series.est[*k].samples) +
                      " samples");
    }
  }

  void addRows(const std::string& check, const Series& series, const std::string& quantity = "") {
    for (std::size_t k = 0; k < series.est.size(); ++k) {
      const auto& e = series.est[k];
      rec_.rows.push_back({check, quantity.empty() ? series.quantity : quantity, series.abscissa[k], e.value,
                           e.std_error, e.samples});
    }
  }

  void addNormalizedRows(const std::string& check, const std::string& quantity, const Series& series,
                         const std::vector<double>& values) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double scale = series.est[k].value > 0.0 ? values[k] / series.est[k].value : 0.0;
      rec_.rows.push_back({check, quantity, series.abscissa[k], values[k], series.est[k].std_error * scale,
                           series.est[k].samples});
    }
  }

  static FitSummary summarize(const std::string& q, const GrowthFit& f) {
    return {q, f.slope, f.intercept, f.residual_rms};
  }

  GrowthFit fitOf(const Series& series, CheckResult& c, const std::string& label) {
    const auto pts = series.fitPoints();
    GrowthFit f = fitExponent(pts);
    c.fits.push_back(summarize(label, f));
    return f;
  }

  static void verdict(CheckResult& c, bool ok, const std::string& detail) {
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    c.detail = detail;
  }

  void dispatch(CheckResult& c) {
    const std::string& name = c.name;
    const double n = s_.n;
    if (name == "mean-equals-kernel") return meanEqualsKernel(c);
    if (name == "lemma1-bounded") return lemma1Bounded(c);
    if (name == "inclusion10") return inclusion(c);
    if (name == "theorem-a-vanishing" || name == "theorem2-o-vanishing") return meanVanishing(c);
    if (name == "prop1-vanishing") return prop1Vanishing(c);

    const double gamma = s_.gamma_expected.value_or(std::numeric_limits<double>::quiet_NaN());
    if (name == "smoothness-slope") {
      const auto& L = lambda(0);
      addRows(name, L);
      requireConverged(L, "lambda_p");
      const auto f = fitOf(L, c, "lambda_p");
      c.metrics["expected"] = gamma;
      c.metrics["deviation"] = std::abs(f.slope - gamma);
      return verdict(c, std::abs(f.slope - gamma) <= s_.tolerances.smoothness_slope,
                     "lambda_p slope " + fmt(f.slope) + ", expected " + fmt(gamma) + " +- " +
                         fmt(s_.tolerances.smoothness_slope));
    }
    if (name == "mean-slope") {
      const auto& M = mean(0);
      addRows(name, M);
      requireConverged(M, "m_p");
      const auto f = fitOf(M, c, "m_p");
      c.metrics["expected"] = gamma - n;
      c.metrics["deviation"] = std::abs(f.slope - (gamma - n));
      return verdict(c, std::abs(f.slope - (gamma - n)) <= s_.tolerances.mean_slope,
                     "m_p slope " + fmt(f.slope) + ", expected " + fmt(gamma - n) + " +- " +
                         fmt(s_.tolerances.mean_slope));
    }
    if (name == "iff-forward" || name == "iff-reverse") {
      const bool forward = name == "iff-forward";
      const auto& L = lambda(forward ? 0 : 1);
      const auto& M = mean(forward ? 1 : 0);
      addRows(name, L);
      addRows(name, M);
      requireConverged(L, "lambda_p");
      requireConverged(M, "m_p");
      const auto fl = fitOf(L, c, "lambda_p");
      const auto fm = fitOf(M, c, "m_p");
      if (forward) {
        const double dev = std::abs(fm.slope - (fl.slope - n));
        c.metrics["deviation"] = dev;
        return verdict(c, dev < s_.tolerances.iff,
                       "measured gamma " + fmt(fl.slope) + " predicts m_p slope " + fmt(fl.slope - n) +
                           "; independent m_p slope " + fmt(fm.slope));
      }
      const double dev = std::abs(fl.slope - (fm.slope + n));
      c.metrics["deviation"] = dev;
      return verdict(c, dev < s_.tolerances.iff,
                     "m_p slope " + fmt(fm.slope) + " predicts gamma " + fmt(fm.slope + n) +
                         "; independent lambda_p slope " + fmt(fl.slope));
    }
    if (name == "realized-gamma") {
      const auto& L = lambda(0);
      addRows(name, L);
      requireConverged(L, "lambda_p");
      const auto f = fitOf(L, c, "lambda_p");
      c.metrics["deviation"] = std::abs(f.slope - gamma);
      return verdict(c, std::abs(f.slope - gamma) < s_.tolerances.iff,
                     "measured gamma " + fmt(f.slope) + ", prescribed " + fmt(gamma));
    }
    if (name == "upper-bound-exponents") {
      const auto& L = lambda(0);
      const auto& M = mean(0);
      addRows(name, L);
      addRows(name, M);
      requireConverged(L, "lambda_p");
      requireConverged(M, "m_p");
      const auto fl = fitOf(L, c, "lambda_p");
      const auto fm = fitOf(M, c, "m_p");
      const bool ok = fl.slope >= gamma - s_.tolerances.smoothness_slope &&
                      fm.slope >= gamma - n - s_.tolerances.mean_slope;
      return verdict(c, ok,
                     "lambda_p slope " + fmt(fl.slope) + " >= " + fmt(gamma) + ", m_p slope " + fmt(fm.slope) +
                         " >= " + fmt(gamma - n) + " (within tolerance)");
    }
    if (name == "gauge-mean" || name == "gauge-smoothness") {
      const bool mean_side = name == "gauge-mean";
      const Series& S = mean_side ? mean(0) : lambda(0);
      addRows(name, S);
      requireConverged(S, S.quantity);
      const GaugeFunction phi = powerGauge(gamma);
      validateGauge(phi, s_.n);
      const auto pts = S.fitPoints();
      const auto g = gaugeCompare(pts, phi, mean_side ? GaugeSide::mean_side : GaugeSide::smoothness_side, s_.n,
                                  s_.tolerances.gauge_cap);
      for (std::size_t k = 0; k < pts.size(); ++k) {
        rec_.rows.push_back({name, S.quantity + "_over_gauge", pts[k].abscissa, g.normalized[k], 0.0,
                             S.est[k + 1].samples});
      }
      c.metrics["ratio"] = g.ratio;
      c.metrics["margin"] = g.margin;
      return verdict(c, g.bounded,
                     "sup normalized / first = " + fmt(g.ratio) + ", cap " + fmt(s_.tolerances.gauge_cap));
    }
    throw ConfigError("unknown check " + name);
  }

  void meanEqualsKernel(CheckResult& c) {
    if (!mu().isRadial()) return verdict(c, false, "measure has atoms off the origin");
    const auto& M = mean(0);
    addRows(c.name, M);
    double worst = 0.0;
    const GreenKernelParams params{s_.n};
    for (std::size_t k = 0; k < M.abscissa.size(); ++k) {
      const double r = 1.0 - M.abscissa[k];
      const double g = potentialAt(Point::axis(s_.n, 0, r), mu(), params).value;
      rec_.rows.push_back({c.name, "potential", M.abscissa[k], g, 0.0, 0});
      worst = std::max(worst, std::abs(M.est[k].value - g) / g);
    }
    c.metrics["max_relative_difference"] = worst;
    verdict(c, worst <= 1e-12, "max relative difference between m_p and G_mu(r) " + fmt(worst));
  }

  void meanVanishing(CheckResult& c) {
    const bool theorem_a = c.name == "theorem-a-vanishing";
    const auto& M = mean(0);
    addRows(c.name, M);
    requireConverged(M, "m_p");
    const double e = s_.n * (1.0 - 1.0 / s_.p);
    std::vector<double> v;
    for (std::size_t k = 0; k < M.abscissa.size(); ++k) {
      const double x = M.abscissa[k];
      const double w = theorem_a ? x * (2.0 - x) : x;  // 1-r^2 or 1-r
      v.push_back(std::pow(w, e) * M.est[k].value);
    }
    addNormalizedRows(c.name, "m_p_normalized", M, v);
    vanishing(c, v);
  }

  void prop1Vanishing(CheckResult& c) {
    const auto& L = lambda(0);
    addRows(c.name, L);
    requireConverged(L, "lambda_p");
    std::vector<double> v;
    for (std::size_t k = 0; k < L.abscissa.size(); ++k) {
      v.push_back(std::pow(L.abscissa[k], -s_.n / s_.p) * L.est[k].value);
    }
    addNormalizedRows(c.name, "lambda_p_normalized", L, v);
    vanishing(c, v);
  }

  void vanishing(CheckResult& c, const std::vector<double>& v) {
    const auto r = checkVanishing(v, s_.tolerances.vanishing_ratio);
    c.metrics["last_over_first"] = r.last_over_first;
    std::string detail = "last/first " + fmt(r.last_over_first) + " (cap " + fmt(s_.tolerances.vanishing_ratio) + ")";
    if (r.first_increase) detail += "; increase at grid index " + std::to_string(*r.first_increase);
    verdict(c, r.vanishing, detail);
  }

  void lemma1Bounded(CheckResult& c) {
    const auto measures = lemma1Measures(s_.n, s_.seed);
    const auto deltas = grid(s_.delta_grid);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool finite = true;
    std::string skip;
    for (std::size_t m = 0; m < measures.size(); ++m) {
      const SphereSampler sampler{s_.n, deriveSeed(s_.seed, kLemma1Stream, m)};
      for (double d : deltas) {
        const auto r = lemma1Check(measures[m].measure, d, s_.p, sampler, s_.budget);
        const double se = r.rhs > 0.0 ? r.ratio * r.rhs_std_error / r.rhs : 0.0;
        rec_.rows.push_back({c.name, "lemma1_ratio:" + measures[m].name, d, r.ratio, se, r.samples});
        if (!r.converged && skip.empty()) {
          skip = "budget exhausted: lemma1 rhs for " + measures[m].name + " at delta " + fmt(d);
        }
        if (!(std::isfinite(r.ratio) && r.ratio > 0.0)) finite = false;
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
      }
    }
    if (!skip.empty()) throw SkipCheck(skip);
    const double spread = finite ? hi / lo : std::numeric_limits<double>::infinity();
    c.metrics["min_ratio"] = lo;
    c.metrics["max_ratio"] = hi;
    c.metrics["spread"] = spread;
    verdict(c, finite && spread < s_.tolerances.lemma1_spread,
            "ratios in [" + fmt(lo) + ", " + fmt(hi) + "], spread " + fmt(spread) + " (cap " +
                fmt(s_.tolerances.lemma1_spread) + ")");
  }

  // z = r xi with 1-r log-uniform in (1e-6, 1/2); w = phi_z(v) with |v| < 1/4, so |phi_w(z)| = |v|.
  void inclusion(CheckResult& c) {
    std::size_t total_bad = 0;
    double worst_radial = 0.0, worst_angular = 0.0;
    const double c1 = 2.0 / 3.0, c2 = 4.0 * std::sqrt(2.0);
    for (int n = 1; n <= 3; ++n) {
      Rng rng = makeRng(s_.seed, kInclusionStream, static_cast<std::uint64_t>(n));
      std::vector<Complex> xi(n), v(n);
      std::size_t bad = 0;
      for (std::size_t t = 0; t < s_.inclusion_trials; ++t) {
        const double om = std::exp(std::log(1e-6) + uniform01(rng) * (std::log(0.5) - std::log(1e-6)));
        sampleUniformSphere(rng, xi);
        std::vector<Complex> zc(xi);
        for (auto& x : zc) x *= (1.0 - om);
        // Half the draws sit in the outer shell 0.24 <= |v| < 0.25 where the inclusion is tightest.
        if (t % 2 == 0) {
          sampleUniformBall(rng, v, 0.25);
        } else {
          sampleUniformSphere(rng, v);
          const double rad = 0.24 + 0.01 * uniform01(rng);
          for (auto& x : v) x *= rad;
        }
        const Point z(zc);
        const Point w = mobius(z, Point(v));
        if (!inRegion(w, InvariantBall{z, 0.25})) continue;  // rounding put w on the boundary
        const double r = z.norm();
        const ProofBox box{z, c1 * om, c2 * std::sqrt(om)};
        if (!inRegion(w, box)) ++bad;
        worst_radial = std::max(worst_radial, std::abs(r - w.norm()) / om);
        worst_angular = std::max(worst_angular, anisoDist(z.direction(), w.direction()) / std::sqrt(om));
      }
      rec_.rows.push_back({c.name, "violations", static_cast<double>(n), static_cast<double>(bad), 0.0,
                           s_.inclusion_trials});
      total_bad += bad;
    }
    c.metrics["violations"] = static_cast<double>(total_bad);
    c.metrics["max_radial_over_1_minus_r"] = worst_radial;
    c.metrics["max_angular_over_sqrt_1_minus_r"] = worst_angular;
    verdict(c, total_bad == 0,
            std::to_string(total_bad) + " violations; max |r-|w||/(1-r) = " + fmt(worst_radial) +
                " (bound 2/3), max d/(1-r)^(1/2) = " + fmt(worst_angular) + " (bound 4 sqrt 2)");
  }

  const Scenario& s_;
  ResultRecord& rec_;
  std::optional<Series> lambda_[2];
  std::optional<Series> mean_[2];
};

GridSpec gridFromJson(const json& v, const std::string& path) {
  requireObject(v, path);
  rejectUnknown(v, path, {"first", "count"});
  GridSpec g{};
  g.first = asNumber(requireField(v, path, "first"), joinPath(path, "first"));
  g.count = asUnsigned(requireField(v, path, "count"), joinPath(path, "count"));
  return g;
}

}  // namespace

const std::vector<std::string>& knownChecks() { return kChecks; }

std::string_view statusName(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "skip";
}

bool ResultRecord::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::fail; });
}

void validateScenario(const Scenario& s) {
  static const std::regex ident("[A-Za-z0-9][A-Za-z0-9._-]*");
  if (!std::regex_match(s.name, ident)) throw ConfigError("name: '" + s.name + "' is not a valid identifier");
  if (s.n < 1) throw ConfigError("n: dimension must be >= 1");
  if (s.measure && s.measure->dim() != s.n) {
    throw ConfigError("n: scenario dimension " + std::to_string(s.n) + " differs from the measure dimension " +
                      std::to_string(s.measure->dim()));
  }
  try {
    validateMeanExponent(s.n, s.p, s.override_p_range);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("p: ") + e.what());
  }
  if (s.gamma_expected && !(*s.gamma_expected >= 0.0 && *s.gamma_expected < 2.0 * s.n)) {
    throw ConfigError("gamma_expected: must lie in [0, 2n)");
  }
  for (const auto& [label, g] : {std::pair{"r_grid", s.r_grid}, std::pair{"delta_grid", s.delta_grid}}) {
    if (g.count < 5) throw ConfigError(std::string(label) + ".count: grids need at least 5 points");
    if (g.count > 40) throw ConfigError(std::string(label) + ".count: at most 40 points");
  }
  if (!(s.r_grid.first > 0.0 && s.r_grid.first <= 0.5)) throw ConfigError("r_grid.first: 1-r must lie in (0, 1/2]");
  if (!(s.delta_grid.first > 0.0 && s.delta_grid.first < 1.0)) throw ConfigError("delta_grid.first: must lie in (0, 1)");
  if (s.budget.initial < 1 || s.budget.cap < s.budget.initial) throw ConfigError("budget: need 1 <= initial <= cap");
  if (!(s.budget.target_rel_error > 0.0 && s.budget.target_rel_error < 1.0)) {
    throw ConfigError("budget.target_rel_error: must lie in (0, 1)");
  }
  const auto& t = s.tolerances;
  for (double x : {t.smoothness_slope, t.mean_slope, t.iff, t.gauge_cap, t.vanishing_ratio, t.lemma1_spread}) {
    if (!(x > 0.0)) throw ConfigError("tolerances: every tolerance must be positive");
  }
  if (s.checks.empty()) throw ConfigError("checks: at least one check is required");
  for (std::size_t i = 0; i < s.checks.size(); ++i) {
    const auto& c = s.checks[i];
    const std::string where = "checks[" + std::to_string(i) + "]";
    if (std::find(kChecks.begin(), kChecks.end(), c) == kChecks.end()) throw ConfigError(where + ": unknown check '" + c + "'");
    if (std::count(s.checks.begin(), s.checks.end(), c) > 1) throw ConfigError(where + ": check '" + c + "' listed twice");
    if (needsMeasure(c) && !s.measure) throw ConfigError(where + ": check '" + c + "' needs a measure");
    if (needsGamma(c) && !s.gamma_expected) throw ConfigError(where + ": check '" + c + "' needs gamma_expected");
    if (isTheoremCheck(c) && s.n < 2) throw ConfigError(where + ": check '" + c + "' needs n > 1");
    if (c == "prop1-vanishing" && !s.measure->hasFiniteMass()) {
      throw ConfigError(where + ": prop1-vanishing needs a finite measure");
    }
    if (c == "lemma1-bounded" && !(s.delta_grid.first < 0.5)) {
      throw ConfigError(where + ": lemma1-bounded needs delta_grid.first < 1/2");
    }
    if (c == "inclusion10" && s.inclusion_trials < 1) throw ConfigError("inclusion_trials: must be positive");
  }
}

void applyOverrides(Scenario& s, const ScenarioOverrides& o) {
  if (o.seed) s.seed = *o.seed;
  if (!(o.budget_scale > 0.0) || !std::isfinite(o.budget_scale)) throw ConfigError("budget scale must be positive");
  if (o.budget_scale != 1.0) {
    const auto scale = [&](std::size_t x) {
      return std::max<std::size_t>(kBlockSize, static_cast<std::size_t>(std::llround(static_cast<double>(x) * o.budget_scale)));
    };
    s.budget.initial = scale(s.budget.initial);
    s.budget.cap = std::max(s.budget.initial, scale(s.budget.cap));
  }
  if (o.override_p_range) s.override_p_range = true;
}

Scenario parseScenario(std::string_view text, std::string_view source, const std::filesystem::path& base_dir,
                       const ScenarioOverrides& overrides) {
  const json doc = parseJsonText(text, source);
  Scenario s;
  try {
    requireObject(doc, "");
    rejectUnknown(doc, "", {"name", "measure", "n", "p", "gamma_expected", "r_grid", "delta_grid", "seed", "budget",
                            "tolerances", "checks", "override_p_range", "inclusion_trials"});
    s.name = asString(requireField(doc, "", "name"), "name");
    if (const auto it = doc.find("measure"); it != doc.end()) {
      if (it->is_string()) {
        const std::string ref = it->get<std::string>();
        if (ref.rfind("builtin:", 0) == 0) {
          s.measure_source = ref;
          try {
            s.measure = builtinMeasure(ref.substr(8));
          } catch (const ConfigError& e) {
            fieldError("measure", e.what());
          }
        } else {
          const std::filesystem::path p = std::filesystem::path(ref).is_absolute() ? std::filesystem::path(ref) : base_dir / ref;
          s.measure_source = ref;
          s.measure = loadMeasure(p);
        }
      } else {
        s.measure_source = "inline";
        s.measure = measureFromJson(*it, "measure");
      }
    }
    if (const auto it = doc.find("n"); it != doc.end()) {
      s.n = static_cast<int>(asUnsigned(*it, "n"));
    } else if (s.measure) {
      s.n = s.measure->dim();
    } else {
      fieldError("n", "missing required field (no measure to take it from)");
    }
    s.p = asNumber(requireField(doc, "", "p"), "p");
    if (doc.contains("gamma_expected")) s.gamma_expected = asNumber(doc["gamma_expected"], "gamma_expected");
    if (doc.contains("r_grid")) s.r_grid = gridFromJson(doc["r_grid"], "r_grid");
    if (doc.contains("delta_grid")) s.delta_grid = gridFromJson(doc["delta_grid"], "delta_grid");
    if (doc.contains("seed")) s.seed = asUnsigned(doc["seed"], "seed");
    if (doc.contains("budget")) {
      const auto& b = requireObject(doc["budget"], "budget");
      rejectUnknown(b, "budget", {"initial", "cap", "target_rel_error"});
      if (b.contains("initial")) s.budget.initial = asUnsigned(b["initial"], "budget.initial");
      if (b.contains("cap")) s.budget.cap = asUnsigned(b["cap"], "budget.cap");
      if (b.contains("target_rel_error")) s.budget.target_rel_error = asNumber(b["target_rel_error"], "budget.target_rel_error");
    }
    if (doc.contains("tolerances")) {
      const auto& t = requireObject(doc["tolerances"], "tolerances");
      rejectUnknown(t, "tolerances",
                    {"smoothness_slope", "mean_slope", "iff", "gauge_cap", "vanishing_ratio", "lemma1_spread"});
      auto& tol = s.tolerances;
      if (t.contains("smoothness_slope")) tol.smoothness_slope = asNumber(t["smoothness_slope"], "tolerances.smoothness_slope");
      if (t.contains("mean_slope")) tol.mean_slope = asNumber(t["mean_slope"], "tolerances.mean_slope");
      if (t.contains("iff")) tol.iff = asNumber(t["iff"], "tolerances.iff");
      if (t.contains("gauge_cap")) tol.gauge_cap = asNumber(t["gauge_cap"], "tolerances.gauge_cap");
      if (t.contains("vanishing_ratio")) tol.vanishing_ratio = asNumber(t["vanishing_ratio"], "tolerances.vanishing_ratio");
      if (t.contains("lemma1_spread")) tol.lemma1_spread = asNumber(t["lemma1_spread"], "tolerances.lemma1_spread");
    }
    const auto& checks = requireArray(requireField(doc, "", "checks"), "checks");
    for (std::size_t i = 0; i < checks.size(); ++i) s.checks.push_back(asString(checks[i], indexPath("checks", i)));
    if (doc.contains("override_p_range")) s.override_p_range = asBool(doc["override_p_range"], "override_p_range");
    if (doc.contains("inclusion_trials")) s.inclusion_trials = asUnsigned(doc["inclusion_trials"], "inclusion_trials");
    applyOverrides(s, overrides);
    validateScenario(s);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  return s;
}

Scenario loadScenario(const std::filesystem::path& path, const ScenarioOverrides& overrides) {
  return parseScenario(readTextFile(path), path.string(), path.parent_path(), overrides);
}

json scenarioToJson(const Scenario& s) {
  json j = json::object();
  j["name"] = s.name;
  j["measure"] = s.measure_source;
  if (s.measure) {
    j["measure_atoms"] = s.measure->atoms().size();
    j["measure_densities"] = s.measure->densities().size();
  }
  j["n"] = s.n;
  j["p"] = s.p;
  j["gamma_expected"] = s.gamma_expected ? json(*s.gamma_expected) : json(nullptr);
  j["r_grid"] = {{"first", s.r_grid.first}, {"count", s.r_grid.count}};
  j["delta_grid"] = {{"first", s.delta_grid.first}, {"count", s.delta_grid.count}};
  j["seed"] = s.seed;
  j["budget"] = {{"initial", s.budget.initial}, {"cap", s.budget.cap}, {"target_rel_error", s.budget.target_rel_error}};
  const auto& t = s.tolerances;
  j["tolerances"] = {{"smoothness_slope", t.smoothness_slope}, {"mean_slope", t.mean_slope}, {"iff", t.iff},
                     {"gauge_cap", t.gauge_cap}, {"vanishing_ratio", t.vanishing_ratio},
                     {"lemma1_spread", t.lemma1_spread}};
  j["checks"] = s.checks;
  j["override_p_range"] = s.override_p_range;
  j["inclusion_trials"] = s.inclusion_trials;
  return j;
}

ResultRecord runScenario(const Scenario& s) {
  validateScenario(s);
  const auto t0 = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.scenario = s.name;
  rec.config = scenarioToJson(s);
  Runner runner(s, rec);
  for (const auto& c : s.checks) rec.checks.push_back(runner.run(c));
  rec.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace ballpot
