// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "ballpot/ball_geometry.hpp"
#include "ballpot/catalog.hpp"
#include "ballpot/green_kernel.hpp"
#include "ballpot/random.hpp"
#include "ballpot/report.hpp"
#include "ballpot/scenario.hpp"

using namespace ballpot;

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass;
  std::string detail;
  double seconds;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const CheckResult* findCheck(const ResultRecord& rec, const std::string& name) {
  for (const auto& c : rec.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double fitSlope(const CheckResult& c, const std::string& quantity) {
  for (const auto& f : c.fits) {
    if (f.quantity == quantity) return f.slope;
  }
  return std::nan("");
}

Point ballPoint(Rng& rng, int n) {
  std::vector<Complex> c(static_cast<std::size_t>(n));
  sampleUniformBall(rng, c);
  return Point(c);
}

// 1000 seeded pairs per n; every identity at 1e-10 (the quantities live in [0, 1]).
Verdict geometryIdentities() {
  const auto t0 = Clock::now();
  constexpr double tol = 1e-10;
  int bad_involution = 0, bad_modulus = 0, bad_symmetry = 0;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    Rng rng = makeRng(2024, 1, static_cast<std::uint64_t>(n));
    for (int t = 0; t < 1000; ++t) {
      const Point w = ballPoint(rng, n), z = ballPoint(rng, n);
      const Point phi = mobius(w, z);
      const Point back = mobius(w, phi);
      double d = 0.0;
      for (int k = 0; k < n; ++k) d += std::norm(back[k] - z[k]);
      d = std::sqrt(d);
      const double lhs = (1.0 - phi.normSquared()) * std::norm(1.0 - inner(z, w));
      const double rhs = (1.0 - z.normSquared()) * (1.0 - w.normSquared());
      const double sym = std::abs(phi.norm() - mobius(z, w).norm());
      bad_involution += d > tol;
      bad_modulus += std::abs(lhs - rhs) > tol;
      bad_symmetry += sym > tol;
      worst = std::max({worst, d, std::abs(lhs - rhs), sym});
    }
  }
  const double s = secondsSince(t0);
  const bool ok = bad_involution + bad_modulus + bad_symmetry == 0 && s < 5.0;
  return {ok,
          fmt("3000 trials: involution %d, modulus %d, symmetry %d failures; worst error %.2e; %.2f s (limit 5 s)",
              bad_involution, bad_modulus, bad_symmetry, worst, s),
          s};
}

Verdict greenKernel() {
  const auto t0 = Clock::now();
  int bad_quad = 0, bad_lower = 0;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    Rng rng = makeRng(2024, 3, static_cast<std::uint64_t>(n));
    for (int k = 0; k < 200; ++k) {
      const double r = std::exp(std::log(1e-3) * uniform01(rng));
      const double closed = littleG(r, {n});
      const double quad = littleG(r, {n, GreenEvaluation::adaptive_quadrature});
      const double rel = std::abs(closed - quad) / closed;
      worst = std::max(worst, rel);
      bad_quad += rel > 1e-10;
      bad_lower += !(lemmaALowerBound(r, n) <= closed);
      std::vector<Complex> c(static_cast<std::size_t>(n));
      c[0] = r;
      bad_lower += !lemmaABounds(Point(c), {n}).lower_ok;
    }
  }
  double lo = 1e300, hi = 0.0;
  for (double r : {0.25, 0.125, 0.0625, 0.03125}) {
    const double a = lemmaABounds(Point{r, 0.0}, {2}).asymp_ratio;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const double variation = (hi - lo) / asymptoticCoefficient(2);
  const double s = secondsSince(t0);
  return {bad_quad == 0 && bad_lower == 0 && variation < 0.25,
          fmt("closed form vs quadrature worst relative %.2e over 600 radii (%d > 1e-10); lower bound failures %d; "
              "n = 2 asymp ratio in [%.4f, %.4f], variation %.1f%% (limit 25%%)",
              worst, bad_quad, bad_lower, lo, hi, 100.0 * variation),
          s};
}

struct Runs {
  std::map<std::string, ResultRecord> records;
  std::map<std::string, double> seconds;
};

Runs runCatalog(unsigned workers) {
  Runs out;
  for (const auto& name : catalogNames()) {
    Scenario s = catalogScenario(name);
    s.budget.workers = workers;
    const auto t0 = Clock::now();
    out.records.emplace(name, runScenario(s));
    out.seconds[name] = secondsSince(t0);
  }
  return out;
}

Verdict inclusion(const Runs& runs) {
  const auto& rec = runs.records.at("inclusion10-suite");
  const auto* c = findCheck(rec, "inclusion10");
  const double s = runs.seconds.at("inclusion10-suite");
  const double trials = rec.config["inclusion_trials"].get<double>();
  const bool ok = c && c->status == CheckStatus::pass && trials >= 1e5 && s < 30.0;
  return {ok, fmt("%.0f trials per n in {1,2,3}: %s; %.2f s (limit 30 s)", trials, c ? c->detail.c_str() : "missing", s),
          s};
}

Verdict lebesgue(const Runs& runs) {
  const auto& rec = runs.records.at("lebesgue-n2");
  const auto* sm = findCheck(rec, "smoothness-slope");
  const auto* me = findCheck(rec, "mean-slope");
  const double s = runs.seconds.at("lebesgue-n2");
  if (!sm || !me) return {false, "lebesgue-n2 lacks its slope checks", s};
  const double ls = fitSlope(*sm, "lambda_p"), ms = fitSlope(*me, "m_p");
  const bool ok = std::abs(ls - 3.0) <= 0.15 && std::abs(ms - 1.0) <= 0.2 && s < 600.0;
  return {ok, fmt("lambda_p slope %.4f (want 3 +- 0.15), m_p slope %.4f (want 1 +- 0.2); %.2f s (limit 600 s)", ls, ms, s),
          s};
}

// gamma_hat from the replicate-0 lambda_p fit; m_p and the second lambda_p fit come from replicate 1.
Verdict iff(const Runs& runs) {
  bool ok = true;
  std::string detail;
  double s = 0.0;
  for (const char* name : {"radial-gamma2.5-n2", "radial-gamma3.5-n2"}) {
    const auto& rec = runs.records.at(name);
    s += runs.seconds.at(name);
    const auto* fwd = findCheck(rec, "iff-forward");
    const auto* rev = findCheck(rec, "iff-reverse");
    if (!fwd || !rev) return {false, std::string(name) + " lacks iff checks", s};
    const double gamma_hat = fitSlope(*fwd, "lambda_p");
    const double mean_slope = fitSlope(*fwd, "m_p");
    const double lambda_again = fitSlope(*rev, "lambda_p");
    const double d_mean = std::abs(mean_slope - (gamma_hat - 2.0));
    const double d_lambda = std::abs(lambda_again - gamma_hat);
    ok = ok && d_mean < 0.25 && d_lambda < 0.25 && fwd->status == CheckStatus::pass && rev->status == CheckStatus::pass;
    if (!detail.empty()) detail += "; ";
    detail += fmt("%s gamma_hat %.4f, |m_p slope - (gamma_hat - n)| = %.4f, |lambda_p slope - gamma_hat| = %.4f", name,
                  gamma_hat, d_mean, d_lambda);
  }
  return {ok, detail, s};
}

Verdict theoremA(const Runs& runs) {
  std::map<std::string, bool> covered;
  for (const auto& m : builtinMeasureNames()) covered["builtin:" + m] = false;
  bool ok = true;
  std::string detail;
  double s = 0.0;
  for (const auto& [name, rec] : runs.records) {
    const auto* c = findCheck(rec, "theorem-a-vanishing");
    if (!c) continue;
    s += runs.seconds.at(name);
    covered[rec.config["measure"].get<std::string>()] = true;
    ok = ok && c->status == CheckStatus::pass;
    if (!detail.empty()) detail += ", ";
    detail += fmt("%s %s (last/first %.3g)", name.c_str(), std::string(statusName(c->status)).c_str(),
                  c->metrics.count("last_over_first") ? c->metrics.at("last_over_first") : std::nan(""));
  }
  for (const auto& [m, seen] : covered) {
    if (!seen) {
      ok = false;
      detail += "; no run for " + m;
    }
  }
  return {ok, detail, s};
}

Verdict prop1(const Runs& runs) {
  const auto& rec = runs.records.at("prop1-suite");
  const auto* p = findCheck(rec, "prop1-vanishing");
  const auto* o = findCheck(rec, "theorem2-o-vanishing");
  const double s = runs.seconds.at("prop1-suite");
  if (!p || !o) return {false, "prop1-suite lacks its checks", s};
  return {p->status == CheckStatus::pass && o->status == CheckStatus::pass,
          "delta^(-n/p) lambda_p: " + p->detail + "; o-version mean: " + o->detail, s};
}

Verdict lemma1(const Runs& runs) {
  const auto& rec = runs.records.at("lemma1-suite");
  const auto* c = findCheck(rec, "lemma1-bounded");
  const double s = runs.seconds.at("lemma1-suite");
  if (!c) return {false, "lemma1-suite lacks its check", s};
  const auto& g = rec.config["delta_grid"];
  const bool grid_ok = g["first"].get<double>() == 0.25 && g["count"].get<int>() == 6;
  const bool ok = c->status == CheckStatus::pass && grid_ok && c->metrics.at("spread") < 100.0;
  return {ok, "3 measures, delta in {2^-2..2^-7}: " + c->detail, s};
}

Verdict determinism(const Runs& first) {
  const auto t0 = Clock::now();
  const Runs again = runCatalog(1);
  std::vector<std::string> differ;
  for (const auto& [name, rec] : first.records) {
    const std::vector<ResultRecord> a{rec}, b{again.records.at(name)};
    if (recordsToCsv(a) != recordsToCsv(b)) differ.push_back(name);
  }
  const double s = secondsSince(t0);
  std::string detail = fmt("%zu scenarios rerun with 1 worker against 3 workers: ", first.records.size());
  if (differ.empty()) {
    detail += "CSV bytes identical";
  } else {
    detail += "CSV differs for";
    for (const auto& d : differ) detail += " " + d;
  }
  return {differ.empty(), detail, s};
}

}  // namespace

int main() {
  std::vector<std::pair<int, Verdict>> results;
  auto report = [&](int id, const Verdict& v) {
    std::printf("criterion %d: %s  %s [%.2f s]\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str(), v.seconds);
    std::fflush(stdout);
    results.emplace_back(id, v);
  };

  report(1, geometryIdentities());
  const Runs runs = runCatalog(3);
  report(2, inclusion(runs));
  report(3, greenKernel());
  report(4, lebesgue(runs));
  report(5, iff(runs));
  report(6, theoremA(runs));
  report(7, prop1(runs));
  report(8, lemma1(runs));
  report(9, determinism(runs));

  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.second.pass; });
  std::printf("%zu of %zu criteria passed\n", results.size() - static_cast<std::size_t>(failed), results.size());
  return failed == 0 ? 0 : 1;
}
