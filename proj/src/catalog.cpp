#include "ballpot/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "ballpot/errors.hpp"
#include "ballpot/random.hpp"

namespace ballpot {

namespace {

constexpr std::uint64_t kShellStream = 0x5348454c4c000000ULL;
constexpr std::uint64_t kSphereAtomStream = 0x5350484154000000ULL;
constexpr std::uint64_t kMeasureSeed = 20240611;

struct Entry {
  std::string name;
  std::string description;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {"atom-origin", "unit atom at 0: m_p(r) equals g(r) exactly"},
      {"inclusion10-suite", "B*(z,1/4) inside K(z, 2/3 (1-r), 4 sqrt2 (1-r)^(1/2)) for n = 1, 2, 3"},
      {"lebesgue-n2", "normalized volume measure, n = 2, p = 1.25, gamma 3"},
      {"lemma1-suite", "Lemma 1 ratio over three atomic measures on S"},
      {"prop1-suite", "finite atomic measure: o(delta^(n/p)) and o-growth surrogates"},
      {"radial-gamma2.5-n2", "radial density (1-|w|)^(-2.5), n = 2, gamma 2.5"},
      {"radial-gamma3.5-n2", "radial density (1-|w|)^(-1.5), n = 2, gamma 3.5"},
      {"shell-atomic-n2", "atoms on dyadic shells with lambda-mass 2^(-0.4k), n = 2, gamma 2"},
  };
  return e;
}

const Entry* find(std::string_view name) {
  for (const auto& e : entries()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Point scaledDirection(Rng& rng, int n, double radius) {
  std::vector<Complex> d(static_cast<std::size_t>(n));
  sampleUniformSphere(rng, d);
  for (auto& c : d) c *= radius;
  return Point(std::move(d));
}

std::vector<Complex> unitDirection(Rng& rng, int n) {
  std::vector<Complex> d(static_cast<std::size_t>(n));
  sampleUniformSphere(rng, d);
  return d;
}

Scenario base(std::string name, std::string measure, int n = 2) {
  Scenario s;
  s.name = std::move(name);
  if (!measure.empty()) {
    s.measure_source = "builtin:" + measure;
    s.measure = builtinMeasure(measure);
  }
  s.n = n;
  s.p = 1.25;
  return s;
}

}  // namespace

Measure shellMeasure(int n, int shells, int per_shell, double decay, std::uint64_t seed) {
  std::vector<Atom> atoms;
  for (int k = 1; k <= shells; ++k) {
    Rng rng = makeRng(seed, kShellStream, static_cast<std::uint64_t>(k));
    const double gap = std::ldexp(1.0, -k) / std::sqrt(2.0);
    const double ell = std::pow(2.0, -decay * k) / per_shell;
    for (int i = 0; i < per_shell; ++i) atoms.push_back({scaledDirection(rng, n, 1.0 - gap), ell / std::pow(gap, n)});
  }
  return Measure(n, std::move(atoms));
}

Measure finiteShellMeasure(int n, int shells, int per_shell, std::uint64_t seed) {
  Measure m = shellMeasure(n, shells, per_shell, 0.0, seed);
  std::vector<Atom> atoms = m.atoms();
  for (auto& a : atoms) a.mass = 1.0;
  return Measure(n, std::move(atoms));
}

std::vector<NamedSphereMeasure> lemma1Measures(int n, std::uint64_t seed) {
  std::vector<NamedSphereMeasure> out;
  {
    Rng rng = makeRng(seed, kSphereAtomStream, 0);
    std::vector<Atom> atoms;
    for (int i = 0; i < 64; ++i) {
      const double mass = 0.5 + uniform01(rng);
      atoms.push_back({Point::onSphere(unitDirection(rng, n)), mass});
    }
    out.push_back({"scattered", SphereMeasure(n, std::move(atoms))});
  }
  {
    // Clusters of angular width about 0.02, so they split apart as delta^2 drops below ~1e-3.
    Rng rng = makeRng(seed, kSphereAtomStream, 1);
    std::normal_distribution<double> jitter(0.0, 0.02);
    std::vector<Atom> atoms;
    for (int c = 0; c < 4; ++c) {
      const auto center = unitDirection(rng, n);
      for (int i = 0; i < 16; ++i) {
        std::vector<Complex> d(center);
        for (auto& x : d) x += Complex(jitter(rng), jitter(rng));
        double norm = 0.0;
        for (const auto& x : d) norm += std::norm(x);
        for (auto& x : d) x /= std::sqrt(norm);
        atoms.push_back({Point::onSphere(std::move(d)), 1.0});
      }
    }
    out.push_back({"clustered", SphereMeasure(n, std::move(atoms))});
  }
  {
    Rng rng = makeRng(seed, kSphereAtomStream, 2);
    std::vector<Atom> atoms;
    for (int i = 0; i < 32; ++i) {
      auto d = unitDirection(rng, n);
      std::vector<Complex> anti(d);
      for (auto& x : anti) x = -x;
      atoms.push_back({Point::onSphere(std::move(d)), 1.0});
      atoms.push_back({Point::onSphere(std::move(anti)), 1.0});
    }
    out.push_back({"antipodal", SphereMeasure(n, std::move(atoms))});
  }
  return out;
}

const std::vector<std::string>& builtinMeasureNames() {
  static const std::vector<std::string> names = {"atom-origin",        "lebesgue-n2",     "prop1-finite-n2",
                                                 "radial-gamma2.5-n2", "radial-gamma3.5-n2", "shell-atomic-n2"};
  return names;
}

Measure builtinMeasure(std::string_view name) {
  if (name == "atom-origin") return Measure(2, {{Point::zero(2), 1.0}});
  if (name == "lebesgue-n2") return Measure::lebesgue(2);
  if (name == "radial-gamma2.5-n2") return Measure::radialForGamma(2, 2.5);
  if (name == "radial-gamma3.5-n2") return Measure::radialForGamma(2, 3.5);
  if (name == "shell-atomic-n2") return shellMeasure(2, 14, 24, 0.4, kMeasureSeed);
  if (name == "prop1-finite-n2") return finiteShellMeasure(2, 12, 16, kMeasureSeed);
  throw ConfigError("unknown builtin measure '" + std::string(name) + "'");
}

const std::vector<std::string>& catalogNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : entries()) v.push_back(e.name);
    std::sort(v.begin(), v.end());
    return v;
  }();
  return names;
}

bool isCatalogScenario(std::string_view name) { return find(name) != nullptr; }

std::string catalogDescription(std::string_view name) {
  const Entry* e = find(name);
  if (!e) throw ConfigError("unknown scenario '" + std::string(name) + "'");
  return e->description;
}

Scenario catalogScenario(std::string_view name) {
  if (name == "atom-origin") {
    Scenario s = base("atom-origin", "atom-origin");
    s.seed = 11;
    s.checks = {"mean-equals-kernel", "theorem-a-vanishing"};
    return s;
  }
  if (name == "lebesgue-n2") {
    Scenario s = base("lebesgue-n2", "lebesgue-n2");
    s.seed = 12;
    s.gamma_expected = 3.0;
    s.delta_grid = {0.125, 7};
    s.r_grid = {0.25, 7};
    s.checks = {"smoothness-slope", "mean-slope", "upper-bound-exponents", "gauge-mean", "gauge-smoothness",
                "theorem-a-vanishing"};
    return s;
  }
  if (name == "radial-gamma2.5-n2" || name == "radial-gamma3.5-n2") {
    Scenario s = base(std::string(name), std::string(name));
    s.seed = name == "radial-gamma2.5-n2" ? 13 : 14;
    s.gamma_expected = name == "radial-gamma2.5-n2" ? 2.5 : 3.5;
    s.tolerances.mean_slope = 0.25;
    s.checks = {"smoothness-slope", "mean-slope", "iff-forward", "iff-reverse", "realized-gamma",
                "gauge-mean",       "gauge-smoothness", "theorem-a-vanishing"};
    return s;
  }
  if (name == "shell-atomic-n2") {
    Scenario s = base("shell-atomic-n2", "shell-atomic-n2");
    s.seed = 15;
    s.gamma_expected = 2.0;
    s.checks = {"smoothness-slope", "iff-forward", "iff-reverse", "realized-gamma", "theorem-a-vanishing"};
    return s;
  }
  if (name == "prop1-suite") {
    Scenario s = base("prop1-suite", "prop1-finite-n2");
    s.seed = 16;
    s.checks = {"prop1-vanishing", "theorem2-o-vanishing", "theorem-a-vanishing"};
    return s;
  }
  if (name == "lemma1-suite") {
    Scenario s = base("lemma1-suite", "");
    s.seed = 17;
    s.delta_grid = {0.25, 6};
    s.checks = {"lemma1-bounded"};
    return s;
  }
  if (name == "inclusion10-suite") {
    Scenario s = base("inclusion10-suite", "");
    s.seed = 18;
    s.inclusion_trials = 100000;
    s.checks = {"inclusion10"};
    return s;
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

}  // namespace ballpot
