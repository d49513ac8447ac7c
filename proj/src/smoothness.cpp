#include "ballpot/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ballpot/errors.hpp"
#include "ballpot/random.hpp"

namespace ballpot {

namespace {

constexpr std::uint64_t kStreamSmoothness = 0x736d6f6f74680000ULL;
constexpr std::uint64_t kStreamLemma1 = 0x6c656d6d61310000ULL;

std::uint64_t gridStream(std::uint64_t tag, double delta, double p) {
  return deriveSeed(tag, static_cast<std::uint64_t>(std::llround(delta * 1e15)),
                    static_cast<std::uint64_t>(std::llround(p * 1e9)));
}

}  // namespace

GrowthFit fitExponent(std::span<const GridPoint> points) {
  if (points.size() < 4) throw FitError("fit needs at least 4 points, got " + std::to_string(points.size()), points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    if (!(pt.value > 0.0) || !std::isfinite(pt.value)) {
      throw FitError("value at point " + std::to_string(i) + " is not positive", i);
    }
    if (!(pt.abscissa > 0.0) || !std::isfinite(pt.abscissa)) {
      throw FitError("abscissa at point " + std::to_string(i) + " is not positive", i);
    }
    if (i > 0 && !(pt.abscissa < points[i - 1].abscissa)) {
      throw FitError("abscissas must strictly decrease (point " + std::to_string(i) + ")", i);
    }
  }
  const double step = std::log(points[1].abscissa / points[0].abscissa);
  for (std::size_t i = 2; i < points.size(); ++i) {
    const double s = std::log(points[i].abscissa / points[i - 1].abscissa);
    if (std::abs(s - step) > 1e-9 * std::abs(step)) {
      throw FitError("abscissas are not geometric at point " + std::to_string(i), i);
    }
  }

  const auto N = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& pt : points) {
    mx += std::log(pt.abscissa);
    my += std::log(pt.value);
  }
  mx /= N;
  my /= N;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& pt : points) {
    const double dx = std::log(pt.abscissa) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(pt.value) - my);
  }
  GrowthFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (const auto& pt : points) {
    const double e = std::log(pt.value) - (fit.intercept + fit.slope * std::log(pt.abscissa));
    ss += e * e;
  }
  fit.residual_rms = std::sqrt(ss / N);
  fit.grid.assign(points.begin(), points.end());
  return fit;
}

std::vector<double> geometricGrid(double first, std::size_t count, double ratio) {
  if (!(first > 0.0) || !(ratio > 0.0 && ratio < 1.0)) throw DomainError("geometric grid needs first > 0, 0 < ratio < 1");
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = first * std::pow(ratio, static_cast<double>(k));
  return out;
}

MeanEstimate capUnionMean(int n, double base, std::span<const WeightedCap> caps, double p, std::uint64_t seed,
                          std::uint64_t stream, const SamplingBudget& budget) {
  if (!(p > 0.0)) throw DomainError("exponent must be positive");
  if (!(base >= 0.0)) throw DomainError("base must be nonnegative");
  std::vector<const WeightedCap*> live;
  for (const auto& c : caps) {
    if (c.cap.center().dim() != n) throw DimensionError("cap dimension differs");
    if (!(c.weight >= 0.0)) throw DomainError("cap weight must be nonnegative");
    if (!c.cap.empty() && c.weight > 0.0) live.push_back(&c);
  }
  const double base_p = std::pow(base, p);
  if (live.empty()) {
    MeanEstimate e;
    e.value = base;
    e.power_mean = base_p;
    return e;
  }

  std::vector<double> share(live.size());
  std::vector<double> cumulative(live.size());
  double total = 0.0;
  for (std::size_t j = 0; j < live.size(); ++j) {
    share[j] = std::pow(live[j]->weight, p) * live[j]->cap.sigma();
    total += share[j];
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < live.size(); ++j) {
    share[j] /= total;
    cumulative[j] = acc += share[j];
  }
  cumulative.back() = 1.0;

  auto make_drawer = [&] {
    return [&, xi = std::vector<Complex>(static_cast<std::size_t>(n))](Rng& rng) mutable {
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), uniform01(rng));
      const auto j = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), live.size() - 1);
      live[j]->cap.sample(rng, xi);
      double mass = 0.0, density = 0.0;
      for (std::size_t i = 0; i < live.size(); ++i) {
        if (live[i]->cap.contains(xi)) {
          mass += live[i]->weight;
          density += share[i] / live[i]->cap.sigma();
        }
      }
      // xi on the sampled cap's boundary: a null event under exact arithmetic.
      if (!(density > 0.0)) return 0.0;
      return (std::pow(base + mass, p) - base_p) / density;
    };
  };
  SampleSummary s = estimateMean(make_drawer, seed, stream, budget, p);
  s.mean += base_p;
  return meanFromSummary(s, p);
}

MeanEstimate smoothnessLp(const Measure& mu, double delta, double p, const SphereSampler& sampler,
                          const SamplingBudget& budget) {
  const int n = mu.dim();
  if (sampler.n != n) throw DimensionError("sampler dimension differs from the measure");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("smoothness needs 0 < delta < 1");
  if (!(p > 1.0)) throw DomainError("smoothness needs p > 1");
  const double base = mu.densities().empty() ? 0.0 : densityCarlesonMass(mu, delta, n);
  std::vector<WeightedCap> caps;
  for (const auto& a : mu.atoms()) {
    const double one_minus = 1.0 - a.location.norm();
    if (!(one_minus < delta)) continue;
    caps.push_back({SphereCap(a.location, delta), a.mass * std::pow(one_minus, n)});
  }
  return capUnionMean(n, base, caps, p, sampler.seed, gridStream(kStreamSmoothness, delta, p), budget);
}

SphereMeasure::SphereMeasure(int n, std::vector<Atom> atoms) : n_(n), atoms_(std::move(atoms)) {
  if (n < 1) throw DimensionError("dimension must be >= 1");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    if (a.location.dim() != n) throw DimensionError("atom " + std::to_string(i) + " has the wrong dimension");
    if (std::abs(a.location.norm() - 1.0) > 1e-12) throw DomainError("atom " + std::to_string(i) + " is not on S");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw DomainError("atom " + std::to_string(i) + " has invalid mass");
  }
}

double SphereMeasure::totalMass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mass;
  return m;
}

Lemma1Result lemma1Check(const SphereMeasure& nu, double delta, double p, const SphereSampler& sampler,
                         const SamplingBudget& budget) {
  const int n = nu.dim();
  if (sampler.n != n) throw DimensionError("sampler dimension differs from the measure");
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("Lemma 1 needs 0 < delta < 1/2");
  if (!(p >= 1.0)) throw DomainError("Lemma 1 needs p >= 1");
  Lemma1Result out;
  const auto& atoms = nu.atoms();
  if (atoms.empty()) return out;

  const double eps = delta * delta;
  for (const auto& a : atoms) {
    double ball = 0.0;
    for (const auto& b : atoms) {
      if (std::abs(1.0 - inner(a.location, b.location)) < eps) ball += b.mass;
    }
    out.lhs += a.mass * std::pow(ball, p - 1.0);
  }

  std::vector<WeightedCap> caps;
  caps.reserve(atoms.size());
  const double sigma = capMeasure(n, 1.0, eps);
  for (const auto& a : atoms) caps.push_back({SphereCap(a.location, eps, sigma), a.mass});
  const MeanEstimate e = capUnionMean(n, 0.0, caps, p, sampler.seed, gridStream(kStreamLemma1, delta, p), budget);
  out.rhs = e.power_mean;
  out.rhs_std_error = e.power_std_error;
  out.samples = e.samples;
  out.converged = e.converged;
  out.ratio = out.rhs > 0.0 ? out.lhs * std::pow(delta, 2.0 * n) / out.rhs : 0.0;
  return out;
}

GaugeFunction powerGauge(double gamma) {
  return {[gamma](double d) { return std::pow(d, gamma); }, gamma};
}

void validateGauge(const GaugeFunction& phi, int n) {
  if (!phi.evaluator) throw DomainError("gauge has no evaluator");
  if (!(phi.gamma > 0.0 && phi.gamma < 2.0 * n)) throw DomainError("gauge exponent must lie in (0, 2n)");
  constexpr int kSteps = 64;
  double prev = phi.evaluator(0.0);
  if (!(prev >= 0.0)) throw DomainError("gauge is negative at 0");
  for (int k = 1; k <= kSteps; ++k) {
    const double v = phi.evaluator(static_cast<double>(k) / kSteps);
    if (!(v > prev)) throw DomainError("gauge is not increasing near " + std::to_string(double(k) / kSteps));
    prev = v;
  }
  for (int i = 1; i <= 16; ++i) {
    const double d = static_cast<double>(i) / 16.0;
    for (int j = 1; j <= 16; ++j) {
      const double t = static_cast<double>(j) / 16.0;
      const double lhs = phi.evaluator(t * d);
      const double rhs = std::pow(t, phi.gamma) * phi.evaluator(d);
      if (lhs > rhs * (1.0 + 1e-12)) {
        throw DomainError("gauge violates Phi(t d) <= t^gamma Phi(d) at t = " + std::to_string(t) +
                          ", d = " + std::to_string(d));
      }
    }
  }
}

GaugeResult gaugeCompare(std::span<const GridPoint> series, const GaugeFunction& phi, GaugeSide side, int n,
                         double cap) {
  if (series.empty()) throw DomainError("gauge comparison needs a nonempty series");
  GaugeResult out;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& pt = series[k];
    if (!(pt.value > 0.0)) throw DomainError("series value at point " + std::to_string(k) + " is not positive");
    const double f = phi.evaluator(pt.abscissa);
    if (!(f > 0.0)) throw DomainError("gauge vanishes at grid point " + std::to_string(k));
    const double scale = side == GaugeSide::mean_side ? std::pow(pt.abscissa, n) : 1.0;
    out.normalized.push_back(pt.value * scale / f);
  }
  const double top = *std::max_element(out.normalized.begin(), out.normalized.end());
  out.ratio = top / out.normalized.front();
  out.margin = cap - out.ratio;
  out.bounded = out.ratio <= cap;
  return out;
}

VanishingResult checkVanishing(std::span<const double> values, double ratio_cap) {
  if (values.size() < 3) throw DomainError("vanishing check needs at least 3 values");
  VanishingResult out;
  out.decreasing = true;
  for (std::size_t k = 2; k < values.size(); ++k) {
    const bool settled = values[k] == 0.0 && values[k - 1] == 0.0;  // already vanished
    if (!(values[k] < values[k - 1]) && !settled) {
      out.decreasing = false;
      out.first_increase = k;
      break;
    }
  }
  out.last_over_first = values.front() > 0.0 ? values.back() / values.front() : 0.0;
  out.vanishing = out.decreasing && values.front() > 0.0 && out.last_over_first < ratio_cap;
  return out;
}

}  // namespace ballpot
