#include "ballpot/measure.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ballpot/errors.hpp"
#include "ballpot/green_kernel.hpp"
#include "ballpot/quadrature.hpp"
#include "ballpot/random.hpp"
#include "ballpot/sphere_cap.hpp"

namespace ballpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadTol = 1e-12;

// Radial integrals are written in v = 1 - t so the boundary singularity sits at v = 0.
// Polar Jacobian of normalized volume: 2n t^{2n-1}.
double jacobian(int n, double v) { return 2.0 * n * std::pow(1.0 - v, 2 * n - 1); }

// amplitude * v^exponent * rest in log form: near v = 0 the power can overflow while rest underflows.
double densityTimes(const RadialDensity& d, double v, double rest) {
  if (!(rest > 0.0) || !(v > 0.0)) return 0.0;
  return d.amplitude * std::exp(d.exponent * std::log(v) + std::log(rest));
}

// g(t) * 2n t^{2n-1}; the product vanishes like t as t -> 0.
double kernelTimesJacobian(int n, double v) {
  const double t = 1.0 - v;
  if (t < 1e-12) return 0.0;
  return littleGFromSeparation({t * t, v * (2.0 - v)}, n) * jacobian(n, v);
}

double massBetween(const RadialDensity& d, int n, double v_lo, double v_hi) {
  if (!(v_hi > v_lo)) return 0.0;
  if (v_lo <= 0.0 && d.exponent <= -1.0) return kInf;
  return quad::tanhSinh([&](double v) { return densityTimes(d, v, jacobian(n, v)); }, v_lo, v_hi, kQuadTol);
}

void requireSphereCenter(const Point& xi, int n) {
  if (xi.dim() != n) throw DimensionError("Carleson center dimension differs from the measure");
  if (std::abs(xi.norm() - 1.0) > 1e-12) throw DomainError("Carleson center must lie on the sphere");
}

void requireDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("Carleson parameter delta must lie in (0,1)");
}

MassEstimate carlesonMassImpl(const Measure& mu, const Point& xi, double delta, int weight_power,
                              const CarlesonOptions& opts) {
  requireSphereCenter(xi, mu.dim());
  requireDelta(delta);
  MassEstimate out;
  for (const auto& a : mu.atoms()) {
    if (std::abs(1.0 - inner(a.location, xi)) < delta) {
      out.value += a.mass * std::pow(1.0 - a.location.norm(), weight_power);
    }
  }
  if (mu.densities().empty()) return out;

  for (const auto& d : mu.densities()) {
    if (d.exponent + weight_power <= -1.0 && 1.0 - d.inner_cutoff > 0.0) {
      return {kInf, 0.0};
    }
  }
  if (opts.density == DensityEvaluation::radial_reduction) {
    out.value += densityCarlesonMass(mu, delta, weight_power);
    return out;
  }

  const Measure densities_only(mu.dim(), {}, mu.densities());
  const auto samples = sampleFromMeasure(densities_only, opts.seed, opts.count);
  // Each density contributes opts.count samples; per-sample variance is summed across densities.
  double total = 0.0;
  double variance = 0.0;
  const std::size_t per = opts.count;
  for (std::size_t k = 0; k < mu.densities().size(); ++k) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < per; ++i) {
      const auto& s = samples[k * per + i];
      double y = 0.0;
      if (std::abs(1.0 - inner(s.location, xi)) < delta) {
        y = static_cast<double>(per) * s.weight * std::pow(1.0 - s.location.norm(), weight_power);
      }
      sum += y;
      sum_sq += y * y;
    }
    const double mean = sum / static_cast<double>(per);
    total += mean;
    if (per > 1) {
      variance += (sum_sq / static_cast<double>(per) - mean * mean) / static_cast<double>(per - 1);
    }
  }
  out.value += total;
  out.std_error = std::sqrt(std::max(0.0, variance));
  return out;
}

}  // namespace

Measure::Measure(int n, std::vector<Atom> atoms, std::vector<RadialDensity> densities)
    : n_(n), atoms_(std::move(atoms)), densities_(std::move(densities)) {
  if (n_ < 1) throw DomainError("measure dimension must be >= 1");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    const std::string where = "atom " + std::to_string(i) + ": ";
    if (a.location.dim() != n_) throw DimensionError(where + "location dimension differs from the measure");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw DomainError(where + "mass must be positive and finite");
    if (!(a.location.normSquared() < 1.0)) throw DomainError(where + "location must lie strictly inside B");
  }
  for (std::size_t i = 0; i < densities_.size(); ++i) {
    const auto& d = densities_[i];
    const std::string where = "density " + std::to_string(i) + ": ";
    if (!(d.amplitude > 0.0) || !std::isfinite(d.amplitude)) throw DomainError(where + "amplitude must be positive");
    if (!(d.inner_cutoff >= 0.0 && d.inner_cutoff < 1.0)) throw DomainError(where + "cutoff must lie in [0,1)");
    if (!std::isfinite(d.exponent) || !(n_ + d.exponent > -1.0)) {
      throw DomainError(where + "int (1-|w|^2)^n dmu diverges unless n + exponent > -1");
    }
  }
}

Measure Measure::radialForGamma(int n, double gamma, double amplitude) {
  return Measure(n, {}, {{gamma - 2.0 * n - 1.0, amplitude, 0.0}});
}

bool Measure::isRadial() const {
  for (const auto& a : atoms_) {
    if (!a.location.isZero()) return false;
  }
  return true;
}

bool Measure::hasFiniteMass() const {
  for (const auto& d : densities_) {
    if (d.exponent <= -1.0) return false;
  }
  return true;
}

double convergenceIntegral(const Measure& mu) {
  const int n = mu.dim();
  double total = 0.0;
  for (const auto& a : mu.atoms()) total += a.mass * std::pow(1.0 - a.location.normSquared(), n);
  for (const auto& d : mu.densities()) {
    total += quad::tanhSinh(
        [&](double v) { return densityTimes(d, v, std::pow(v * (2.0 - v), n) * jacobian(n, v)); }, 0.0,
        1.0 - d.inner_cutoff, kQuadTol);
  }
  return total;
}

double totalMass(const Measure& mu) {
  double total = 0.0;
  for (const auto& a : mu.atoms()) total += a.mass;
  for (const auto& d : mu.densities()) total += massBetween(d, mu.dim(), 0.0, 1.0 - d.inner_cutoff);
  return total;
}

MassEstimate carlesonMass(const Measure& mu, const Point& xi, double delta, const CarlesonOptions& opts) {
  return carlesonMassImpl(mu, xi, delta, 0, opts);
}

MassEstimate carlesonMass(const WeightedMeasure& lambda, const Point& xi, double delta, const CarlesonOptions& opts) {
  return carlesonMassImpl(lambda.base(), xi, delta, lambda.base().dim(), opts);
}

double densityCarlesonMass(const Measure& mu, double delta, int weight_power) {
  requireDelta(delta);
  const int n = mu.dim();
  double total = 0.0;
  for (const auto& d : mu.densities()) {
    const double v_hi = std::min(delta, 1.0 - d.inner_cutoff);
    if (!(v_hi > 0.0)) continue;
    if (d.exponent + weight_power <= -1.0) return kInf;
    // The region meets the sphere of radius t = 1 - v in a cap; it is empty once v >= delta.
    total += quad::tanhSinh(
        [&](double v) {
          return densityTimes(d, v, std::pow(v, weight_power) * jacobian(n, v) * capMeasureFromComplement(n, v, delta));
        },
        0.0, v_hi, 1e-10);
  }
  return total;
}

double densityPotential(const Measure& mu, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("potential radius must lie in [0,1)");
  const int n = mu.dim();
  double total = 0.0;
  for (const auto& d : mu.densities()) {
    const double c = d.inner_cutoff;
    // Mass inside radius r sees the constant g(r).
    if (r > c && r > 0.0) {
      total += littleG(r, {n}) * massBetween(d, n, 1.0 - r, 1.0 - c);
    }
    const double v_hi = std::min(1.0 - r, 1.0 - c);
    total += quad::tanhSinh([&](double v) { return densityTimes(d, v, kernelTimesJacobian(n, v)); }, 0.0, v_hi,
                            kQuadTol);
  }
  return total;
}

std::vector<WeightedPoint> sampleFromMeasure(const Measure& mu, std::uint64_t seed, std::size_t count) {
  if (count < 1) throw DomainError("sampleFromMeasure needs count >= 1");
  const int n = mu.dim();
  std::vector<WeightedPoint> out;
  out.reserve(mu.atoms().size() + count * mu.densities().size());
  for (const auto& a : mu.atoms()) out.push_back({a.location, a.mass});

  std::vector<Complex> dir(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < mu.densities().size(); ++k) {
    const auto& d = mu.densities()[k];
    const double beta = d.exponent > -1.0 ? d.exponent : n + d.exponent;
    const double V = 1.0 - d.inner_cutoff;
    const double norm_const = std::pow(V, beta + 1.0) / (beta + 1.0);
    Rng rng = makeRng(seed, 0x6d65617375726500ULL, k);
    for (std::size_t i = 0; i < count; ++i) {
      const double u = 1.0 - uniform01(rng);  // (0, 1]
      const double v = V * std::pow(u, 1.0 / (beta + 1.0));
      sampleUniformSphere(rng, dir);
      std::vector<Complex> coords(dir);
      for (auto& c : coords) c *= (1.0 - v);
      // density(v) / proposal(v), proposal = v^beta / norm_const.
      const double w = d.amplitude * std::pow(v, d.exponent - beta) * jacobian(n, v) * norm_const /
                       static_cast<double>(count);
      out.push_back({Point(std::move(coords)), w});
    }
  }
  return out;
}

}  // namespace ballpot
