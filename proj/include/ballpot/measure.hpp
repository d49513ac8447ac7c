#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ballpot/point.hpp"

namespace ballpot {

struct Atom {
  Point location;
  double mass;
};

/// amplitude * (1-|w|)^exponent against normalized volume measure V (V(B) = 1) on
/// inner_cutoff <= |w| < 1. In polar form dV = 2n t^{2n-1} dt dsigma.
struct RadialDensity {
  double exponent = 0.0;
  double amplitude = 1.0;
  double inner_cutoff = 0.0;
};

/// A nonnegative Borel measure on B: finitely many atoms plus radial densities.
/// Construction enforces the finiteness of int (1-|w|^2)^n dmu, i.e. n + exponent > -1.
class Measure {
 public:
  Measure(int n, std::vector<Atom> atoms, std::vector<RadialDensity> densities = {});

  static Measure zero(int n) { return Measure(n, {}, {}); }
  /// Normalized volume measure.
  static Measure lebesgue(int n, double amplitude = 1.0) { return Measure(n, {}, {{0.0, amplitude, 0.0}}); }
  /// Radial density whose lambda-mass of Carleson regions scales like delta^gamma
  /// (exponent = gamma - 2n - 1); admissible for gamma in (n, 2n+1].
  static Measure radialForGamma(int n, double gamma, double amplitude = 1.0);

  int dim() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<RadialDensity>& densities() const { return densities_; }

  bool isZero() const { return atoms_.empty() && densities_.empty(); }
  /// True when every atom sits at the origin, so the measure is invariant under U(n).
  bool isRadial() const;
  /// Total mass mu(B) is finite.
  bool hasFiniteMass() const;

 private:
  int n_;
  std::vector<Atom> atoms_;
  std::vector<RadialDensity> densities_;
};

/// lambda = (1-|z|)^n mu.
class WeightedMeasure {
 public:
  explicit WeightedMeasure(Measure base) : base_(std::move(base)) {}
  const Measure& base() const { return base_; }

 private:
  Measure base_;
};

inline WeightedMeasure lambdaOf(const Measure& mu) { return WeightedMeasure(mu); }

/// int_B (1-|w|^2)^n dmu(w).
double convergenceIntegral(const Measure& mu);

/// mu(B); +infinity for densities with exponent <= -1.
double totalMass(const Measure& mu);

enum class DensityEvaluation { radial_reduction, monte_carlo };

struct MassEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct CarlesonOptions {
  DensityEvaluation density = DensityEvaluation::radial_reduction;
  std::uint64_t seed = 1;
  std::size_t count = 1u << 16;
};

/// mu(C(xi, delta)); +infinity when a density with exponent <= -1 reaches the region.
MassEstimate carlesonMass(const Measure& mu, const Point& xi, double delta, const CarlesonOptions& opts = {});
/// lambda(C(xi, delta)).
MassEstimate carlesonMass(const WeightedMeasure& lambda, const Point& xi, double delta,
                          const CarlesonOptions& opts = {});

/// lambda(C(xi, delta)) contributed by the radial densities alone; independent of xi.
double densityCarlesonMass(const Measure& mu, double delta, int weight_power);

/// int g(max(r, |w|)) dmu_density(w): the potential of the radial densities at |z| = r.
/// Uses int_S G(z, t eta) dsigma(eta) = g(max(|z|, t)), which follows from the mean-value
/// property of M-harmonic functions on spheres centered at 0.
double densityPotential(const Measure& mu, double r);

struct WeightedPoint {
  Point location;
  double weight;
};

/// Points with weights such that sum weight * f(location) is an unbiased estimate of
/// int f dmu. Atoms come back verbatim; each density contributes `count` draws whose radius
/// follows the proposal (1-t)^beta on [cutoff, 1) with uniform direction. beta is the density's
/// own exponent when its mass is finite and n + exponent otherwise, which keeps the variance
/// finite for integrands decaying like (1-|w|^2)^n.
std::vector<WeightedPoint> sampleFromMeasure(const Measure& mu, std::uint64_t seed, std::size_t count);

}  // namespace ballpot
