#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ballpot/estimator.hpp"
#include "ballpot/measure.hpp"
#include "ballpot/sphere_cap.hpp"
#include "ballpot/sphere_integration.hpp"

namespace ballpot {

struct GridPoint {
  double abscissa;
  double value;
};

/// Least-squares line through (log abscissa, log value).
struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root mean square residual in log space.
  double residual_rms = 0.0;
  std::vector<GridPoint> grid;
};

/// Needs >= 4 points with strictly decreasing geometric abscissas and positive values.
/// FitError::index() names the offending point.
GrowthFit fitExponent(std::span<const GridPoint> points);

/// first, first*ratio, ..., count terms.
std::vector<double> geometricGrid(double first, std::size_t count, double ratio = 0.5);

/// Indicator of a cap on S carrying a weight.
struct WeightedCap {
  SphereCap cap;
  double weight;
};

/// (int_S (base + sum_j weight_j 1_{cap_j}(xi))^p dsigma(xi))^{1/p}.
///
/// base^p is exact; the excess over it lives on the union of the caps and is estimated by
/// sampling a cap j with probability proportional to weight_j^p sigma_j, then xi uniformly in it,
/// and weighting by 1 / sum_i pi_i 1_{cap_i}(xi) / sigma_i.
MeanEstimate capUnionMean(int n, double base, std::span<const WeightedCap> caps, double p, std::uint64_t seed,
                          std::uint64_t stream, const SamplingBudget& budget = {});

/// Lambda_p(delta) = (int_S lambda^p(C(xi, delta)) dsigma(xi))^{1/p} with lambda = (1-|z|)^n mu.
MeanEstimate smoothnessLp(const Measure& mu, double delta, double p, const SphereSampler& sampler,
                          const SamplingBudget& budget = {});

/// A finite measure supported by finitely many points of S.
class SphereMeasure {
 public:
  SphereMeasure(int n, std::vector<Atom> atoms);
  int dim() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double totalMass() const;

 private:
  int n_;
  std::vector<Atom> atoms_;
};

struct Lemma1Result {
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs * delta^{2n} / rhs; 0 for the empty measure.
  double ratio = 0.0;
  double rhs_std_error = 0.0;
  std::size_t samples = 0;
  bool converged = true;
};

/// lhs = int nu^{p-1}(D(xi, delta)) dnu(xi) as an exact double sum,
/// rhs = int_S nu^p(D(xi, delta)) dsigma(xi) by Monte Carlo. D(xi, delta) = {|1 - <xi, eta>| < delta^2}.
Lemma1Result lemma1Check(const SphereMeasure& nu, double delta, double p, const SphereSampler& sampler,
                         const SamplingBudget& budget = {});

/// Increasing Phi on [0, 1] with Phi(t delta) <= t^gamma Phi(delta).
struct GaugeFunction {
  std::function<double(double)> evaluator;
  double gamma;
};

GaugeFunction powerGauge(double gamma);

/// Throws DomainError unless 0 < gamma < 2n, Phi increases on a grid of [0, 1] and the
/// homogeneity bound holds on a (t, delta) lattice.
void validateGauge(const GaugeFunction& phi, int n);

enum class GaugeSide { mean_side, smoothness_side };

struct GaugeResult {
  bool bounded = false;
  /// sup_k normalized_k / normalized_0.
  double ratio = 0.0;
  /// cap - ratio.
  double margin = 0.0;
  std::vector<double> normalized;
};

/// Mean side normalizes by (1-r)^n / Phi(1-r), smoothness side by 1 / Phi(delta); the
/// abscissa is 1-r or delta. Bounded means the normalized sequence never exceeds cap times its
/// coarsest value.
GaugeResult gaugeCompare(std::span<const GridPoint> series, const GaugeFunction& phi, GaugeSide side, int n,
                         double cap);

struct VanishingResult {
  /// values[1..] strictly decreasing, except that a tail of exact zeros may repeat.
  bool decreasing = false;
  double last_over_first = 0.0;
  bool vanishing = false;
  /// First index k >= 2 with values[k] >= values[k-1].
  std::optional<std::size_t> first_increase;
};

/// Finite surrogate of "tends to 0": strictly decreasing after the coarsest point (or
/// exactly 0 from some point on) and last / first < ratio_cap.
VanishingResult checkVanishing(std::span<const double> values, double ratio_cap = 0.5);

}  // namespace ballpot
