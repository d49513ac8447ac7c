#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ballpot/estimator.hpp"
#include "ballpot/green_kernel.hpp"
#include "ballpot/measure.hpp"
#include "ballpot/point.hpp"

namespace ballpot {

/// Deterministic source of uniform points on S.
struct SphereSampler {
  int n = 2;
  std::uint64_t seed = 1;
  /// Emit points in (xi, -xi) pairs.
  bool antithetic = true;
};

std::vector<Point> sampleSphere(const SphereSampler& sampler, std::size_t count);

/// Monte Carlo estimate of a p-th mean (int |u|^p dsigma)^{1/p}.
struct MeanEstimate {
  double value = 0.0;
  /// Delta-method error of the root: std_error(power_mean) / (p value^{p-1}).
  double std_error = 0.0;
  std::size_t samples = 0;
  double power_mean = 0.0;
  double power_std_error = 0.0;
  /// Jackknife estimate of the plug-in bias of the root; reported, not subtracted.
  double jackknife_bias = 0.0;
  /// False when the sample cap was hit before reaching the target relative error.
  bool converged = true;
};

MeanEstimate meanFromSummary(const SampleSummary& s, double p);

struct PotentialOptions {
  DensityEvaluation density = DensityEvaluation::radial_reduction;
  std::uint64_t seed = 1;
  /// Samples per density in the Monte Carlo route.
  std::size_t count = 1u << 16;
};

struct PotentialEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// G_mu(z). Atoms contribute their exact sum; densities either by the radial reduction or
/// by an unbiased estimate built on sampleFromMeasure.
PotentialEstimate potentialAt(const Point& z, const Measure& mu, const GreenKernelParams& params,
                              const PotentialOptions& opts = {});

/// (2n-1)/(2(n-1)) for n > 1; +infinity for n = 1.
double admissiblePUpper(int n);

/// Throws DomainError unless 1 < p < admissiblePUpper(n) or the override is set (then p > 0).
void validateMeanExponent(int n, double p, bool override_range);

struct MeanOptions {
  SamplingBudget budget;
  bool override_p_range = false;
};

/// m_p(r, G_mu) by importance-sampled Monte Carlo over S.
///
/// Radial parts (densities, atoms at 0) are constant on the sphere of radius r and enter
/// exactly, so a radial measure gives an exact value with zero std_error. Around every other atom the proposal mixes uniform caps
/// {|1 - <xi, w/|w|>| < 2^{1-l}} over dyadic levels l, plus a defensive uniform component.
/// The kernel peak behaves like |1 - <xi, eta>|^{-p(n-1)} while the mixture density grows
/// like |1 - <xi, eta>|^{-n}, so the weighted integrand has finite variance for admissible p
/// as long as no atom lies on the sphere of radius r. On that sphere the pole is sampled
/// directly and the variance is finite only for p < (3n-1)/(4(n-1)); estimates there may stop
/// at the budget cap unconverged.
MeanEstimate mp(double r, const Measure& mu, double p, const SphereSampler& sampler, const MeanOptions& opts = {});

}  // namespace ballpot
