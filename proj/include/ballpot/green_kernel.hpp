#pragma once

#include "ballpot/ball_geometry.hpp"
#include "ballpot/point.hpp"

namespace ballpot {

enum class GreenEvaluation { closed_form, adaptive_quadrature };

struct GreenKernelParams {
  int n = 2;
  GreenEvaluation eval_policy = GreenEvaluation::closed_form;
  /// Relative tolerance of the quadrature route.
  double quadrature_tol = 1e-12;
};

/// Distance to the singularity below which evaluation is refused.
inline constexpr double kPoleRadius = 1e-14;

/// g(r) = (n+1)/(2n) int_r^1 (1-t^2)^{n-1} t^{1-2n} dt for 0 < r <= 1.
///
/// Closed form: with u = (1-t^2)/t^2 the integral becomes
///   (1/2) int_0^U u^{n-1}/(1+u) du,  U = (1-r^2)/r^2,
/// whose antiderivative is sum_{k=1}^{n-1} (-1)^{n-1-k} U^k/k + (-1)^{n-1} log(1+U).
/// For U < 1/2 the alternating sum cancels badly, so the power series
/// sum_j (-1)^j U^{n+j}/(n+j) is used instead.
double littleG(double r, const GreenKernelParams& params);

/// g in terms of |x|^2 and 1-|x|^2; the hot path used by potentials.
double littleGFromSeparation(const Separation& s, int n);

/// G(z,w) = g(phi_w(z)).
double greenG(const Point& z, const Point& w, const GreenKernelParams& params);

struct LemmaABounds {
  bool lower_ok;
  /// Vacuously true for |z| < kUpperBoundRadius, where the upper estimate is not claimed.
  bool upper_ok;
  double asymp_ratio;
};

LemmaABounds lemmaABounds(const Point& z, const GreenKernelParams& params);

/// (n+1)/(4n^2) (1-r^2)^n.
double lemmaALowerBound(double r, int n);

inline constexpr double kUpperBoundRadius = 0.5;

/// sup_{r >= 1/2} g(r)/(1-r^2)^n. The ratio decreases in r, so the sup sits at r = 1/2.
double lemmaAUpperConstant(int n);

/// lim_{r->0} g(r) r^{2n-2} = (n+1)/(4n(n-1)), for n > 1.
double asymptoticCoefficient(int n);

/// For n = 2, g(r) r^2 = (3/8)(1-r^2) - (3/4) r^2 log(1/r) increases to 3/8 as r -> 0,
/// and equals 0.2866 = 0.764 * (3/8) at r = 1/4. On |z| <= 1/4 the ratio therefore stays in
/// [kAsymptoticBracketLow, 1] * asymptoticCoefficient(2).
inline constexpr double kAsymptoticBracketLow = 0.75;

}  // namespace ballpot
