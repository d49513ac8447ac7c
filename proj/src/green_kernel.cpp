#include "ballpot/green_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ballpot/errors.hpp"
#include "ballpot/quadrature.hpp"

namespace ballpot {

namespace {

void requireDimension(int n) {
  if (n < 1) throw DomainError("dimension must be >= 1");
}

// int_0^U u^{n-1}/(1+u) du
double reducedIntegral(double U, int n) {
  if (U < 0.5) {
    double sum = 0.0;
    double power = std::pow(U, n);
    for (int j = 0; j < 200; ++j) {
      const double term = power / (n + j);
      sum += (j % 2 == 0) ? term : -term;
      if (term < 1e-18 * sum) break;
      power *= U;
    }
    return sum;
  }
  double sum = ((n - 1) % 2 == 0) ? std::log1p(U) : -std::log1p(U);
  double power = 1.0;
  for (int k = 1; k <= n - 1; ++k) {
    power *= U;
    const double term = power / k;
    sum += ((n - 1 - k) % 2 == 0) ? term : -term;
  }
  return sum;
}

double quadratureG(double r, const GreenKernelParams& params) {
  const int n = params.n;
  auto integrand = [n](double t) { return std::pow((1.0 - t) * (1.0 + t), n - 1) * std::pow(t, 1 - 2 * n); };
  // Dyadic panels [a, 2a]: the power t^{1-2n} varies by a bounded factor on each.
  double integral = 0.0;
  for (double a = r; a < 1.0;) {
    const double b = std::min(1.0, 2.0 * a);
    integral += quad::adaptiveGauss(integrand, a, b, params.quadrature_tol, 12);
    a = b;
  }
  return (n + 1.0) / (2.0 * n) * integral;
}

}  // namespace

double littleGFromSeparation(const Separation& s, int n) {
  if (s.modulus_sq < kPoleRadius * kPoleRadius) {
    throw PoleError("Green kernel evaluated at its pole");
  }
  if (s.complement <= 0.0) return 0.0;
  return (n + 1.0) / (4.0 * n) * reducedIntegral(s.complement / s.modulus_sq, n);
}

double littleG(double r, const GreenKernelParams& params) {
  requireDimension(params.n);
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("g requires 0 < r <= 1, got " + std::to_string(r));
  if (r < kPoleRadius) throw PoleError("g evaluated within 1e-14 of its pole");
  if (r == 1.0) return 0.0;
  if (params.eval_policy == GreenEvaluation::adaptive_quadrature) return quadratureG(r, params);
  return littleGFromSeparation({r * r, (1.0 - r) * (1.0 + r)}, params.n);
}

double greenG(const Point& z, const Point& w, const GreenKernelParams& params) {
  requireDimension(params.n);
  if (z.dim() != params.n || w.dim() != params.n) throw DimensionError("point dimension differs from params.n");
  if (!(z.normSquared() < 1.0) || !(w.normSquared() < 1.0)) throw DomainError("G requires z, w in the open ball");
  const Separation s = separation(z, w);
  if (params.eval_policy == GreenEvaluation::adaptive_quadrature) {
    if (s.modulus_sq < kPoleRadius * kPoleRadius) throw PoleError("G evaluated at coincident points");
    return quadratureG(std::sqrt(s.modulus_sq), params);
  }
  return littleGFromSeparation(s, params.n);
}

double lemmaALowerBound(double r, int n) {
  return (n + 1.0) / (4.0 * n * n) * std::pow((1.0 - r) * (1.0 + r), n);
}

double lemmaAUpperConstant(int n) {
  requireDimension(n);
  const double r = kUpperBoundRadius;
  return littleG(r, {n}) / std::pow((1.0 - r) * (1.0 + r), n);
}

double asymptoticCoefficient(int n) {
  if (n < 2) throw DomainError("the power asymptotics of g need n > 1");
  return (n + 1.0) / (4.0 * n * (n - 1.0));
}

LemmaABounds lemmaABounds(const Point& z, const GreenKernelParams& params) {
  const double r = z.norm();
  if (!(r > 0.0) || !(r < 1.0)) throw DomainError("Lemma A bounds need 0 < |z| < 1");
  const int n = params.n;
  const double g = littleG(r, params);
  const double weight = std::pow((1.0 - r) * (1.0 + r), n);
  LemmaABounds out{};
  out.lower_ok = g >= lemmaALowerBound(r, n);
  out.upper_ok = r < kUpperBoundRadius || g / weight <= lemmaAUpperConstant(n) * (1.0 + 1e-12);
  out.asymp_ratio = g * std::pow(r, 2 * n - 2);
  return out;
}

}  // namespace ballpot
