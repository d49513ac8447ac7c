#pragma once

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace ballpot::quad {

/// Adaptive bisection with a 15-point Gauss-Kronrod rule per panel.
template <class F>
double adaptiveGauss(F&& f, double a, double b, double rel_tol, unsigned max_depth = 30) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(std::forward<F>(f), a, b, max_depth,
                                                                       rel_tol, &err);
}

/// Double-exponential rule; tolerates integrable power singularities at either endpoint.
/// Callers keep the singular endpoint at 0 so nodes near it retain full relative precision.
template <class F>
double tanhSinh(F&& f, double a, double b, double rel_tol = 1e-12) {
  if (!(b > a)) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(std::forward<F>(f), a, b, rel_tol);
}

}  // namespace ballpot::quad
