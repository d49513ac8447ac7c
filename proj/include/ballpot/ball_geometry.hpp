#pragma once

#include <span>
#include <variant>

#include "ballpot/point.hpp"

namespace ballpot {

/// The involutive automorphism phi_w of B evaluated at z. Both points must lie in the open ball.
Point mobius(const Point& w, const Point& z);

/// |phi_w(z)|^2 and 1 - |phi_w(z)|^2, each computed without cancellation.
///
/// The complement comes from the modulus identity
///   1 - |phi_w(z)|^2 = (1-|z|^2)(1-|w|^2) / |1-<z,w>|^2,
/// the modulus from |z-w|^2 - |(z-w) ^ w|^2 over the same denominator, where
/// |a ^ b|^2 = |a|^2|b|^2 - |<a,b>|^2. Both forms are symmetric in (z, w).
struct Separation {
  double modulus_sq;
  double complement;
};

Separation separation(std::span<const Complex> z, std::span<const Complex> w);
Separation separation(const Point& z, const Point& w);

/// d(a,b) = |1 - <a,b>|^{1/2} on the closed ball.
double anisoDist(const Point& a, const Point& b);

/// C(xi, delta) = {z : |1 - <z,xi>| < delta}.
struct CarlesonRegion {
  Point center;
  double delta;
};

/// D(xi, delta) = {z : d(z,xi) < delta}.
struct MetricBall {
  Point center;
  double delta;
};

/// B*(z, rho) = {w : |phi_w(z)| < rho}.
struct InvariantBall {
  Point center;
  double radius;
};

/// K(z, s1, s2) = {w : | |z| - |w| | <= s1, d(z/|z|, w/|w|) <= s2}.
/// A zero vector's direction is taken as 0, so d(., 0) = 1.
struct ProofBox {
  Point center;
  double radial_halfwidth;
  double angular_radius;
};

using Region = std::variant<CarlesonRegion, MetricBall, InvariantBall, ProofBox>;

/// Strict comparisons for C, D and B*, non-strict for K.
bool inRegion(const Point& z, const Region& region);

}  // namespace ballpot
