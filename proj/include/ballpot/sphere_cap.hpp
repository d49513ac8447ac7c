#pragma once

#include <span>
#include <vector>

#include "ballpot/point.hpp"
#include "ballpot/random.hpp"

namespace ballpot {

/// sigma({xi in S : |1 - <xi, a>| < eps}) for a point a with |a| = 1 - one_minus_t.
///
/// The projection zeta = <xi, a/|a|> of normalized surface measure has density
/// (n-1)/pi (1-|zeta|^2)^{n-2} on the unit disc (n >= 2), or is uniform on the circle (n = 1);
/// the cap is the part of that disc inside |zeta - 1/t| < eps/t. The angular extent is integrated
/// in closed form and the remaining radial integral by tanh-sinh.
double capMeasureFromComplement(int n, double one_minus_t, double eps);
double capMeasure(int n, double center_norm, double eps);

/// The set {xi in S : |1 - <xi, a>| < eps} for a fixed center a in the closed ball.
class SphereCap {
 public:
  SphereCap(const Point& center, double eps);
  /// Skips the quadrature when sigma is already known (e.g. tabulated for unit centers).
  SphereCap(const Point& center, double eps, double sigma);

  const Point& center() const { return center_; }
  double epsilon() const { return eps_; }
  double sigma() const { return sigma_; }
  bool empty() const { return sigma_ <= 0.0; }

  /// |1 - <xi, a>|, the quantity compared against eps.
  double gap(std::span<const Complex> xi) const;
  bool contains(std::span<const Complex> xi) const { return gap(xi) < eps_; }

  /// Draws xi uniformly from the cap with respect to sigma. The cap must be nonempty.
  void sample(Rng& rng, std::span<Complex> out) const;

 private:
  void init();

  Point center_;
  std::vector<Complex> dir_;
  double t_ = 0.0;
  double one_minus_t_ = 1.0;
  double eps_ = 0.0;
  double sigma_ = 0.0;
  bool whole_sphere_ = false;
};

}  // namespace ballpot
