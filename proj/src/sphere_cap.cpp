#include "ballpot/sphere_cap.hpp"

#include <cmath>
#include <numbers>

#include "ballpot/errors.hpp"
#include "ballpot/quadrature.hpp"

namespace ballpot {

namespace {

constexpr double kPi = std::numbers::pi;

// Work in zeta-coordinates relative to 1: the cap is |zeta - c| < R with
// c = 1/t = 1 + gamma0 and R = eps/t. For |zeta| = s = 1 - u,
//   R^2 - (c-s)^2 = (R - gamma0 - u)(R + gamma0 + u),
//   (s+c)^2 - R^2 = (2 - u + gamma0 - R)(2 - u + gamma0 + R),
// and the circle of radius s meets the cap in an arc of length
//   2 acos(kappa) = 4 atan2(sqrt(R^2 - (c-s)^2), sqrt((s+c)^2 - R^2)).
double arcLength(double u, double gamma0, double R) {
  const double inside = (R - gamma0 - u) * (R + gamma0 + u);
  const double outside = (2.0 - u + gamma0 - R) * (2.0 - u + gamma0 + R);
  if (inside <= 0.0) return 0.0;
  if (outside <= 0.0) return 2.0 * kPi;
  return 4.0 * std::atan2(std::sqrt(inside), std::sqrt(outside));
}

}  // namespace

double capMeasureFromComplement(int n, double one_minus_t, double eps) {
  if (n < 1) throw DomainError("dimension must be >= 1");
  if (!(one_minus_t >= 0.0 && one_minus_t <= 1.0)) throw DomainError("cap center must lie in the closed ball");
  if (!(eps > 0.0)) return 0.0;
  const double t = 1.0 - one_minus_t;
  if (t <= 0.0) return eps > 1.0 ? 1.0 : 0.0;
  const double gamma0 = one_minus_t / t;
  const double R = eps / t;
  if (R <= gamma0) return 0.0;
  if (R >= 2.0 + gamma0) return 1.0;

  if (n == 1) return arcLength(0.0, gamma0, R) / (2.0 * kPi);

  const double nm1 = static_cast<double>(n - 1);
  auto density = [=](double u) {
    const double s = 1.0 - u;
    const double w = n == 2 ? 1.0 : std::pow(u * (2.0 - u), n - 2);
    return nm1 / kPi * w * s * arcLength(u, gamma0, R);
  };
  const double u_hi = std::min(1.0, R - gamma0);
  const double u_full = 2.0 + gamma0 - R;  // below radius s = R - c the full circle is inside
  double sigma = 0.0;
  if (u_full < u_hi) {
    const double s_full = R - 1.0 - gamma0;
    sigma += 1.0 - std::pow((1.0 - s_full) * (1.0 + s_full), n - 1);
    sigma += quad::tanhSinh(density, 0.0, u_full);
  } else {
    sigma += quad::tanhSinh(density, 0.0, u_hi);
  }
  return std::clamp(sigma, 0.0, 1.0);
}

double capMeasure(int n, double center_norm, double eps) {
  return capMeasureFromComplement(n, 1.0 - center_norm, eps);
}

SphereCap::SphereCap(const Point& center, double eps) : center_(center), eps_(eps) {
  init();
  sigma_ = capMeasureFromComplement(center_.dim(), one_minus_t_, eps_);
}

SphereCap::SphereCap(const Point& center, double eps, double sigma) : center_(center), eps_(eps), sigma_(sigma) {
  init();
}

void SphereCap::init() {
  t_ = center_.norm();
  one_minus_t_ = 1.0 - t_;
  dir_.assign(center_.coords().begin(), center_.coords().end());
  if (t_ > 0.0) {
    for (auto& c : dir_) c /= t_;
    whole_sphere_ = eps_ / t_ >= 2.0 + one_minus_t_ / t_;
  } else {
    whole_sphere_ = eps_ > 1.0;
  }
}

double SphereCap::gap(std::span<const Complex> xi) const { return std::abs(1.0 - inner(xi, center_.coords())); }

void SphereCap::sample(Rng& rng, std::span<Complex> out) const {
  if (empty()) throw DomainError("cannot sample an empty cap");
  if (whole_sphere_) {
    sampleUniformSphere(rng, out);
    return;
  }
  const int n = center_.dim();
  const double gamma0 = one_minus_t_ / t_;
  const double R = eps_ / t_;
  std::uniform_real_distribution<double> angle(-kPi, kPi);

  if (n == 1) {
    const double half = arcLength(0.0, gamma0, R) / 2.0;
    const Complex zeta = std::polar(1.0, half * (2.0 * uniform01(rng) - 1.0));
    out[0] = zeta * dir_[0];
    return;
  }

  // Rejection from the smaller of disc(c, R) and the unit disc; envelope for the
  // (1-|zeta|^2)^{n-2} weight is its value at the smallest reachable |zeta|.
  const double u_max = R - gamma0;
  const double envelope = (n == 2 || u_max >= 1.0) ? 1.0 : std::pow(u_max * (2.0 - u_max), n - 2);
  Complex y;  // zeta - 1
  double one_minus_s2 = 0.0;
  for (;;) {
    const double phase = angle(rng);
    if (R <= 1.0) {
      y = gamma0 + std::polar(R * std::sqrt(uniform01(rng)), phase);
    } else {
      y = std::polar(std::sqrt(uniform01(rng)), phase) - 1.0;
      if (std::abs(y - gamma0) >= R) continue;
    }
    one_minus_s2 = -(2.0 * y.real() + std::norm(y));
    if (one_minus_s2 <= 0.0) continue;
    if (n == 2 || uniform01(rng) * envelope < std::pow(one_minus_s2, n - 2)) break;
  }
  const Complex zeta = 1.0 + y;

  // Unit vector orthogonal to dir_.
  std::vector<Complex> v(static_cast<std::size_t>(n));
  std::normal_distribution<double> normal(0.0, 1.0);
  double vn = 0.0;
  do {
    for (auto& c : v) c = Complex(normal(rng), normal(rng));
    const Complex proj = inner(std::span<const Complex>(v), std::span<const Complex>(dir_));
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= proj * dir_[j];
    vn = std::sqrt(normSquared(v));
  } while (vn < 1e-8);
  const double tangential = std::sqrt(one_minus_s2) / vn;
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = zeta * dir_[j] + tangential * v[j];
}

}  // namespace ballpot
