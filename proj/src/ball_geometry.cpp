#include "ballpot/ball_geometry.hpp"

#include <cmath>
#include <string>

#include "ballpot/errors.hpp"

namespace ballpot {

namespace {

constexpr double kBallSlack = 1e-12;
constexpr double kSphereTolerance = 1e-12;

void requireSameDim(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

void requireOpenBall(const Point& p, const char* name) {
  if (!(p.normSquared() < 1.0)) {
    throw DomainError(std::string(name) + " must lie in the open unit ball");
  }
}

// The zero vector has no direction; it is represented by itself.
std::vector<Complex> directionOrZero(const Point& p) {
  const double r = p.norm();
  std::vector<Complex> out(p.coords().begin(), p.coords().end());
  if (r > 0.0) {
    for (auto& c : out) c /= r;
  }
  return out;
}

}  // namespace

Point::Point(std::vector<Complex> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DimensionError("a point needs dimension n >= 1");
  for (const auto& c : coords_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("point coordinates must be finite");
    }
  }
  if (normSquared() > 1.0 + kBallSlack) throw DomainError("point lies outside the closed unit ball");
}

Point Point::onSphere(std::vector<Complex> coords) {
  Point p(std::move(coords));
  if (std::abs(p.norm() - 1.0) > kSphereTolerance) throw DomainError("point is not on the unit sphere");
  return p;
}

Point Point::zero(int n) {
  if (n < 1) throw DomainError("dimension must be >= 1");
  return Point(std::vector<Complex>(static_cast<std::size_t>(n)));
}

Point Point::axis(int n, int k, double scale) {
  if (n < 1 || k < 0 || k >= n) throw DomainError("axis index out of range");
  std::vector<Complex> c(static_cast<std::size_t>(n));
  c[static_cast<std::size_t>(k)] = scale;
  return Point(std::move(c));
}

double Point::normSquared() const { return ballpot::normSquared(coords_); }
double Point::norm() const { return std::sqrt(normSquared()); }

bool Point::isZero() const {
  for (const auto& c : coords_) {
    if (c != Complex{}) return false;
  }
  return true;
}

Point Point::scaled(double factor) const {
  std::vector<Complex> c(coords_);
  for (auto& x : c) x *= factor;
  return Point(std::move(c));
}

Point Point::direction() const {
  if (isZero()) throw DomainError("the zero vector has no direction");
  return Point(directionOrZero(*this));
}

double normSquared(std::span<const Complex> z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

Complex inner(std::span<const Complex> z, std::span<const Complex> w) {
  Complex s{};
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

Complex inner(const Point& z, const Point& w) {
  requireSameDim(z.coords(), w.coords());
  return inner(z.coords(), w.coords());
}

Point mobius(const Point& w, const Point& z) {
  requireSameDim(w.coords(), z.coords());
  requireOpenBall(w, "w");
  requireOpenBall(z, "z");
  const std::size_t n = z.coords().size();
  const double w2 = w.normSquared();
  const Complex zw = inner(z, w);
  const Complex denom = 1.0 - zw;
  const double s = std::sqrt(1.0 - w2);

  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    // P_0 is the zero map, so Q_0 = I.
    const Complex pz = w2 > 0.0 ? (zw / w2) * w[j] : Complex{};
    const Complex qz = z[j] - pz;
    out[j] = (w[j] - pz - s * qz) / denom;
  }
  return Point(std::move(out));
}

Separation separation(std::span<const Complex> z, std::span<const Complex> w) {
  requireSameDim(z, w);
  const std::size_t n = z.size();
  const double z2 = normSquared(z);
  const double w2 = normSquared(w);
  const double denom = std::norm(1.0 - inner(z, w));

  // d = z - w; |d ^ w|^2 = sum_{i<j} |d_i w_j - d_j w_i|^2.
  double d2 = 0.0;
  double wedge = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex di = z[i] - w[i];
    d2 += std::norm(di);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex dj = z[j] - w[j];
      wedge += std::norm(di * w[j] - dj * w[i]);
    }
  }
  const double num = std::max(0.0, d2 - wedge);
  return {num / denom, (1.0 - z2) * (1.0 - w2) / denom};
}

Separation separation(const Point& z, const Point& w) { return separation(z.coords(), w.coords()); }

double anisoDist(const Point& a, const Point& b) { return std::sqrt(std::abs(1.0 - inner(a, b))); }

bool inRegion(const Point& z, const Region& region) {
  struct Visitor {
    const Point& z;
    bool operator()(const CarlesonRegion& c) const { return std::abs(1.0 - inner(z, c.center)) < c.delta; }
    bool operator()(const MetricBall& d) const { return anisoDist(z, d.center) < d.delta; }
    bool operator()(const InvariantBall& b) const {
      requireSameDim(z.coords(), b.center.coords());
      if (!(z.normSquared() < 1.0) || !(b.center.normSquared() < 1.0)) return false;
      return std::sqrt(separation(z, b.center).modulus_sq) < b.radius;
    }
    bool operator()(const ProofBox& k) const {
      requireSameDim(z.coords(), k.center.coords());
      if (std::abs(k.center.norm() - z.norm()) > k.radial_halfwidth) return false;
      const auto xi = directionOrZero(k.center);
      const auto eta = directionOrZero(z);
      return std::sqrt(std::abs(1.0 - inner(std::span<const Complex>(eta), std::span<const Complex>(xi)))) <=
             k.angular_radius;
    }
  };
  return std::visit(Visitor{z}, region);
}

}  // namespace ballpot
