#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ballpot/errors.hpp"
#include "ballpot/random.hpp"
#include "ballpot/sphere_cap.hpp"

using namespace ballpot;

namespace {

// For n = 2 the projection <xi, a/|a|> is uniform on the unit disc, so the cap is a lens:
// {|zeta| < 1} meets {|zeta - 1/t| < eps/t}. Long double: the three terms cancel to O(eps^2).
double lensOverPi(double t, double eps) {
  const long double R = eps / t, d = 1.0L / t;
  if (d >= 1.0L + R) return 0.0;
  if (d + 1.0L <= R) return 1.0;
  const long double a1 = std::acos((d * d + 1.0L - R * R) / (2.0L * d));
  const long double a2 = std::acos((d * d + R * R - 1.0L) / (2.0L * d * R));
  const long double k = std::sqrt((-d + 1.0L + R) * (d + 1.0L - R) * (d - 1.0L + R) * (d + 1.0L + R));
  return static_cast<double>((a1 + R * R * a2 - 0.5L * k) / std::numbers::pi_v<long double>);
}

struct HitCount {
  double fraction;
  double std_error;
};

HitCount hitCount(int n, const Point& a, double eps, std::size_t draws, std::uint64_t seed) {
  Rng rng = makeRng(seed, 7);
  std::vector<Complex> xi(static_cast<std::size_t>(n));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    sampleUniformSphere(rng, xi);
    Complex ip{};
    for (int k = 0; k < n; ++k) ip += xi[static_cast<std::size_t>(k)] * std::conj(a[k]);
    if (std::abs(1.0 - ip) < eps) ++hits;
  }
  const double f = static_cast<double>(hits) / static_cast<double>(draws);
  return {f, std::sqrt(f * (1.0 - f) / static_cast<double>(draws))};
}

}  // namespace

TEST_CASE("cap measure equals the lens area for n = 2") {
  for (double t : {1.0, 0.99, 0.85, 0.6}) {
    for (double eps : {1e-3, 0.01, 0.1, 0.3, 0.7, 1.2, 1.9}) {
      CAPTURE(t);
      CAPTURE(eps);
      CHECK(capMeasure(2, t, eps) == doctest::Approx(lensOverPi(t, eps)).epsilon(1e-9).scale(1e-14));
    }
  }
  CHECK(capMeasure(2, 1.0, 2.5) == doctest::Approx(1.0));
  CHECK(capMeasure(2, 0.5, 0.4) == 0.0);
}

TEST_CASE("cap measure matches hit counting for n = 1 and n = 3") {
  for (int n : {1, 3}) {
    for (double t : {1.0, 0.8}) {
      std::vector<Complex> c(static_cast<std::size_t>(n));
      c[0] = t;
      const Point a(c);
      for (double eps : {0.3, 0.8}) {
        const auto h = hitCount(n, a, eps, 400000, 11);
        CAPTURE(n);
        CAPTURE(t);
        CAPTURE(eps);
        CHECK(std::abs(capMeasure(n, t, eps) - h.fraction) <= 4.0 * h.std_error + 1e-12);
      }
    }
  }
}

TEST_CASE("cap measure is monotone in eps") {
  for (int n = 1; n <= 4; ++n) {
    double prev = 0.0;
    for (double eps = 1e-3; eps < 2.5; eps *= 1.2) {
      const double s = capMeasure(n, 0.95, eps);
      CHECK(s >= prev - 1e-15);
      CHECK(s <= 1.0 + 1e-12);
      prev = s;
    }
  }
}

TEST_CASE("cap sampling stays in the cap and is uniform there") {
  const Point a{0.6 * std::exp(Complex(0.0, 0.4)), Complex(0.0, 0.7)};
  const double na = a.norm();
  std::vector<Complex> dir{a[0] / na, a[1] / na};
  const Point unit = Point::onSphere(dir);
  for (const auto& [center, eps] : {std::pair{unit, 0.05}, std::pair{a, 0.5}}) {
    const SphereCap cap(center, eps);
    const SphereCap inner(center, 0.6 * eps);
    REQUIRE_FALSE(cap.empty());
    Rng rng = makeRng(3, 9);
    std::vector<Complex> xi(2);
    const std::size_t draws = 100000;
    std::size_t in_inner = 0;
    for (std::size_t i = 0; i < draws; ++i) {
      cap.sample(rng, xi);
      CHECK(std::abs(std::norm(xi[0]) + std::norm(xi[1]) - 1.0) < 1e-13);
      CHECK(cap.contains(xi));
      if (inner.contains(xi)) ++in_inner;
    }
    const double f = static_cast<double>(in_inner) / static_cast<double>(draws);
    const double expected = inner.sigma() / cap.sigma();
    CHECK(std::abs(f - expected) <= 4.0 * std::sqrt(expected * (1.0 - expected) / static_cast<double>(draws)));
  }
}

TEST_CASE("empty caps") {
  CHECK(SphereCap(Point{0.5, 0.0}, -0.1).empty());
  const SphereCap cap(Point{0.2, 0.0}, 0.5);
  CHECK(cap.empty());
  Rng rng = makeRng(1, 1);
  std::vector<Complex> xi(2);
  CHECK_THROWS_AS(cap.sample(rng, xi), DomainError);
  CHECK_THROWS_AS(capMeasure(2, 1.5, 0.3), DomainError);
}
