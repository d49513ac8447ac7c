#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ballpot/errors.hpp"
#include "ballpot/green_kernel.hpp"
#include "ballpot/random.hpp"

using namespace ballpot;

namespace {

// Defining integral, evaluated independently of the library's quadrature route.
double oracleG(double r, int n) {
  auto f = [n](double t) { return std::pow(1.0 - t * t, n - 1) * std::pow(t, 1 - 2 * n); };
  // Split geometrically so every panel sees a smooth integrand.
  double sum = 0.0;
  double a = r;
  while (a < 1.0) {
    const double b = std::min(1.0, 2.0 * a);
    sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 10, 1e-13);
    a = b;
  }
  return (n + 1.0) / (2.0 * n) * sum;
}

}  // namespace

TEST_CASE("littleG examples") {
  CHECK(littleG(0.5, {1}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(littleG(0.5, {2}) == doctest::Approx(9.0 / 8.0 - 0.75 * std::log(2.0)).epsilon(1e-14));
  CHECK(littleG(0.5, {2}) == doctest::Approx(0.605140).epsilon(1e-6));
  for (int n = 1; n <= 4; ++n) CHECK(littleG(1.0, {n}) == 0.0);
}

TEST_CASE("littleG domain and pole") {
  CHECK_THROWS_AS(littleG(0.0, {2}), PoleError);
  CHECK_THROWS_AS(littleG(0.0, {1}), PoleError);
  CHECK_THROWS_AS(littleG(1e-15, {2}), PoleError);
  CHECK_THROWS_AS(littleG(-0.1, {2}), DomainError);
  CHECK_THROWS_AS(littleG(1.5, {2}), DomainError);
}

TEST_CASE("closed form matches the quadrature route on 200 seeded radii") {
  for (int n = 1; n <= 3; ++n) {
    Rng rng = makeRng(101, 1, static_cast<std::uint64_t>(n));
    for (int k = 0; k < 200; ++k) {
      const double r = std::exp(std::log(1e-3) * uniform01(rng));  // log-uniform in (1e-3, 1)
      const double closed = littleG(r, {n});
      const double quad = littleG(r, {n, GreenEvaluation::adaptive_quadrature});
      CHECK(std::abs(closed - quad) <= 1e-10 * closed);
    }
  }
}

TEST_CASE("closed form matches an independent Gauss-Kronrod oracle") {
  for (int n = 1; n <= 5; ++n) {
    for (double r : {1e-3, 0.05, 0.3, 0.5, 0.77, 0.9, 0.99, 0.999}) {
      CHECK(littleG(r, {n}) == doctest::Approx(oracleG(r, n)).epsilon(1e-11));
    }
  }
}

TEST_CASE("littleG decreases strictly on a geometric grid") {
  for (int n = 1; n <= 3; ++n) {
    double prev = littleG(1e-4, {n});
    for (double x = 2e-4; x < 1.0; x *= 1.5) {
      const double g = littleG(x, {n});
      CHECK(g < prev);
      CHECK(g > 0.0);
      prev = g;
    }
  }
}

TEST_CASE("greenG examples") {
  const GreenKernelParams p{2};
  CHECK(greenG(Point{0.5, 0.0}, Point::zero(2), p) == doctest::Approx(0.605140).epsilon(1e-6));
  CHECK_THROWS_AS(greenG(Point{0.9, 0.0}, Point{0.9, 0.0}, p), PoleError);
  CHECK_THROWS_AS(greenG(Point{0.5}, Point::zero(2), p), DimensionError);
  Rng rng = makeRng(7, 2);
  std::vector<Complex> a(2), b(2);
  for (int t = 0; t < 300; ++t) {
    sampleUniformBall(rng, a);
    sampleUniformBall(rng, b);
    const double g1 = greenG(Point(a), Point(b), p), g2 = greenG(Point(b), Point(a), p);
    CHECK(g1 >= 0.0);
    CHECK(g1 == doctest::Approx(g2).epsilon(1e-10));
  }
}

TEST_CASE("Lemma A lower bound, upper constant and asymptotics") {
  const GreenKernelParams p{2};
  const auto at_half = lemmaABounds(Point{0.5, 0.0}, p);
  CHECK(at_half.lower_ok);
  CHECK(lemmaALowerBound(0.5, 2) == doctest::Approx(3.0 / 16.0 * 0.5625));
  CHECK(lemmaALowerBound(0.5, 2) == doctest::Approx(0.10547).epsilon(1e-4));

  for (int n = 1; n <= 3; ++n) {
    Rng rng = makeRng(55, 3, static_cast<std::uint64_t>(n));
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int t = 0; t < 500; ++t) {
      sampleUniformSphere(rng, z);
      const double r = std::exp(std::log(1e-3) * uniform01(rng));
      std::vector<Complex> zr(z);
      for (auto& c : zr) c *= r;
      const auto b = lemmaABounds(Point(zr), {n});
      CHECK(b.lower_ok);
      CHECK(b.upper_ok);
    }
  }

  // The ratio g(r)/(1-r^2)^n decreases, so the constant fitted at r = 1/2 bounds r >= 1/2.
  const double c = lemmaAUpperConstant(2);
  for (double r = 0.5; r < 1.0; r += 0.01) CHECK(littleG(r, p) <= c * std::pow(1.0 - r * r, 2) * (1.0 + 1e-12));

  CHECK(asymptoticCoefficient(2) == doctest::Approx(3.0 / 8.0));
  CHECK_THROWS(asymptoticCoefficient(1));
  double lo = 1e9, hi = 0.0;
  for (double r : {0.25, 0.125, 0.0625, 0.03125}) {
    const double ratio = lemmaABounds(Point{r, 0.0}, p).asymp_ratio;
    CHECK(ratio >= kAsymptoticBracketLow * asymptoticCoefficient(2));
    CHECK(ratio <= asymptoticCoefficient(2));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK((hi - lo) / asymptoticCoefficient(2) < 0.25);
  // Closed form of the n = 2 ratio quoted in the bracket derivation.
  CHECK(lemmaABounds(Point{0.25, 0.0}, p).asymp_ratio ==
        doctest::Approx(0.375 * (1 - 0.0625) - 0.75 * 0.0625 * std::log(4.0)).epsilon(1e-12));
}
