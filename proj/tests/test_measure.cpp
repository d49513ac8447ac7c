#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ballpot/errors.hpp"
#include "ballpot/measure.hpp"
#include "ballpot/random.hpp"
#include "ballpot/smoothness.hpp"

using namespace ballpot;

namespace {

constexpr Complex I{0.0, 1.0};

Point e1() { return Point::onSphere({1.0, 0.0}); }

Measure atomAt(double x, double mass = 1.0) { return Measure(2, {{Point{x, 0.0}, mass}}); }

double slopeOver(const std::vector<double>& deltas, auto&& value) {
  std::vector<GridPoint> pts;
  for (std::size_t k = 1; k < deltas.size(); ++k) pts.push_back({deltas[k], value(deltas[k])});
  return fitExponent(pts).slope;
}

}  // namespace

TEST_CASE("convergence integral examples") {
  CHECK(convergenceIntegral(atomAt(0.9)) == doctest::Approx(0.0361).epsilon(1e-12));
  CHECK(convergenceIntegral(Measure::zero(2)) == 0.0);
  // 4 int_0^1 (1-t^2)^2 t^3 dt = 1/6.
  CHECK(convergenceIntegral(Measure::lebesgue(2)) == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  // A singular density against Gauss-Kronrod after t = 1 - u^2, which makes the integrand smooth.
  const Measure mu(2, {}, {{-2.5, 1.0, 0.0}});
  auto f = [](double u) {
    const double t = 1.0 - u * u;
    return 8.0 * std::pow(2.0 - u * u, 2) * t * t * t;
  };
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-13);
  CHECK(convergenceIntegral(mu) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("total mass") {
  CHECK(totalMass(Measure::lebesgue(2, 3.0)) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::isinf(totalMass(Measure::radialForGamma(2, 2.5))));
  CHECK(totalMass(Measure(2, {{Point{0.1, 0.0}, 2.0}, {Point{0.0, 0.5 * I}, 0.5}})) == 2.5);
  CHECK(Measure::lebesgue(2).hasFiniteMass());
  CHECK_FALSE(Measure::radialForGamma(2, 3.5).hasFiniteMass());
}

TEST_CASE("measure construction is validated") {
  CHECK_THROWS_AS(Measure(2, {{Point{0.5, 0.0}, 0.0}}), DomainError);
  CHECK_THROWS_AS(Measure(2, {{Point{0.5, 0.0}, -1.0}}), DomainError);
  CHECK_THROWS_AS(Measure(2, {{Point::onSphere({1.0, 0.0}), 1.0}}), DomainError);
  CHECK_THROWS_AS(Measure(2, {{Point{0.5}, 1.0}}), DimensionError);
  // n + alpha = -1 makes the convergence integral diverge.
  CHECK_THROWS_AS(Measure(2, {}, {{-3.0, 1.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(Measure(2, {}, {{0.0, 1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(Measure(0, {}), DomainError);
  CHECK_NOTHROW(Measure(2, {}, {{-2.9, 1.0, 0.0}}));
}

TEST_CASE("Carleson mass of atoms") {
  const auto lambda = lambdaOf(atomAt(0.9));
  CHECK(carlesonMass(lambda, e1(), 0.2).value == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(carlesonMass(lambda, e1(), 0.05).value == 0.0);
  CHECK(carlesonMass(atomAt(0.9), e1(), 0.2).value == 1.0);
  CHECK_THROWS_AS(carlesonMass(atomAt(0.9), Point{0.5, 0.0}, 0.2), DomainError);
  CHECK_THROWS_AS(carlesonMass(atomAt(0.9), e1(), 1.0), DomainError);
  CHECK_THROWS_AS(carlesonMass(atomAt(0.9), Point::onSphere({1.0}), 0.2), DimensionError);
}

TEST_CASE("Lebesgue Carleson mass scales like delta^(n+1)") {
  const auto deltas = geometricGrid(0.125, 7);
  const Measure leb = Measure::lebesgue(2);
  const double s = slopeOver(deltas, [&](double d) { return carlesonMass(leb, e1(), d).value; });
  CHECK(s == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("radial densities realize the prescribed lambda exponent") {
  const auto deltas = geometricGrid(0.125, 7);
  for (double gamma : {2.25, 2.5, 3.0, 3.5, 3.9}) {
    const auto lambda = lambdaOf(Measure::radialForGamma(2, gamma));
    const double s = slopeOver(deltas, [&](double d) { return carlesonMass(lambda, e1(), d).value; });
    CAPTURE(gamma);
    CHECK(std::abs(s - gamma) <= 0.25);
  }
}

TEST_CASE("Carleson mass is monotone in delta and lambda <= mu") {
  Rng rng = makeRng(44, 1);
  std::vector<Atom> atoms;
  std::vector<Complex> c(2);
  for (int k = 0; k < 40; ++k) {
    sampleUniformBall(rng, c, 0.999);
    atoms.push_back({Point(c), 0.5 + uniform01(rng)});
  }
  const Measure mu(2, atoms, {{-1.5, 1.0, 0.2}});
  const auto lambda = lambdaOf(mu);
  for (int t = 0; t < 50; ++t) {
    sampleUniformSphere(rng, c);
    const Point xi = Point::onSphere(c);
    double prev_mu = 0.0, prev_lambda = 0.0;
    for (double d = 0.02; d < 1.0; d *= 1.3) {
      const double m = carlesonMass(mu, xi, d).value;
      const double l = carlesonMass(lambda, xi, d).value;
      CHECK(m >= prev_mu);
      CHECK(l >= prev_lambda);
      CHECK(l <= m);
      prev_mu = m;
      prev_lambda = l;
    }
  }
}

TEST_CASE("Monte Carlo Carleson mass agrees with the radial reduction") {
  for (const Measure& mu : {Measure::lebesgue(2), Measure(2, {}, {{-1.5, 1.0, 0.0}})}) {
    for (double d : {0.1, 0.4}) {
      const double exact = carlesonMass(lambdaOf(mu), e1(), d).value;
      const auto mc = carlesonMass(lambdaOf(mu), e1(), d, {DensityEvaluation::monte_carlo, 9, 200000});
      CHECK(mc.std_error > 0.0);
      CHECK(std::abs(mc.value - exact) <= 4.0 * mc.std_error);
    }
  }
  CHECK(std::isinf(carlesonMass(Measure(2, {}, {{-1.5, 1.0, 0.0}}), e1(), 0.1).value));
}

TEST_CASE("sampleFromMeasure") {
  const Measure atoms(2, {{Point{0.3, 0.0}, 1.5}, {Point{0.0, -0.2 * I}, 0.25}});
  for (std::uint64_t seed : {1u, 99u}) {
    const auto s = sampleFromMeasure(atoms, seed, 10);
    REQUIRE(s.size() == 2);
    CHECK(s[0].weight == 1.5);
    CHECK(s[1].location[1] == -0.2 * I);
  }
  CHECK_THROWS_AS(sampleFromMeasure(atoms, 1, 0), DomainError);

  const std::size_t count = 100000;
  const auto leb = sampleFromMeasure(Measure::lebesgue(2), 5, count);
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& w : leb) {
    CHECK(w.location.normSquared() < 1.0);
    sum += w.weight;
    sum_sq += w.weight * w.weight;
  }
  const double N = static_cast<double>(count);
  const double se = std::sqrt(std::max(0.0, N * sum_sq - sum * sum) / (N - 1.0));
  CHECK(std::abs(sum - totalMass(Measure::lebesgue(2))) <= 3.0 * se + 1e-12);

  const auto again = sampleFromMeasure(Measure::lebesgue(2), 5, count);
  bool same = again.size() == leb.size();
  for (std::size_t i = 0; same && i < leb.size(); ++i) {
    same = leb[i].weight == again[i].weight && leb[i].location[0] == again[i].location[0] &&
           leb[i].location[1] == again[i].location[1];
  }
  CHECK(same);
}

TEST_CASE("sampled convergence integral matches the exact reduction") {
  for (const Measure& mu : {Measure::lebesgue(2), Measure(2, {}, {{-2.5, 1.0, 0.0}})}) {
    const auto s = sampleFromMeasure(mu, 8, 200000);
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& w : s) {
      const double y = w.weight * std::pow(1.0 - w.location.normSquared(), 2);
      sum += y;
      sum_sq += y * y;
    }
    const double N = static_cast<double>(s.size());
    const double se = std::sqrt(std::max(0.0, N * sum_sq - sum * sum) / (N - 1.0));
    CHECK(std::abs(sum - convergenceIntegral(mu)) <= 4.0 * se);
  }
}
