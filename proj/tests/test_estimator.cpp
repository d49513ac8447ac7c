#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ballpot/estimator.hpp"

using namespace ballpot;

TEST_CASE("fixed-order reduction") {
  std::vector<Moments> blocks;
  for (int b = 0; b < 37; ++b) {
    Moments m;
    for (int i = 0; i <= b; ++i) m.add(i);
    blocks.push_back(m);
  }
  const Moments total = reduceFixedOrder(blocks);
  double sum = 0.0, sum_sq = 0.0;
  std::size_t count = 0;
  for (const auto& m : blocks) {
    sum += m.sum;
    sum_sq += m.sum_sq;
    count += m.count;
  }
  CHECK(total.sum == sum);
  CHECK(total.sum_sq == sum_sq);
  CHECK(total.count == count);
  CHECK(reduceFixedOrder({}).count == 0);
}

TEST_CASE("estimates do not depend on the worker count") {
  auto make = [] { return [](Rng& rng) { return std::exp(3.0 * uniform01(rng)); }; };
  SamplingBudget budget;
  budget.target_rel_error = 0.001;
  budget.cap = 1u << 17;
  std::vector<SampleSummary> runs;
  for (unsigned w : {1u, 2u, 5u}) {
    budget.workers = w;
    runs.push_back(estimateMean(make, 42, 7, budget, 1.0));
  }
  for (const auto& r : runs) {
    CHECK(r.mean == runs[0].mean);
    CHECK(r.std_error == runs[0].std_error);
    CHECK(r.samples == runs[0].samples);
  }
  // (e^3 - 1) / 3
  CHECK(std::abs(runs[0].mean - (std::exp(3.0) - 1.0) / 3.0) <= 4.0 * runs[0].std_error);
}

TEST_CASE("budget doubling and convergence flag") {
  auto constant = [] { return [](Rng&) { return 2.0; }; };
  const auto c = estimateMean(constant, 1, 1, {}, 1.25);
  CHECK(c.converged);
  CHECK(c.std_error == 0.0);
  CHECK(c.samples == std::size_t{1} << 14);

  // Heavy noise cannot reach the target inside a small cap.
  auto noisy = [] { return [](Rng& rng) { return uniform01(rng) < 0.001 ? 1000.0 : 0.0; }; };
  SamplingBudget small;
  small.initial = 2048;
  small.cap = 8192;
  const auto n = estimateMean(noisy, 1, 2, small, 1.0);
  CHECK_FALSE(n.converged);
  CHECK(n.samples == 8192);
  CHECK(n.blocks.size() == 8);
}

TEST_CASE("worker exceptions reach the caller") {
  auto failing = [] {
    return [](Rng& rng) -> double {
      if (uniform01(rng) < 1e-3) throw std::runtime_error("bad sample");
      return 1.0;
    };
  };
  SamplingBudget budget;
  budget.workers = 3;
  budget.initial = 1u << 16;
  CHECK_THROWS_AS(estimateMean(failing, 1, 3, budget, 1.0), std::runtime_error);
}

TEST_CASE("jackknife bias of the root") {
  std::vector<Moments> flat(8);
  for (auto& m : flat) {
    for (int i = 0; i < 10; ++i) m.add(3.0);
  }
  CHECK(jackknifeRootBias(flat, 1.25) == doctest::Approx(0.0).scale(1.0));
  CHECK(jackknifeRootBias(std::span(flat).first(1), 1.25) == 0.0);

  // The root is concave, so plug-in bias is negative: the jackknife estimate is <= 0.
  std::vector<Moments> spread(16);
  for (std::size_t b = 0; b < spread.size(); ++b) spread[b].add(static_cast<double>(b * b));
  CHECK(jackknifeRootBias(spread, 2.0) < 0.0);
  // p = 1 is linear: no bias.
  CHECK(jackknifeRootBias(spread, 1.0) == doctest::Approx(0.0).scale(1.0));
}
