#include "ballpot/estimator.hpp"

namespace ballpot {

namespace {

Moments merge(const Moments& a, const Moments& b) { return {a.sum + b.sum, a.sum_sq + b.sum_sq, a.count + b.count}; }

}  // namespace

Moments reduceFixedOrder(std::span<const Moments> blocks) {
  if (blocks.empty()) return {};
  if (blocks.size() == 1) return blocks.front();
  const std::size_t half = blocks.size() / 2;
  return merge(reduceFixedOrder(blocks.first(half)), reduceFixedOrder(blocks.subspan(half)));
}

double jackknifeRootBias(std::span<const Moments> blocks, double p) {
  const std::size_t B = blocks.size();
  if (B < 2) return 0.0;
  const Moments total = reduceFixedOrder(blocks);
  if (!(total.sum > 0.0)) return 0.0;
  const double full = std::pow(total.sum / static_cast<double>(total.count), 1.0 / p);
  double avg = 0.0;
  for (const auto& b : blocks) {
    const double m = (total.sum - b.sum) / static_cast<double>(total.count - b.count);
    avg += std::pow(std::max(0.0, m), 1.0 / p);
  }
  avg /= static_cast<double>(B);
  return static_cast<double>(B - 1) * (avg - full);
}

}  // namespace ballpot
