#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "ballpot/random.hpp"

namespace ballpot {

/// Samples drawn from one counter-based random stream.
inline constexpr std::size_t kBlockSize = 1024;

struct SamplingBudget {
  std::size_t initial = std::size_t{1} << 14;
  std::size_t cap = std::size_t{1} << 20;
  /// Stop once std_error / value of the p-th root falls below this.
  double target_rel_error = 0.02;
  /// 0 = hardware concurrency. Results do not depend on this.
  unsigned workers = 0;
};

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double y) {
    sum += y;
    sum_sq += y * y;
    ++count;
  }
};

/// Pairwise sum in a fixed tree order.
Moments reduceFixedOrder(std::span<const Moments> blocks);

struct SampleSummary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  bool converged = false;
  std::vector<Moments> blocks;
};

/// Mean of i.i.d. draws with stopping rule on the relative error of mean^{1/p}.
///
/// `make_drawer()` is called once per block and must return a callable `double(Rng&)`.
/// Block b always uses the stream (seed, stream, b); the sample count doubles from
/// budget.initial until the target is met or budget.cap is reached.
template <class MakeDrawer>
SampleSummary estimateMean(MakeDrawer&& make_drawer, std::uint64_t seed, std::uint64_t stream,
                           const SamplingBudget& budget, double p);

/// Leave-one-block-out bias estimate of mean^{1/p}.
double jackknifeRootBias(std::span<const Moments> blocks, double p);

namespace detail {

inline unsigned workerCount(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

inline std::size_t blocksFor(std::size_t samples) { return (samples + kBlockSize - 1) / kBlockSize; }

}  // namespace detail

template <class MakeDrawer>
SampleSummary estimateMean(MakeDrawer&& make_drawer, std::uint64_t seed, std::uint64_t stream,
                           const SamplingBudget& budget, double p) {
  SampleSummary out;
  const std::size_t cap_blocks = std::max<std::size_t>(1, detail::blocksFor(budget.cap));
  std::size_t target_blocks = std::min(cap_blocks, std::max<std::size_t>(1, detail::blocksFor(budget.initial)));
  const unsigned workers = detail::workerCount(budget.workers);

  for (;;) {
    const std::size_t first = out.blocks.size();
    out.blocks.resize(target_blocks);
    std::atomic<std::size_t> next{first};
    std::mutex failure_lock;
    std::exception_ptr failure;
    auto work = [&] {
      try {
        for (std::size_t b = next++; b < target_blocks; b = next++) {
          auto draw = make_drawer();
          Rng rng = makeRng(seed, stream, b);
          Moments m;
          for (std::size_t i = 0; i < kBlockSize; ++i) m.add(draw(rng));
          out.blocks[b] = m;
        }
      } catch (...) {
        next = target_blocks;
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    };
    if (workers <= 1 || target_blocks - first <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    const Moments total = reduceFixedOrder(out.blocks);
    const auto N = static_cast<double>(total.count);
    out.samples = total.count;
    out.mean = total.sum / N;
    const double var = N > 1 ? std::max(0.0, (total.sum_sq - N * out.mean * out.mean) / (N - 1)) : 0.0;
    out.std_error = std::sqrt(var / N);

    const bool exact = out.std_error == 0.0;
    const bool precise = out.mean > 0.0 && out.std_error / (p * out.mean) <= budget.target_rel_error;
    out.converged = exact || precise;
    if (out.converged || target_blocks >= cap_blocks) break;
    target_blocks = std::min(cap_blocks, 2 * target_blocks);
  }
  return out;
}

}  // namespace ballpot
