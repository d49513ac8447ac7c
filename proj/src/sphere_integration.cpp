#include "ballpot/sphere_integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ballpot/errors.hpp"
#include "ballpot/random.hpp"
#include "ballpot/sphere_cap.hpp"

namespace ballpot {

namespace {

constexpr std::uint64_t kStreamSphere = 0x7370686572650000ULL;
constexpr std::uint64_t kStreamMean = 0x6d65616e00000000ULL;
constexpr std::uint64_t kStreamPotential = 0x706f74656e740000ULL;

constexpr double kUniformShare = 0.25;
constexpr int kMaxLevels = 32;

// Proposal component centered at one atom's radial projection.
struct PeakComponent {
  std::size_t atom;
  std::vector<Complex> eta;  // w / |w|
  double share;              // mixture probability
  int levels;
};

double levelEpsilon(int l) { return std::ldexp(2.0, -l); }

// Number of levels l < levels with gap < eps_l = 2^{1-l}.
int levelsContaining(double gap, int levels) {
  if (!(gap > 0.0)) return levels;
  int k = static_cast<int>(std::ceil(1.0 - std::log2(gap)));
  k = std::clamp(k, 0, levels);
  while (k > 0 && !(gap < levelEpsilon(k - 1))) --k;
  while (k < levels && gap < levelEpsilon(k)) ++k;
  return k;
}

}  // namespace

std::vector<Point> sampleSphere(const SphereSampler& sampler, std::size_t count) {
  if (count < 1) throw DomainError("sampleSphere needs count >= 1");
  if (sampler.n < 1) throw DomainError("sampler dimension must be >= 1");
  std::vector<Point> out;
  out.reserve(count);
  std::vector<Complex> buf(static_cast<std::size_t>(sampler.n));
  Rng rng = makeRng(sampler.seed, kStreamSphere);
  while (out.size() < count) {
    sampleUniformSphere(rng, buf);
    out.emplace_back(buf);
    if (sampler.antithetic && out.size() < count) {
      std::vector<Complex> neg(buf);
      for (auto& c : neg) c = -c;
      out.emplace_back(std::move(neg));
    }
  }
  return out;
}

MeanEstimate meanFromSummary(const SampleSummary& s, double p) {
  MeanEstimate e;
  e.samples = s.samples;
  e.power_mean = std::max(0.0, s.mean);
  e.power_std_error = s.std_error;
  e.converged = s.converged;
  if (e.power_mean > 0.0) {
    e.value = std::pow(e.power_mean, 1.0 / p);
    e.std_error = e.value * s.std_error / (p * e.power_mean);
  }
  e.jackknife_bias = jackknifeRootBias(s.blocks, p);
  return e;
}

PotentialEstimate potentialAt(const Point& z, const Measure& mu, const GreenKernelParams& params,
                              const PotentialOptions& opts) {
  if (z.dim() != mu.dim() || params.n != mu.dim()) throw DimensionError("potential: dimension mismatch");
  if (!(z.normSquared() < 1.0)) throw DomainError("potential: z must lie in the open ball");
  const int n = mu.dim();
  PotentialEstimate out;
  for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
    const auto& a = mu.atoms()[i];
    try {
      out.value += a.mass * littleGFromSeparation(separation(z, a.location), n);
    } catch (const PoleError&) {
      throw PoleError("potential evaluated at atom " + std::to_string(i), i);
    }
  }
  if (mu.densities().empty()) return out;

  if (opts.density == DensityEvaluation::radial_reduction) {
    out.value += densityPotential(mu, z.norm());
    return out;
  }

  const Measure densities_only(n, {}, mu.densities());
  const auto samples = sampleFromMeasure(densities_only, deriveSeed(opts.seed, kStreamPotential), opts.count);
  const std::size_t per = opts.count;
  double variance = 0.0;
  for (std::size_t k = 0; k < mu.densities().size(); ++k) {
    Moments m;
    for (std::size_t i = 0; i < per; ++i) {
      const auto& s = samples[k * per + i];
      const Separation sep = separation(z.coords(), s.location.coords());
      const double g = sep.modulus_sq < kPoleRadius * kPoleRadius ? 0.0 : littleGFromSeparation(sep, n);
      m.add(static_cast<double>(per) * s.weight * g);
    }
    const double mean = m.sum / static_cast<double>(per);
    out.value += mean;
    if (per > 1) variance += (m.sum_sq / static_cast<double>(per) - mean * mean) / static_cast<double>(per - 1);
  }
  out.std_error = std::sqrt(std::max(0.0, variance));
  out.samples = per * mu.densities().size();
  return out;
}

double admissiblePUpper(int n) {
  if (n < 1) throw DomainError("dimension must be >= 1");
  if (n == 1) return std::numeric_limits<double>::infinity();
  return (2.0 * n - 1.0) / (2.0 * (n - 1.0));
}

void validateMeanExponent(int n, double p, bool override_range) {
  if (override_range) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("p must be positive and finite");
    return;
  }
  const double hi = admissiblePUpper(n);
  if (!(p > 1.0 && p < hi)) {
    throw DomainError("p = " + std::to_string(p) + " outside the admissible range (1, " + std::to_string(hi) +
                      ") for n = " + std::to_string(n));
  }
}

MeanEstimate mp(double r, const Measure& mu, double p, const SphereSampler& sampler, const MeanOptions& opts) {
  const int n = mu.dim();
  if (sampler.n != n) throw DimensionError("sampler dimension differs from the measure");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("m_p needs 0 < r < 1");
  validateMeanExponent(n, p, opts.override_p_range);

  // Radial part: densities plus atoms at the origin.
  double radial = densityPotential(mu, r);
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
    const auto& a = mu.atoms()[i];
    if (a.location.isZero()) {
      radial += a.mass * littleG(r, {n});
    } else {
      peaks.push_back(i);
    }
  }

  if (peaks.empty()) {
    MeanEstimate e;
    e.value = radial;
    e.power_mean = std::pow(radial, p);
    return e;
  }

  std::vector<PeakComponent> components;
  std::vector<double> level_sigma(kMaxLevels);
  std::vector<double> level_prefix(kMaxLevels + 1, 0.0);  // sum_{l<k} 1/sigma_l
  for (int l = 0; l < kMaxLevels; ++l) {
    level_sigma[l] = capMeasure(n, 1.0, levelEpsilon(l));
    level_prefix[l + 1] = level_prefix[l] + 1.0 / level_sigma[l];
  }
  double total = 0.0;
  {
    for (std::size_t i : peaks) {
      const auto& a = mu.atoms()[i];
      const double s = a.location.norm();
      const double near = 1.0 - r * s;
      // Off the pole G(r xi, w) ~ (1-r^2)^n (1-s^2)^n / |1 - r s <xi, eta>|^{2n}, which is flat on a cap
      // of size 1 - rs. Dropping the common factor gives the rough size of int G^p dsigma that sets
      // the mixture shares.
      const double share = std::pow(a.mass, p) * std::pow((1.0 - s) * (1.0 + s), n * p) /
                           std::pow(near, n * (2.0 * p - 1.0));
      const double eps_min = std::max(levelEpsilon(kMaxLevels - 1), 0.25 * (r - s) * (r - s) / near);
      const int levels = std::clamp(1 + static_cast<int>(std::floor(std::log2(2.0 / eps_min))), 1, kMaxLevels);
      const Point dir = a.location.direction();
      components.push_back({i, {dir.coords().begin(), dir.coords().end()}, share, levels});
      total += share;
    }
    for (auto& c : components) c.share = (1.0 - kUniformShare) * c.share / total;
  }
  std::vector<double> cumulative;
  {
    double acc = kUniformShare;
    for (const auto& c : components) cumulative.push_back(acc += c.share);
    if (!cumulative.empty()) cumulative.back() = 1.0;
  }

  // Unit-center caps are rotations of each other, so sigma is tabulated per level.
  std::vector<std::vector<SphereCap>> caps;
  caps.reserve(components.size());
  for (const auto& c : components) {
    std::vector<SphereCap> per;
    const Point center(c.eta);
    for (int l = 0; l < c.levels; ++l) per.emplace_back(center, levelEpsilon(l), level_sigma[l]);
    caps.push_back(std::move(per));
  }

  const auto& atoms = mu.atoms();
  auto make_drawer = [&] {
    return [&, xi = std::vector<Complex>(static_cast<std::size_t>(n)),
            rxi = std::vector<Complex>(static_cast<std::size_t>(n))](Rng& rng) mutable {
      const double pick = uniform01(rng);
      if (pick < kUniformShare) {
        sampleUniformSphere(rng, xi);
      } else {
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
        const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                                    components.size() - 1);
        const int level = std::min(components[j].levels - 1,
                                   static_cast<int>(uniform01(rng) * components[j].levels));
        caps[j][static_cast<std::size_t>(level)].sample(rng, xi);
      }

      double density = kUniformShare;
      for (const auto& c : components) {
        const double gap = std::abs(1.0 - inner(std::span<const Complex>(xi), std::span<const Complex>(c.eta)));
        density += c.share / c.levels * level_prefix[static_cast<std::size_t>(levelsContaining(gap, c.levels))];
      }

      for (std::size_t k = 0; k < xi.size(); ++k) rxi[k] = r * xi[k];
      double u = radial;
      for (std::size_t i : peaks) {
        const Separation sep = separation(std::span<const Complex>(rxi), atoms[i].location.coords());
        if (sep.modulus_sq < kPoleRadius * kPoleRadius) {
          throw PoleError("m_p sample hit atom " + std::to_string(i), i);
        }
        u += atoms[i].mass * littleGFromSeparation(sep, n);
      }
      const double y = std::pow(u, p) / density;
      if (!std::isfinite(y)) throw PoleError("non-finite m_p sample near atom");
      return y;
    };
  };

  const std::uint64_t stream = deriveSeed(kStreamMean, static_cast<std::uint64_t>(std::llround(r * 1e15)),
                                          static_cast<std::uint64_t>(std::llround(p * 1e9)));
  const SampleSummary summary = estimateMean(make_drawer, sampler.seed, stream, opts.budget, p);
  return meanFromSummary(summary, p);
}

}  // namespace ballpot
