#include "ballpot/random.hpp"

#include <cmath>

namespace ballpot {

void sampleUniformSphere(Rng& rng, std::span<Complex> out) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double s = 0.0;
  do {
    s = 0.0;
    for (auto& c : out) {
      c = Complex(normal(rng), normal(rng));
      s += std::norm(c);
    }
  } while (s == 0.0);
  const double inv = 1.0 / std::sqrt(s);
  for (auto& c : out) c *= inv;
}

void sampleUniformBall(Rng& rng, std::span<Complex> out, double radius) {
  sampleUniformSphere(rng, out);
  // |z| has density proportional to t^{2n-1}.
  const double t = radius * std::pow(uniform01(rng), 1.0 / (2.0 * static_cast<double>(out.size())));
  for (auto& c : out) c *= t;
}

}  // namespace ballpot
