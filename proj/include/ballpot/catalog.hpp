#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ballpot/measure.hpp"
#include "ballpot/scenario.hpp"
#include "ballpot/smoothness.hpp"

namespace ballpot {

/// Built-in scenarios in name order.
const std::vector<std::string>& catalogNames();
bool isCatalogScenario(std::string_view name);
Scenario catalogScenario(std::string_view name);
std::string catalogDescription(std::string_view name);

/// Measures reachable as "builtin:<name>" from scenario files.
const std::vector<std::string>& builtinMeasureNames();
Measure builtinMeasure(std::string_view name);

/// Atoms on `shells` spheres |w| = 1 - 2^{-k-1/2}, k = 1..shells, `per_shell` uniformly scattered
/// atoms each (fixed seed). Shell k carries lambda-mass 2^{-decay k} in total, so
/// lambda(C(xi, delta)) concentrates like delta^{n/p + decay} after averaging over xi.
Measure shellMeasure(int n, int shells, int per_shell, double decay, std::uint64_t seed);

/// As shellMeasure, but every atom has mu-mass 1 (a finite measure).
Measure finiteShellMeasure(int n, int shells, int per_shell, std::uint64_t seed);

struct NamedSphereMeasure {
  std::string name;
  SphereMeasure measure;
};

/// Three atomic measures on S: 64 scattered atoms, 64 atoms in 4 tight clusters, 32 antipodal pairs.
std::vector<NamedSphereMeasure> lemma1Measures(int n, std::uint64_t seed);

}  // namespace ballpot
