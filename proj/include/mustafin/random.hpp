#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mustafin/building.hpp"
#include "mustafin/tropical.hpp"

namespace mustafin {

// seeded generators for property checks; only rng() is used, so streams are portable
using Rng = std::mt19937_64;

int64_t uniform(Rng& rng, int64_t lo, int64_t hi);  // inclusive

// c * t^k with c in [-3,3] \ {0} and k in [-range, range]
ValuedScalar random_monomial(Rng& rng, int range);
// invertible, each entry zero or a random monomial; diagonal when asked
ValuedMatrix random_lattice_basis(Rng& rng, int d, int range, bool diagonal);
// entries in Z[t] of degree <= 1 with unit constant determinant part
ValuedMatrix random_unimodular(Rng& rng, int d);
// invertible with entries (a + b t) t^k
ValuedMatrix random_gl(Rng& rng, int d, int range);

// n distinct classes; each lattice diagonal with probability 1/3 unless forced
Configuration random_configuration(Rng& rng, int d, int n, int range, bool all_diagonal = false);
std::vector<ApartmentPoint> random_points(Rng& rng, int d, int n, int range);

}  // namespace mustafin
