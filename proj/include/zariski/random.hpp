#pragma once

// Random proximity-valid clusters and divisors for property checks.

#include "zariski/divisor.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace zariski {

using Rng = std::mt19937_64;

/// 1..max_points points: the origin, then free points on random parents and
/// satellites at random meeting pairs. With coordinates, free points get
/// parameters in -3..3 or infinity, redrawn when the spot is taken.
Cluster random_cluster(Rng& rng, std::size_t max_points, bool with_coordinates = true);

IntegerVector random_integers(Rng& rng, std::size_t n, long lo, long hi);

/// Effective coefficients num/den with num in [0, max_num], den in [1, max_den],
/// a quarter of them zero.
RationalVector random_effective_rationals(Rng& rng, std::size_t n, long max_num, long max_den);

struct PropertyTally {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
};

/// Randomized closure-operator and nef-envelope checks; one tally per property.
std::vector<PropertyTally> self_check(std::uint64_t seed, std::size_t trials);

}  // namespace zariski
