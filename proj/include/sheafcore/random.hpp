#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>

#include "sheafcore/sheaf.hpp"

namespace sheafcore {

using Rng = std::mt19937_64;

/// Random poset on elements s0..s{n-1}: each pair i < j becomes a relation
/// with probability `density`, then the transitive reduction is taken.
Poset random_poset(Rng& rng, std::size_t n, double density = 0.35);

/// Random commutative sheaf. Elements are visited along a linear extension;
/// the maps out of the lower covers of v are drawn from the space of
/// cocones over the already-built diagram below v, so every square commutes
/// by construction. Entries are small integers.
Sheaf random_sheaf(Rng& rng, const Poset& p, Coefficients coeffs, std::size_t max_dim = 3);

SheavedSpace random_space(Rng& rng, std::size_t min_size, std::size_t max_size,
                          Coefficients coeffs, std::size_t max_dim = 3);

/// Downward closure of a random subset (may be empty).
std::set<std::string> random_ideal(Rng& rng, const Poset& p);

}  // namespace sheafcore
