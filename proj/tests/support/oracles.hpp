#pragma once

// Deliberately naive reference implementations. They share no code with the
// library beyond the GMP number types.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "sheafcore/sheaf.hpp"

namespace oracle {

using QMatrix = std::vector<std::vector<mpq_class>>;
using ZMatrix = std::vector<std::vector<mpz_class>>;

/// Textbook Gaussian elimination over Q (no fraction-free tricks).
std::size_t rank_q(QMatrix m);
std::size_t rank_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p);

/// Leibniz expansion; only for tiny matrices.
mpz_class determinant(const ZMatrix& m);
/// d_k = gcd of k×k minors / gcd of (k-1)×(k-1) minors, for k up to the
/// rank. Exponential; for matrices up to about 5×5.
std::vector<mpz_class> invariant_factors(const ZMatrix& m);

/// Reflexive order closure from the cover list via Floyd–Warshall.
std::vector<std::vector<bool>> order_matrix(const sheafcore::Poset& p);

/// All chains by subset enumeration, grouped by size - 1. Each chain is an
/// increasing index sequence.
std::vector<std::vector<std::vector<std::uint32_t>>> chains(const sheafcore::Poset& p);

/// Reduced or unreduced Betti numbers of the order complex over Q, from
/// coboundary ranks computed with rank_q.
std::vector<std::size_t> simplicial_betti_q(const sheafcore::Poset& p);

/// Betti numbers of the Roos complex, assembled densely with its own
/// composite computation (depth-first over every cover path, which also
/// asserts path independence).
std::vector<std::size_t> roos_betti(const sheafcore::SheavedSpace& sp);

/// Dimension of the compatible-tuple space, from a dense system.
std::size_t global_section_dim(const sheafcore::SheavedSpace& sp);

/// Every pair of cover paths between comparable elements composes to the
/// same matrix.
bool all_paths_commute(const sheafcore::Sheaf& f);

/// Trailing zeros removed.
std::vector<std::size_t> trim(std::vector<std::size_t> v);

}  // namespace oracle
