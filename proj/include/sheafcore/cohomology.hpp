#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sheafcore/matrix.hpp"
#include "sheafcore/poset.hpp"
#include "sheafcore/sheaf.hpp"

namespace sheafcore {

enum class Grading { cochain, chain };

/// Basis vector of a complex: coordinate `coordinate` of the stalk attached
/// to `chain`.
struct BasisLabel {
  std::vector<Poset::Index> chain;
  std::size_t coordinate = 0;
};

/// Finite complex of finite-dimensional spaces.
///
/// Cochain grading: differentials[j] is d_j : C^j → C^{j+1}, shape
/// dims[j+1] × dims[j]. Chain grading: differentials[j] is the boundary
/// C_{j+1} → C_j, shape dims[j] × dims[j+1]. In both cases differentials[j]
/// links degrees j and j+1.
struct CochainComplex {
  Coefficients coefficients;
  Grading grading = Grading::cochain;
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> differentials;
  std::vector<std::vector<BasisLabel>> labels;
};

/// Throws IntegrityError unless every composite of consecutive
/// differentials is exactly zero.
void verify_square_zero(const CochainComplex& c);

struct DegreeGroup {
  std::size_t betti = 0;
  /// Invariant factors > 1; always empty over a field.
  std::vector<Integer> torsion;
  friend bool operator==(const DegreeGroup&, const DegreeGroup&) = default;
};

struct HomologyResult {
  std::vector<DegreeGroup> degrees;
  bool reduced = false;
  /// Rank of reduced homology in degree -1; 1 exactly for the empty space.
  std::size_t minus_one_rank = 0;

  std::size_t betti(std::size_t j) const { return j < degrees.size() ? degrees[j].betti : 0; }
  /// Betti numbers with trailing zero degrees trimmed.
  std::vector<std::size_t> betti_numbers() const;
  /// No homology in any degree (including -1) and no torsion.
  bool vanishes() const;
  /// Equality after trimming trailing zero degrees.
  friend bool operator==(const HomologyResult& a, const HomologyResult& b);
};

/// Roos cochain complex: C^j is the sum over j-chains σ of the stalk at
/// max σ. For τ = (t_0 < ... < t_{j+1}) the component of dφ at τ is
/// Σ_i (-1)^i φ(τ \ t_i), where the i = j+1 term is pushed through the
/// restriction t_j → t_{j+1}. With `max_degree`, cochains are built up to
/// degree max_degree + 1 only.
CochainComplex roos_complex(const SheavedSpace& sp,
                            std::optional<std::size_t> max_degree = {});

/// Betti numbers over the complex's field: dim C^j - rank d_j - rank d_{j-1}.
/// Also serves for chain-graded complexes (same formula).
HomologyResult field_cohomology(const CochainComplex& c);

/// Unreduced sheaf cohomology through the Roos complex.
HomologyResult sheaf_cohomology(const SheavedSpace& sp,
                                std::optional<std::size_t> max_degree = {});

/// Simplicial chain complex (chain grading) with the alternating-sign
/// boundary over the poset-ordered vertex sequence of each chain.
CochainComplex simplicial_chain_complex(const OrderComplex& k, Coefficients coeffs);

HomologyResult integral_homology(const OrderComplex& k);
/// Reduced homology with augmentation in degree 0; the empty complex has
/// minus_one_rank = 1.
HomologyResult integral_reduced_homology(const OrderComplex& k);
/// Nonempty with vanishing reduced integral homology.
bool is_acyclic(const OrderComplex& k);

}  // namespace sheafcore
