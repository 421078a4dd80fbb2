#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sheafcore/matrix.hpp"
#include "sheafcore/poset.hpp"

namespace sheafcore {

/// A sheaf on (the Alexandrov space of) a finite poset, given as a diagram:
/// a stalk dimension per element and a matrix per cover (lower, upper) of
/// shape stalk(upper) × stalk(lower).
class Sheaf {
 public:
  Sheaf() = default;
  /// `cover_maps` is aligned with base.covers(). Shapes are validated
  /// (DimensionMismatch); commutativity is not, see check_commutativity.
  Sheaf(Poset base, Coefficients coeffs, std::vector<std::size_t> stalk_dims,
        std::vector<Matrix> cover_maps);

  const Poset& base() const noexcept { return base_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }
  std::size_t stalk_dim(Poset::Index i) const { return dims_.at(i); }
  const std::vector<std::size_t>& stalk_dims() const noexcept { return dims_; }
  const std::vector<Matrix>& cover_maps() const noexcept { return maps_; }
  /// Map on the cover (lower, upper); throws StructureError if not a cover.
  const Matrix& cover_map(Poset::Index lower, Poset::Index upper) const;

  /// Restriction map stalk(lower) → stalk(upper) for lower ≤ upper, composed
  /// along the canonical cover path: the last step always goes through the
  /// smallest-index lower cover of `upper` lying above `lower`.
  Matrix composite(Poset::Index lower, Poset::Index upper) const;

  /// Every stalk has dimension `rank` and every map is the identity.
  bool is_constant() const;

  friend bool operator==(const Sheaf& a, const Sheaf& b);

 private:
  Poset base_;
  Coefficients coeffs_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> maps_;
};

/// Poset together with a sheaf on it. The poset is the sheaf's base.
class SheavedSpace {
 public:
  SheavedSpace() = default;
  explicit SheavedSpace(Sheaf sheaf) : sheaf_(std::move(sheaf)) {}

  const Poset& poset() const noexcept { return sheaf_.base(); }
  const Sheaf& sheaf() const noexcept { return sheaf_; }
  std::size_t size() const noexcept { return poset().size(); }

  friend bool operator==(const SheavedSpace& a, const SheavedSpace& b) = default;

 private:
  Sheaf sheaf_;
};

/// Result of check_commutativity. On failure names the first comparable
/// pair whose composites disagree, with two of the differing composites.
struct CommutativityReport {
  bool commutative = true;
  std::string lower, upper;
  std::optional<Matrix> first, second;
  explicit operator bool() const noexcept { return commutative; }
};

CommutativityReport check_commutativity(const Sheaf& f);

Sheaf constant_sheaf(const Poset& p, Coefficients coeffs, std::size_t rank);
/// Rank w on {t ≤ s}, identities inside, zero elsewhere.
Sheaf ceil_sheaf(const Poset& p, Coefficients coeffs, const std::string& s, std::size_t w);
/// Rank w on {t < s}.
Sheaf strict_down_sheaf(const Poset& p, Coefficients coeffs, const std::string& s,
                        std::size_t w);
/// Rank w at s alone.
Sheaf skyscraper_sheaf(const Poset& p, Coefficients coeffs, const std::string& s,
                       std::size_t w);
/// Rank w on a lower order ideal. Throws PreconditionError if `ideal` is
/// not downward closed.
Sheaf ideal_sheaf(const Poset& p, Coefficients coeffs, const std::set<std::string>& ideal,
                  std::size_t w);
/// Rank w on an arbitrary support with identity maps inside it. The caller
/// is responsible for commutativity (true for ideals, principal up/down
/// sets and singletons).
Sheaf support_sheaf(const Poset& p, Coefficients coeffs, const std::vector<char>& support,
                    std::size_t w);

/// Induced subposet on `keep` with the restricted sheaf; each induced cover
/// carries the composite along a cover path of the original poset.
SheavedSpace restrict(const SheavedSpace& sp, const std::set<std::string>& keep);
SheavedSpace restrict(const SheavedSpace& sp, const std::vector<Poset::Index>& keep);

/// Pullback of g along the monotone map f: S → T given element-wise by name.
/// Throws PreconditionError if f is not order preserving or not total.
Sheaf pullback(const Poset& source, const std::map<std::string, std::string>& f,
               const Sheaf& g);

/// Compatible families of stalk vectors.
struct SectionSpace {
  std::size_t ambient_dim = 0;
  /// offsets[i] is where element i's stalk starts inside the ambient space.
  std::vector<std::size_t> offsets;
  /// ambient_dim × dimension; columns are the basis sections.
  Matrix basis;
  std::size_t dimension() const noexcept { return basis.cols(); }
};

SectionSpace global_sections(const SheavedSpace& sp);

}  // namespace sheafcore
