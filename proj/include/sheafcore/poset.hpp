#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sheafcore {

/// Finite poset stored as its Hasse diagram. Elements are identified by
/// name; indices are an internal detail that is stable for a given value
/// but changes across removals.
class Poset {
 public:
  using Index = std::uint32_t;
  using Cover = std::pair<Index, Index>;

  Poset() = default;

  /// Validates and builds. Throws UnknownElement, CycleError,
  /// RedundantCover, or StructureError for duplicate names/covers.
  static Poset build(std::vector<std::string> elements,
                     const std::vector<std::pair<std::string, std::string>>& covers);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Index i) const { return names_.at(i); }
  std::optional<Index> find(const std::string& name) const;
  /// Throws UnknownElement.
  Index index_of(const std::string& name) const;

  /// Covers sorted by (lower, upper) index.
  const std::vector<Cover>& covers() const noexcept { return covers_; }
  /// Position of a cover in covers(), if (lower, upper) is one.
  std::optional<std::size_t> cover_index(Index lower, Index upper) const;
  std::span<const Index> lower_covers(Index i) const { return lower_[i]; }
  std::span<const Index> upper_covers(Index i) const { return upper_[i]; }

  bool less(Index a, Index b) const { return less_[a * names_.size() + b] != 0; }
  bool leq(Index a, Index b) const { return a == b || less(a, b); }

  /// Indices in a linear extension (every element after all its lower covers).
  const std::vector<Index>& linear_extension() const noexcept { return order_; }
  /// Number of covers in the longest chain ending at i.
  std::size_t level(Index i) const { return level_[i]; }
  /// Number of covers in the longest chain; 0 for the empty poset.
  std::size_t height() const noexcept;

  /// Induced subposet on `keep` (element order of this poset preserved).
  Poset induced(const std::vector<Index>& keep) const;

  friend bool operator==(const Poset& a, const Poset& b);

 private:
  void finalize();

  std::vector<std::string> names_;
  std::unordered_map<std::string, Index> index_;
  std::vector<Cover> covers_;
  std::vector<std::vector<Index>> lower_, upper_;
  std::vector<char> less_;
  std::vector<Index> order_;
  std::vector<std::size_t> level_;
};

/// All nonempty chains of a poset, each stored increasing in the order.
struct OrderComplex {
  std::vector<std::string> vertices;
  /// simplices[k] lists the k-dimensional chains (k + 1 elements) as
  /// indices into `vertices`.
  std::vector<std::vector<std::vector<Poset::Index>>> simplices;

  std::size_t dimension_count() const noexcept { return simplices.size(); }
  std::size_t count(std::size_t dim) const {
    return dim < simplices.size() ? simplices[dim].size() : 0;
  }
  bool empty() const noexcept { return vertices.empty(); }
};

Poset build_poset(std::vector<std::string> elements,
                  const std::vector<std::pair<std::string, std::string>>& covers);
bool leq(const Poset& p, const std::string& u, const std::string& v);
/// Elements strictly below s, with the induced order.
Poset downset(const Poset& p, const std::string& s);
/// Elements strictly above s, with the induced order.
Poset upset(const Poset& p, const std::string& s);
/// Exactly one lower cover.
bool is_downbeat(const Poset& p, const std::string& s);
/// Exactly one upper cover.
bool is_upbeat_poset(const Poset& p, const std::string& s);
/// Order-theoretic definitions, kept separate from the cover-count checks
/// so the two can be compared.
bool is_downbeat_by_order(const Poset& p, Poset::Index s);
bool is_upbeat_by_order(const Poset& p, Poset::Index s);

/// Chains up to dimension `max_dim` (all chains when absent).
OrderComplex order_complex(const Poset& p, std::optional<std::size_t> max_dim = {});
Poset remove_element(const Poset& p, const std::string& s);

/// Posets with more elements than this are rejected by posets_isomorphic.
inline constexpr std::size_t kIsomorphismLimit = 24;

/// Cover-preserving bijection p → q (by name), if one exists. Throws
/// CapacityError above kIsomorphismLimit elements.
std::optional<std::map<std::string, std::string>> posets_isomorphic(const Poset& p,
                                                                    const Poset& q);

}  // namespace sheafcore
