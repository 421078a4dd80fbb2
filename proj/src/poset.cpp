#include "sheafcore/poset.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "sheafcore/error.hpp"

namespace sheafcore {

CycleError::CycleError(std::vector<std::string> cycle)
    : StructureError([&] {
        std::string msg = "cover relation has a cycle: ";
        for (std::size_t i = 0; i < cycle.size(); ++i) msg += (i ? " -> " : "") + cycle[i];
        return msg;
      }()),
      cycle_(std::move(cycle)) {}

namespace {

// Returns a directed cycle (closed: first == last) if the graph has one.
std::vector<Poset::Index> find_cycle(const std::vector<std::vector<Poset::Index>>& succ) {
  const std::size_t n = succ.size();
  std::vector<char> color(n, 0);
  std::vector<Poset::Index> stack;
  std::vector<Poset::Index> cycle;
  std::function<bool(Poset::Index)> dfs = [&](Poset::Index v) {
    color[v] = 1;
    stack.push_back(v);
    for (auto w : succ[v]) {
      if (color[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        cycle.push_back(w);
        return true;
      }
      if (color[w] == 0 && dfs(w)) return true;
    }
    stack.pop_back();
    color[v] = 2;
    return false;
  };
  for (Poset::Index v = 0; v < n; ++v)
    if (color[v] == 0 && dfs(v)) return cycle;
  return {};
}

}  // namespace

Poset Poset::build(std::vector<std::string> elements,
                   const std::vector<std::pair<std::string, std::string>>& covers) {
  Poset p;
  p.names_ = std::move(elements);
  for (Index i = 0; i < p.names_.size(); ++i)
    if (!p.index_.emplace(p.names_[i], i).second)
      throw StructureError("duplicate element '" + p.names_[i] + "'");

  std::set<Cover> seen;
  std::vector<std::vector<Index>> succ(p.names_.size());
  for (const auto& [lo, hi] : covers) {
    Index a = p.index_of(lo), b = p.index_of(hi);
    if (!seen.insert({a, b}).second) throw StructureError("duplicate cover " + lo + "->" + hi);
    succ[a].push_back(b);
  }
  if (auto cyc = find_cycle(succ); !cyc.empty()) {
    std::vector<std::string> names;
    for (auto i : cyc) names.push_back(p.names_[i]);
    throw CycleError(std::move(names));
  }
  p.covers_.assign(seen.begin(), seen.end());
  p.finalize();
  for (const auto& [a, b] : p.covers_)
    for (auto w : p.upper_[a])
      if (w != b && p.less(w, b)) throw RedundantCover(p.names_[a], p.names_[b]);
  return p;
}

void Poset::finalize() {
  const std::size_t n = names_.size();
  if (index_.empty())
    for (Index i = 0; i < n; ++i) index_.emplace(names_[i], i);
  std::sort(covers_.begin(), covers_.end());
  lower_.assign(n, {});
  upper_.assign(n, {});
  for (const auto& [a, b] : covers_) {
    upper_[a].push_back(b);
    lower_[b].push_back(a);
  }
  for (auto& v : lower_) std::sort(v.begin(), v.end());
  for (auto& v : upper_) std::sort(v.begin(), v.end());

  // Kahn's algorithm, smallest index first among ready elements.
  std::vector<std::size_t> indeg(n);
  std::set<Index> ready;
  for (Index i = 0; i < n; ++i) {
    indeg[i] = lower_[i].size();
    if (indeg[i] == 0) ready.insert(i);
  }
  order_.clear();
  while (!ready.empty()) {
    Index v = *ready.begin();
    ready.erase(ready.begin());
    order_.push_back(v);
    for (auto w : upper_[v])
      if (--indeg[w] == 0) ready.insert(w);
  }

  less_.assign(n * n, 0);
  level_.assign(n, 0);
  for (auto b : order_)
    for (auto l : lower_[b]) {
      level_[b] = std::max(level_[b], level_[l] + 1);
      less_[l * n + b] = 1;
      for (Index a = 0; a < n; ++a)
        if (less_[a * n + l]) less_[a * n + b] = 1;
    }
}

std::optional<Poset::Index> Poset::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Poset::Index Poset::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw UnknownElement(name);
  return *i;
}

std::optional<std::size_t> Poset::cover_index(Index lower, Index upper) const {
  auto it = std::lower_bound(covers_.begin(), covers_.end(), Cover{lower, upper});
  if (it == covers_.end() || *it != Cover{lower, upper}) return std::nullopt;
  return static_cast<std::size_t>(it - covers_.begin());
}

std::size_t Poset::height() const noexcept {
  std::size_t h = 0;
  for (auto l : level_) h = std::max(h, l);
  return h;
}

Poset Poset::induced(const std::vector<Index>& keep) const {
  std::vector<Index> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Index> new_index(names_.size(), static_cast<Index>(-1));
  Poset p;
  for (auto i : sorted) {
    new_index[i] = static_cast<Index>(p.names_.size());
    p.names_.push_back(names_[i]);
  }
  // For each a, the kept elements above it in order of level; b is a cover
  // unless some cover found earlier lies below it.
  for (auto a : sorted) {
    std::vector<Index> above;
    for (auto b : sorted)
      if (less(a, b)) above.push_back(b);
    std::stable_sort(above.begin(), above.end(),
                     [&](Index x, Index y) { return level_[x] < level_[y]; });
    std::vector<Index> found;
    for (auto b : above) {
      bool dominated = std::any_of(found.begin(), found.end(), [&](Index c) { return less(c, b); });
      if (!dominated) {
        found.push_back(b);
        p.covers_.emplace_back(new_index[a], new_index[b]);
      }
    }
  }
  p.finalize();
  return p;
}

bool operator==(const Poset& a, const Poset& b) {
  return a.names_ == b.names_ && a.covers_ == b.covers_;
}

Poset build_poset(std::vector<std::string> elements,
                  const std::vector<std::pair<std::string, std::string>>& covers) {
  return Poset::build(std::move(elements), covers);
}

bool leq(const Poset& p, const std::string& u, const std::string& v) {
  return p.leq(p.index_of(u), p.index_of(v));
}

Poset downset(const Poset& p, const std::string& s) {
  const auto si = p.index_of(s);
  std::vector<Poset::Index> keep;
  for (Poset::Index i = 0; i < p.size(); ++i)
    if (p.less(i, si)) keep.push_back(i);
  return p.induced(keep);
}

Poset upset(const Poset& p, const std::string& s) {
  const auto si = p.index_of(s);
  std::vector<Poset::Index> keep;
  for (Poset::Index i = 0; i < p.size(); ++i)
    if (p.less(si, i)) keep.push_back(i);
  return p.induced(keep);
}

bool is_downbeat(const Poset& p, const std::string& s) {
  return p.lower_covers(p.index_of(s)).size() == 1;
}

bool is_upbeat_poset(const Poset& p, const std::string& s) {
  return p.upper_covers(p.index_of(s)).size() == 1;
}

bool is_downbeat_by_order(const Poset& p, Poset::Index s) {
  for (Poset::Index a = 0; a < p.size(); ++a) {
    if (!p.less(a, s)) continue;
    bool dominates = true;
    for (Poset::Index b = 0; b < p.size() && dominates; ++b)
      if (p.less(b, s) && !p.leq(b, a)) dominates = false;
    if (dominates) return true;
  }
  return false;
}

bool is_upbeat_by_order(const Poset& p, Poset::Index s) {
  for (Poset::Index a = 0; a < p.size(); ++a) {
    if (!p.less(s, a)) continue;
    bool dominated = true;
    for (Poset::Index b = 0; b < p.size() && dominated; ++b)
      if (p.less(s, b) && !p.leq(a, b)) dominated = false;
    if (dominated) return true;
  }
  return false;
}

OrderComplex order_complex(const Poset& p, std::optional<std::size_t> max_dim) {
  OrderComplex k;
  k.vertices = p.names();
  if (p.empty()) return k;
  std::vector<std::vector<Poset::Index>> above(p.size());
  for (auto a : p.linear_extension())
    for (Poset::Index b = 0; b < p.size(); ++b)
      if (p.less(a, b)) above[a].push_back(b);

  k.simplices.emplace_back();
  for (Poset::Index i = 0; i < p.size(); ++i) k.simplices[0].push_back({i});
  while (!max_dim || k.simplices.size() <= *max_dim) {
    std::vector<std::vector<Poset::Index>> next;
    for (const auto& chain : k.simplices.back())
      for (auto b : above[chain.back()]) {
        next.push_back(chain);
        next.back().push_back(b);
      }
    if (next.empty()) break;
    k.simplices.push_back(std::move(next));
  }
  return k;
}

Poset remove_element(const Poset& p, const std::string& s) {
  const auto si = p.index_of(s);
  std::vector<Poset::Index> keep;
  for (Poset::Index i = 0; i < p.size(); ++i)
    if (i != si) keep.push_back(i);
  return p.induced(keep);
}

std::optional<std::map<std::string, std::string>> posets_isomorphic(const Poset& p,
                                                                    const Poset& q) {
  if (p.size() > kIsomorphismLimit || q.size() > kIsomorphismLimit)
    throw CapacityError("isomorphism search is limited to " + std::to_string(kIsomorphismLimit) +
                        " elements");
  if (p.size() != q.size() || p.covers().size() != q.covers().size()) return std::nullopt;
  const std::size_t n = p.size();

  using Signature = std::tuple<std::size_t, std::size_t, std::size_t>;
  auto signature = [](const Poset& x, Poset::Index i) {
    return Signature{x.lower_covers(i).size(), x.upper_covers(i).size(), x.level(i)};
  };
  auto cover_matrix = [n](const Poset& x) {
    std::vector<char> m(n * n, 0);
    for (const auto& [a, b] : x.covers()) m[a * n + b] = 1;
    return m;
  };
  const auto pc = cover_matrix(p), qc = cover_matrix(q);

  std::multiset<Signature> ps, qs;
  for (Poset::Index i = 0; i < n; ++i) {
    ps.insert(signature(p, i));
    qs.insert(signature(q, i));
  }
  if (ps != qs) return std::nullopt;

  const auto& order = p.linear_extension();
  std::vector<Poset::Index> image(n), placed;
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == n) return true;
    const auto x = order[depth];
    const auto sig = signature(p, x);
    for (Poset::Index y = 0; y < n; ++y) {
      if (used[y] || signature(q, y) != sig) continue;
      bool ok = true;
      for (auto z : placed) {
        if (pc[z * n + x] != qc[image[z] * n + y] || pc[x * n + z] != qc[y * n + image[z]]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[y] = 1;
      image[x] = y;
      placed.push_back(x);
      if (extend(depth + 1)) return true;
      placed.pop_back();
      used[y] = 0;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  std::map<std::string, std::string> out;
  for (Poset::Index i = 0; i < n; ++i) out.emplace(p.name(i), q.name(image[i]));
  return out;
}

}  // namespace sheafcore
