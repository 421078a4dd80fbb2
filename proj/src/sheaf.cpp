#include "sheafcore/sheaf.hpp"

#include <algorithm>

#include "sheafcore/detail/arith.hpp"
#include "sheafcore/error.hpp"
#include "sheafcore/linalg.hpp"

namespace sheafcore {

namespace {

// Lower covers of `upper` that lie above `lower`, ordered by name.
std::vector<Poset::Index> routes(const Poset& p, Poset::Index lower, Poset::Index upper) {
  std::vector<Poset::Index> out;
  for (auto u : p.lower_covers(upper))
    if (p.leq(lower, u)) out.push_back(u);
  std::sort(out.begin(), out.end(),
            [&](Poset::Index a, Poset::Index b) { return p.name(a) < p.name(b); });
  return out;
}

std::string cover_label(const Poset& p, Poset::Cover c) {
  return p.name(c.first) + "->" + p.name(c.second);
}

}  // namespace

Sheaf::Sheaf(Poset base, Coefficients coeffs, std::vector<std::size_t> stalk_dims,
             std::vector<Matrix> cover_maps)
    : base_(std::move(base)),
      coeffs_(coeffs),
      dims_(std::move(stalk_dims)),
      maps_(std::move(cover_maps)) {
  if (!coeffs_.is_field()) throw KindMismatch("sheaves need field coefficients (Q or GF:p)");
  if (dims_.size() != base_.size())
    throw DimensionMismatch("expected " + std::to_string(base_.size()) + " stalk dimensions, got " +
                            std::to_string(dims_.size()));
  if (maps_.size() != base_.covers().size())
    throw DimensionMismatch("expected " + std::to_string(base_.covers().size()) +
                            " cover maps, got " + std::to_string(maps_.size()));
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    const auto [a, b] = base_.covers()[k];
    const Matrix& m = maps_[k];
    if (!(m.coefficients() == coeffs_))
      throw KindMismatch("map on " + cover_label(base_, {a, b}) + " is over " +
                         m.coefficients().tag() + ", sheaf is over " + coeffs_.tag());
    if (m.rows() != dims_[b] || m.cols() != dims_[a])
      throw DimensionMismatch("map on " + cover_label(base_, {a, b}) + " has shape " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                              ", stalks require " + std::to_string(dims_[b]) + "x" +
                              std::to_string(dims_[a]));
  }
}

const Matrix& Sheaf::cover_map(Poset::Index lower, Poset::Index upper) const {
  auto k = base_.cover_index(lower, upper);
  if (!k) throw StructureError(base_.name(lower) + "->" + base_.name(upper) + " is not a cover");
  return maps_[*k];
}

Matrix Sheaf::composite(Poset::Index lower, Poset::Index upper) const {
  if (!base_.leq(lower, upper))
    throw PreconditionError(base_.name(lower) + " is not below " + base_.name(upper));
  if (lower == upper) return Matrix::identity(coeffs_, dims_[lower]);
  const auto via = routes(base_, lower, upper).front();
  return cover_map(via, upper) * composite(lower, via);
}

bool Sheaf::is_constant() const {
  if (dims_.empty()) return true;
  const auto r = dims_.front();
  return std::all_of(dims_.begin(), dims_.end(), [&](std::size_t d) { return d == r; }) &&
         std::all_of(maps_.begin(), maps_.end(), [](const Matrix& m) { return m.is_identity(); });
}

bool operator==(const Sheaf& a, const Sheaf& b) {
  return a.base_ == b.base_ && a.coeffs_ == b.coeffs_ && a.dims_ == b.dims_ && a.maps_ == b.maps_;
}

CommutativityReport check_commutativity(const Sheaf& f) {
  const Poset& p = f.base();
  // canonical[v][w] = composite w → v along the canonical path.
  std::vector<std::map<Poset::Index, Matrix>> canonical(p.size());
  for (auto v : p.linear_extension()) {
    for (Poset::Index w = 0; w < p.size(); ++w) {
      if (!p.less(w, v)) continue;
      const auto via = routes(p, w, v);
      auto through = [&](Poset::Index u) {
        const Matrix& tail = f.cover_map(u, v);
        if (u == w) return tail;
        return tail * canonical[u].at(w);
      };
      Matrix ref = through(via.front());
      for (std::size_t k = 1; k < via.size(); ++k) {
        Matrix alt = through(via[k]);
        if (!(alt == ref)) {
          CommutativityReport report;
          report.commutative = false;
          report.lower = p.name(w);
          report.upper = p.name(v);
          report.first = std::move(ref);
          report.second = std::move(alt);
          return report;
        }
      }
      canonical[v].emplace(w, std::move(ref));
    }
  }
  return {};
}

Sheaf support_sheaf(const Poset& p, Coefficients coeffs, const std::vector<char>& support,
                    std::size_t w) {
  std::vector<std::size_t> dims(p.size());
  for (Poset::Index i = 0; i < p.size(); ++i) dims[i] = support.at(i) ? w : 0;
  std::vector<Matrix> maps;
  maps.reserve(p.covers().size());
  for (const auto& [a, b] : p.covers()) {
    if (support[a] && support[b])
      maps.push_back(Matrix::identity(coeffs, w));
    else
      maps.emplace_back(coeffs, dims[b], dims[a]);
  }
  return Sheaf(p, coeffs, std::move(dims), std::move(maps));
}

Sheaf constant_sheaf(const Poset& p, Coefficients coeffs, std::size_t rank) {
  return support_sheaf(p, coeffs, std::vector<char>(p.size(), 1), rank);
}

Sheaf ceil_sheaf(const Poset& p, Coefficients coeffs, const std::string& s, std::size_t w) {
  const auto si = p.index_of(s);
  std::vector<char> support(p.size());
  for (Poset::Index t = 0; t < p.size(); ++t) support[t] = p.leq(t, si);
  return support_sheaf(p, coeffs, support, w);
}

Sheaf strict_down_sheaf(const Poset& p, Coefficients coeffs, const std::string& s,
                        std::size_t w) {
  const auto si = p.index_of(s);
  std::vector<char> support(p.size());
  for (Poset::Index t = 0; t < p.size(); ++t) support[t] = p.less(t, si);
  return support_sheaf(p, coeffs, support, w);
}

Sheaf skyscraper_sheaf(const Poset& p, Coefficients coeffs, const std::string& s,
                       std::size_t w) {
  const auto si = p.index_of(s);
  std::vector<char> support(p.size());
  support[si] = 1;
  return support_sheaf(p, coeffs, support, w);
}

Sheaf ideal_sheaf(const Poset& p, Coefficients coeffs, const std::set<std::string>& ideal,
                  std::size_t w) {
  std::vector<char> support(p.size());
  for (const auto& name : ideal) support[p.index_of(name)] = 1;
  for (const auto& [a, b] : p.covers())
    if (support[b] && !support[a])
      throw PreconditionError("not a lower order ideal: contains " + p.name(b) + " but not " +
                              p.name(a));
  return support_sheaf(p, coeffs, support, w);
}

SheavedSpace restrict(const SheavedSpace& sp, const std::vector<Poset::Index>& keep) {
  const Poset& p = sp.poset();
  const Sheaf& f = sp.sheaf();
  std::vector<Poset::Index> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Poset sub = p.induced(sorted);
  std::vector<std::size_t> dims;
  dims.reserve(sorted.size());
  for (auto i : sorted) dims.push_back(f.stalk_dim(i));
  std::vector<Matrix> maps;
  maps.reserve(sub.covers().size());
  for (const auto& [a, b] : sub.covers()) {
    const auto oa = sorted[a], ob = sorted[b];
    if (auto k = p.cover_index(oa, ob))
      maps.push_back(f.cover_maps()[*k]);
    else
      maps.push_back(f.composite(oa, ob));
  }
  return SheavedSpace(Sheaf(std::move(sub), f.coefficients(), std::move(dims), std::move(maps)));
}

SheavedSpace restrict(const SheavedSpace& sp, const std::set<std::string>& keep) {
  std::vector<Poset::Index> idx;
  idx.reserve(keep.size());
  for (const auto& name : keep) idx.push_back(sp.poset().index_of(name));
  return restrict(sp, idx);
}

Sheaf pullback(const Poset& source, const std::map<std::string, std::string>& f,
               const Sheaf& g) {
  const Poset& target = g.base();
  std::vector<Poset::Index> image(source.size());
  for (Poset::Index i = 0; i < source.size(); ++i) {
    auto it = f.find(source.name(i));
    if (it == f.end()) throw PreconditionError("map is undefined on " + source.name(i));
    image[i] = target.index_of(it->second);
  }
  std::vector<std::size_t> dims(source.size());
  for (Poset::Index i = 0; i < source.size(); ++i) dims[i] = g.stalk_dim(image[i]);
  std::vector<Matrix> maps;
  for (const auto& [a, b] : source.covers()) {
    if (!target.leq(image[a], image[b]))
      throw PreconditionError("map is not order preserving: " + source.name(a) + " < " +
                              source.name(b) + " but " + target.name(image[a]) + " is not below " +
                              target.name(image[b]));
    maps.push_back(g.composite(image[a], image[b]));
  }
  return Sheaf(source, g.coefficients(), std::move(dims), std::move(maps));
}

SectionSpace global_sections(const SheavedSpace& sp) {
  const Poset& p = sp.poset();
  const Sheaf& f = sp.sheaf();
  SectionSpace out;
  out.offsets.resize(p.size());
  for (Poset::Index i = 0; i < p.size(); ++i) {
    out.offsets[i] = out.ambient_dim;
    out.ambient_dim += f.stalk_dim(i);
  }
  std::size_t equations = 0;
  for (const auto& [a, b] : p.covers()) equations += f.stalk_dim(b);

  // One block row per cover (a, b): res(x_a) - x_b = 0.
  SparseMatrix system(f.coefficients(), equations, out.ambient_dim);
  detail::with_field(f.coefficients(), [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    std::size_t row = 0;
    for (std::size_t k = 0; k < p.covers().size(); ++k) {
      const auto [a, b] = p.covers()[k];
      const Matrix& m = f.cover_maps()[k];
      const auto& v = m.values<T>();
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
          system.add(row + i, out.offsets[a] + j, v[i * m.cols() + j]);
        system.add(row + i, out.offsets[b] + i, arith.neg(arith.one()));
      }
      row += m.rows();
    }
  });
  out.basis = kernel_basis(system);
  return out;
}

}  // namespace sheafcore
