#include "sheafcore/cohomology.hpp"

#include <future>
#include <map>

#include "sheafcore/detail/arith.hpp"
#include "sheafcore/error.hpp"
#include "sheafcore/linalg.hpp"

namespace sheafcore {

namespace {

using Chain = std::vector<Poset::Index>;

std::map<Chain, std::size_t> chain_positions(const std::vector<Chain>& chains) {
  std::map<Chain, std::size_t> pos;
  for (std::size_t i = 0; i < chains.size(); ++i) pos.emplace(chains[i], i);
  return pos;
}

Chain drop(const Chain& c, std::size_t i) {
  Chain out;
  out.reserve(c.size() - 1);
  for (std::size_t k = 0; k < c.size(); ++k)
    if (k != i) out.push_back(c[k]);
  return out;
}

// Ranks of every differential, computed concurrently.
std::vector<std::size_t> differential_ranks(const CochainComplex& c) {
  std::vector<std::future<std::size_t>> jobs;
  for (const auto& d : c.differentials)
    jobs.push_back(std::async(std::launch::async, [&d] {
      return d.rows() <= d.cols() ? rank(d) : rank(d.transpose());
    }));
  std::vector<std::size_t> ranks;
  for (auto& j : jobs) ranks.push_back(j.get());
  return ranks;
}

HomologyResult integral(const OrderComplex& k, bool reduced) {
  CochainComplex c = simplicial_chain_complex(k, Coefficients::integers());
  std::vector<SmithForm> snf;
  for (const auto& d : c.differentials) snf.push_back(smith_normal_form(d));
  HomologyResult out;
  out.reduced = reduced;
  const std::size_t top = c.dims.size();
  for (std::size_t j = 0; j < top; ++j) {
    std::size_t in = j < snf.size() ? snf[j].rank() : 0;
    std::size_t outgoing = j > 0 ? snf[j - 1].rank() : (reduced && c.dims[0] > 0 ? 1 : 0);
    DegreeGroup g;
    g.betti = c.dims[j] - in - outgoing;
    if (j < snf.size()) g.torsion = snf[j].torsion();
    out.degrees.push_back(std::move(g));
  }
  if (reduced && k.empty()) out.minus_one_rank = 1;
  return out;
}

}  // namespace

std::vector<std::size_t> HomologyResult::betti_numbers() const {
  std::vector<std::size_t> b;
  for (const auto& g : degrees) b.push_back(g.betti);
  while (!b.empty() && b.back() == 0) b.pop_back();
  return b;
}

bool HomologyResult::vanishes() const {
  if (minus_one_rank != 0) return false;
  for (const auto& g : degrees)
    if (g.betti != 0 || !g.torsion.empty()) return false;
  return true;
}

bool operator==(const HomologyResult& a, const HomologyResult& b) {
  auto trimmed = [](const HomologyResult& r) {
    auto d = r.degrees;
    while (!d.empty() && d.back().betti == 0 && d.back().torsion.empty()) d.pop_back();
    return d;
  };
  return a.reduced == b.reduced && a.minus_one_rank == b.minus_one_rank &&
         trimmed(a) == trimmed(b);
}

void verify_square_zero(const CochainComplex& c) {
  for (std::size_t j = 0; j + 1 < c.differentials.size(); ++j) {
    const auto& lo = c.differentials[j];
    const auto& hi = c.differentials[j + 1];
    SparseMatrix prod =
        c.grading == Grading::cochain ? multiply(hi, lo) : multiply(lo, hi);
    if (!prod.is_zero())
      throw IntegrityError("differentials " + std::to_string(j) + " and " +
                           std::to_string(j + 1) + " do not compose to zero");
  }
}

CochainComplex roos_complex(const SheavedSpace& sp, std::optional<std::size_t> max_degree) {
  const Poset& p = sp.poset();
  const Sheaf& f = sp.sheaf();
  std::optional<std::size_t> max_dim;
  if (max_degree) max_dim = *max_degree + 1;
  const OrderComplex k = order_complex(p, max_dim);

  CochainComplex c;
  c.coefficients = f.coefficients();
  c.grading = Grading::cochain;
  std::vector<std::vector<std::size_t>> offsets(k.simplices.size());
  for (std::size_t j = 0; j < k.simplices.size(); ++j) {
    std::size_t dim = 0;
    std::vector<BasisLabel> labels;
    for (const auto& chain : k.simplices[j]) {
      offsets[j].push_back(dim);
      const std::size_t w = f.stalk_dim(chain.back());
      for (std::size_t t = 0; t < w; ++t) labels.push_back({chain, t});
      dim += w;
    }
    c.dims.push_back(dim);
    c.labels.push_back(std::move(labels));
  }

  std::map<std::pair<Poset::Index, Poset::Index>, Matrix> restriction;
  auto restriction_of = [&](Poset::Index a, Poset::Index b) -> const Matrix& {
    auto it = restriction.find({a, b});
    if (it == restriction.end()) it = restriction.emplace(std::pair{a, b}, f.composite(a, b)).first;
    return it->second;
  };

  detail::with_field(f.coefficients(), [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    for (std::size_t j = 0; j + 1 < k.simplices.size(); ++j) {
      const auto faces = chain_positions(k.simplices[j]);
      SparseMatrix d(f.coefficients(), c.dims[j + 1], c.dims[j]);
      const auto& upper = k.simplices[j + 1];
      for (std::size_t t = 0; t < upper.size(); ++t) {
        const Chain& tau = upper[t];
        const std::size_t row0 = offsets[j + 1][t];
        const std::size_t top = tau.size() - 1;
        for (std::size_t i = 0; i <= top; ++i) {
          const std::size_t col0 = offsets[j][faces.at(drop(tau, i))];
          const bool negative = i % 2 == 1;
          if (i < top) {
            const std::size_t w = f.stalk_dim(tau.back());
            for (std::size_t x = 0; x < w; ++x)
              d.add(row0 + x, col0 + x, negative ? arith.neg(arith.one()) : arith.one());
          } else {
            const Matrix& m = restriction_of(tau[top - 1], tau[top]);
            const auto& v = m.template values<T>();
            for (std::size_t r = 0; r < m.rows(); ++r)
              for (std::size_t s = 0; s < m.cols(); ++s) {
                const T& x = v[r * m.cols() + s];
                if (!arith.is_zero(x)) d.add(row0 + r, col0 + s, negative ? arith.neg(x) : x);
              }
          }
        }
      }
      c.differentials.push_back(std::move(d));
    }
  });
  return c;
}

HomologyResult field_cohomology(const CochainComplex& c) {
  if (!c.coefficients.is_field())
    throw KindMismatch("field cohomology needs Q or GF:p, got " + c.coefficients.tag());
  verify_square_zero(c);
  const auto ranks = differential_ranks(c);
  HomologyResult out;
  for (std::size_t j = 0; j < c.dims.size(); ++j) {
    const std::size_t a = j < ranks.size() ? ranks[j] : 0;
    const std::size_t b = j > 0 ? ranks[j - 1] : 0;
    out.degrees.push_back({c.dims[j] - a - b, {}});
  }
  return out;
}

HomologyResult sheaf_cohomology(const SheavedSpace& sp, std::optional<std::size_t> max_degree) {
  HomologyResult r = field_cohomology(roos_complex(sp, max_degree));
  if (max_degree && r.degrees.size() > *max_degree + 1) r.degrees.resize(*max_degree + 1);
  return r;
}

CochainComplex simplicial_chain_complex(const OrderComplex& k, Coefficients coeffs) {
  CochainComplex c;
  c.coefficients = coeffs;
  c.grading = Grading::chain;
  for (const auto& level : k.simplices) {
    c.dims.push_back(level.size());
    std::vector<BasisLabel> labels;
    for (const auto& chain : level) labels.push_back({chain, 0});
    c.labels.push_back(std::move(labels));
  }
  for (std::size_t j = 0; j + 1 < k.simplices.size(); ++j) {
    const auto faces = chain_positions(k.simplices[j]);
    SparseMatrix d(coeffs, k.simplices[j].size(), k.simplices[j + 1].size());
    for (std::size_t col = 0; col < k.simplices[j + 1].size(); ++col) {
      const Chain& tau = k.simplices[j + 1][col];
      for (std::size_t i = 0; i < tau.size(); ++i)
        d.add(faces.at(drop(tau, i)), col, i % 2 == 0 ? 1L : -1L);
    }
    c.differentials.push_back(std::move(d));
  }
  return c;
}

HomologyResult integral_homology(const OrderComplex& k) { return integral(k, false); }

HomologyResult integral_reduced_homology(const OrderComplex& k) { return integral(k, true); }

bool is_acyclic(const OrderComplex& k) {
  return !k.empty() && integral_reduced_homology(k).vanishes();
}

}  // namespace sheafcore
