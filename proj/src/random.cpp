#include "sheafcore/random.hpp"

#include "sheafcore/linalg.hpp"

namespace sheafcore {

namespace {

Matrix random_matrix(Rng& rng, Coefficients coeffs, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<long> entry(-2, 2);
  Matrix m(coeffs, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, entry(rng));
  return m;
}

}  // namespace

Poset random_poset(Rng& rng, std::size_t n, double density) {
  std::bernoulli_distribution edge(density);
  std::vector<char> less(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge(rng)) less[i * n + j] = 1;
  // Transitive closure; edges only go forward so one pass in order suffices.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < k; ++i)
      if (less[i * n + k])
        for (std::size_t j = k + 1; j < n; ++j)
          if (less[k * n + j]) less[i * n + j] = 1;

  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!less[i * n + j]) continue;
      bool cover = true;
      for (std::size_t k = i + 1; k < j && cover; ++k)
        if (less[i * n + k] && less[k * n + j]) cover = false;
      if (cover) covers.emplace_back(names[i], names[j]);
    }
  return Poset::build(std::move(names), covers);
}

Sheaf random_sheaf(Rng& rng, const Poset& p, Coefficients coeffs, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim_dist(0, max_dim);
  std::vector<std::size_t> dims(p.size());
  for (auto& d : dims) d = dim_dist(rng);

  std::vector<Matrix> maps(p.covers().size());
  // composite[w][u] for w ≤ u, filled as elements are finished.
  std::vector<std::vector<std::optional<Matrix>>> composite(
      p.size(), std::vector<std::optional<Matrix>>(p.size()));

  for (auto v : p.linear_extension()) {
    composite[v][v] = Matrix::identity(coeffs, dims[v]);
    const auto lower = p.lower_covers(v);
    if (lower.empty()) continue;

    std::vector<std::size_t> offset(lower.size() + 1, 0);
    for (std::size_t i = 0; i < lower.size(); ++i) offset[i + 1] = offset[i] + dims[lower[i]];
    const std::size_t total = offset.back();

    // Columns of R: for each w below two lower covers u_i, u_j, the relation
    // ι_i C(w,u_i) - ι_j C(w,u_j). Admissible Φ satisfy Φ R = 0.
    std::vector<std::vector<Scalar>> columns;
    for (Poset::Index w = 0; w < p.size(); ++w) {
      std::optional<std::size_t> first;
      for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!p.less(w, lower[j])) continue;
        if (!first) {
          first = j;
          continue;
        }
        const Matrix& a = *composite[w][lower[*first]];
        const Matrix& b = *composite[w][lower[j]];
        for (std::size_t c = 0; c < dims[w]; ++c) {
          std::vector<Scalar> col(total, Scalar(coeffs, 0));
          for (std::size_t r = 0; r < a.rows(); ++r) col[offset[*first] + r] = a.at(r, c);
          for (std::size_t r = 0; r < b.rows(); ++r) col[offset[j] + r] = -b.at(r, c);
          columns.push_back(std::move(col));
        }
      }
    }

    Matrix basis;  // total × k, columns span the admissible row space
    if (columns.empty()) {
      basis = Matrix::identity(coeffs, total);
    } else {
      Matrix rt(coeffs, columns.size(), total);
      for (std::size_t r = 0; r < columns.size(); ++r)
        for (std::size_t c = 0; c < total; ++c) rt.set(r, c, columns[r][c]);
      basis = kernel_basis(rt);
    }
    const Matrix phi = random_matrix(rng, coeffs, dims[v], basis.cols()) * basis.transpose();

    for (std::size_t i = 0; i < lower.size(); ++i) {
      const Matrix block = phi.column_block(offset[i], dims[lower[i]]);
      maps[*p.cover_index(lower[i], v)] = block;
      for (Poset::Index w = 0; w < p.size(); ++w)
        if (p.leq(w, lower[i]) && !composite[w][v]) composite[w][v] = block * *composite[w][lower[i]];
    }
  }
  return Sheaf(p, coeffs, std::move(dims), std::move(maps));
}

SheavedSpace random_space(Rng& rng, std::size_t min_size, std::size_t max_size,
                          Coefficients coeffs, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> size_dist(min_size, max_size);
  std::uniform_real_distribution<double> density(0.2, 0.6);
  Poset p = random_poset(rng, size_dist(rng), density(rng));
  return SheavedSpace(random_sheaf(rng, p, coeffs, max_dim));
}

std::set<std::string> random_ideal(Rng& rng, const Poset& p) {
  std::bernoulli_distribution pick(0.3);
  std::set<std::string> out;
  for (Poset::Index i = 0; i < p.size(); ++i) {
    if (!pick(rng)) continue;
    for (Poset::Index w = 0; w < p.size(); ++w)
      if (p.leq(w, i)) out.insert(p.name(w));
  }
  return out;
}

}  // namespace sheafcore
