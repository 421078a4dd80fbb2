#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sheafcore/error.hpp"
#include "sheafcore/linalg.hpp"
#include "sheafcore/random.hpp"
#include "sheafcore/sheaf.hpp"

using namespace sheafcore;

namespace {

const Coefficients Q = Coefficients::rationals();
const Coefficients F7 = Coefficients::prime_field(7);

std::vector<std::size_t> dims_by_name(const Sheaf& f, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) out.push_back(f.stalk_dim(f.base().index_of(n)));
  return out;
}

Sheaf diamond_sheaf(long first) {
  const Poset d = fixtures::diamond();
  std::vector<Matrix> maps;
  for (const auto& [a, b] : d.covers())
    maps.push_back(Matrix::from_rows(Q, {{d.name(a) == "a" && d.name(b) == "x" ? first : 1}}));
  return Sheaf(d, Q, {1, 1, 1, 1}, maps);
}

std::size_t components(const Poset& p) {
  std::vector<std::size_t> parent(p.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [a, b] : p.covers()) parent[find(a)] = find(b);
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.size(); ++i) n += find(i) == i;
  return n;
}

}  // namespace

TEST_CASE("commutativity checks", "[sheaf]") {
  Rng rng(1);
  const Poset c = fixtures::chain(4);
  std::vector<Matrix> maps;
  for (std::size_t k = 0; k < c.covers().size(); ++k)
    maps.push_back(Matrix::from_rows(Q, {{static_cast<long>(k + 2)}}));
  CHECK(check_commutativity(Sheaf(c, Q, {1, 1, 1, 1}, maps)));
  CHECK(check_commutativity(diamond_sheaf(1)));
  const auto bad = check_commutativity(diamond_sheaf(2));
  CHECK_FALSE(bad);
  CHECK(bad.lower == "a");
  CHECK(bad.upper == "t");
  REQUIRE(bad.first);
  REQUIRE(bad.second);
  CHECK_FALSE(*bad.first == *bad.second);
}

TEST_CASE("commutativity agrees with path enumeration", "[sheaf][property]") {
  Rng rng(2);
  std::uniform_int_distribution<long> entry(-1, 1);
  for (int t = 0; t < 150; ++t) {
    const Coefficients c = t % 2 ? Q : F7;
    const Poset p = random_poset(rng, 3 + t % 6, 0.5);
    Sheaf f = random_sheaf(rng, p, c, 2);
    CHECK(oracle::all_paths_commute(f));
    CHECK(check_commutativity(f));
    if (p.covers().empty()) continue;
    // Perturb one map and compare verdicts.
    auto maps = f.cover_maps();
    Matrix& m = maps[t % maps.size()];
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t k = 0; k < m.cols(); ++k) m.set(r, k, m.at(r, k) + Scalar(c, entry(rng)));
    const Sheaf g(p, c, f.stalk_dims(), maps);
    CHECK(static_cast<bool>(check_commutativity(g)) == oracle::all_paths_commute(g));
  }
}

TEST_CASE("sheaf shapes are validated", "[sheaf]") {
  const Poset c = fixtures::chain(2);
  CHECK_THROWS_AS(Sheaf(c, Q, {1, 2}, {Matrix(Q, 1, 1)}), DimensionMismatch);
  CHECK_THROWS_AS(Sheaf(c, Q, {1}, {}), DimensionMismatch);
  CHECK_THROWS_AS(Sheaf(c, Q, {1, 1}, {Matrix(F7, 1, 1)}), KindMismatch);
  CHECK_THROWS_AS(Sheaf(c, Coefficients::integers(), {1, 1}, {Matrix::identity(Coefficients::integers(), 1)}),
                  KindMismatch);
}

TEST_CASE("constant sheaves", "[sheaf]") {
  const Poset c = fixtures::circle();
  const Sheaf one = constant_sheaf(c, Q, 1);
  for (const auto& m : one.cover_maps()) CHECK(m == Matrix::from_rows(Q, {{1}}));
  CHECK(one.is_constant());
  const Sheaf zero = constant_sheaf(c, Q, 0);
  CHECK(zero.stalk_dims() == std::vector<std::size_t>(4, 0));
  const Sheaf two = constant_sheaf(fixtures::chain(2), Q, 2);
  CHECK(two.cover_maps().front() == Matrix::identity(Q, 2));
}

TEST_CASE("special sheaves", "[sheaf]") {
  const Poset c3 = fixtures::chain(3);
  CHECK(ceil_sheaf(c3, Q, "c", 1) == constant_sheaf(c3, Q, 1));
  CHECK(dims_by_name(ceil_sheaf(c3, Q, "a", 1), {"a", "b", "c"}) == std::vector<std::size_t>{1, 0, 0});
  CHECK(dims_by_name(ceil_sheaf(fixtures::circle(), Q, "x", 1), {"a", "b", "x", "y"}) ==
        std::vector<std::size_t>{1, 1, 1, 0});

  CHECK(strict_down_sheaf(c3, Q, "a", 2).stalk_dims() == std::vector<std::size_t>(3, 0));
  CHECK(dims_by_name(strict_down_sheaf(c3, Q, "c", 1), {"a", "b", "c"}) ==
        std::vector<std::size_t>{1, 1, 0});
  const Sheaf p5 = strict_down_sheaf(fixtures::p5_apex(), Q, "s", 1);
  CHECK(dims_by_name(p5, {"a", "b", "c", "ab", "bc", "s"}) ==
        std::vector<std::size_t>{1, 1, 1, 1, 1, 0});

  const Poset single = build_poset({"p"}, {});
  CHECK(skyscraper_sheaf(single, Q, "p", 2) == constant_sheaf(single, Q, 2));
  const Poset c2 = fixtures::chain(2);
  CHECK(skyscraper_sheaf(c2, Q, "b", 1).stalk_dims() == std::vector<std::size_t>{0, 1});
  const Sheaf sa = skyscraper_sheaf(c2, Q, "a", 1);
  CHECK(sa.stalk_dims() == std::vector<std::size_t>{1, 0});
  CHECK(sa.cover_maps().front().rows() == 0);
  CHECK(sa.cover_maps().front().cols() == 1);

  const Poset circ = fixtures::circle();
  CHECK(ideal_sheaf(circ, Q, {"a", "b", "x", "y"}, 1) == constant_sheaf(circ, Q, 1));
  CHECK(ideal_sheaf(circ, Q, {}, 1) == constant_sheaf(circ, Q, 0));
  CHECK(dims_by_name(ideal_sheaf(circ, Q, {"a", "b"}, 1), {"a", "b", "x", "y"}) ==
        std::vector<std::size_t>{1, 1, 0, 0});
  CHECK_THROWS_AS(ideal_sheaf(circ, Q, {"x"}, 1), PreconditionError);
  CHECK_THROWS_AS(ceil_sheaf(circ, Q, "nope", 1), UnknownElement);
}

TEST_CASE("constructed sheaves commute", "[sheaf][property]") {
  Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    const Poset p = random_poset(rng, 2 + t % 8, 0.45);
    const std::string s = p.name(static_cast<Poset::Index>(t % p.size()));
    for (const Sheaf& f : {ceil_sheaf(p, Q, s, 2), strict_down_sheaf(p, Q, s, 2),
                           skyscraper_sheaf(p, Q, s, 2), ideal_sheaf(p, Q, random_ideal(rng, p), 2),
                           constant_sheaf(p, F7, 3)}) {
      CHECK(check_commutativity(f));
      CHECK(oracle::all_paths_commute(f));
    }
  }
}

TEST_CASE("restriction", "[sheaf]") {
  Rng rng(4);
  const SheavedSpace sp(random_sheaf(rng, fixtures::circle(), Q, 2));
  CHECK(restrict(sp, std::set<std::string>{"a", "b", "x", "y"}) == sp);

  const Poset avb = build_poset({"a", "v", "b"}, {{"a", "v"}, {"v", "b"}});
  const Matrix m1 = Matrix::from_rows(Q, {{1, 2}, {0, 1}, {3, 0}});
  const Matrix m2 = Matrix::from_rows(Q, {{1, 1, 1}});
  const SheavedSpace chain(Sheaf(avb, Q, {2, 3, 1}, {m1, m2}));
  const SheavedSpace ab = restrict(chain, std::set<std::string>{"a", "b"});
  REQUIRE(ab.poset().covers().size() == 1);
  CHECK(ab.sheaf().cover_maps().front() == m2 * m1);

  for (int t = 0; t < 20; ++t) {
    const SheavedSpace r(random_sheaf(rng, fixtures::circle(), Q, 3));
    const SheavedSpace cut = restrict(r, std::set<std::string>{"a", "b", "y"});
    CHECK(check_commutativity(cut.sheaf()));
  }
  CHECK_THROWS_AS(restrict(sp, std::set<std::string>{"zz"}), UnknownElement);
}

TEST_CASE("restriction is transitive", "[sheaf][property]") {
  Rng rng(5);
  std::bernoulli_distribution coin(0.7);
  for (int t = 0; t < 100; ++t) {
    const SheavedSpace sp = random_space(rng, 3, 9, t % 2 ? Q : F7, 2);
    std::set<std::string> a, b;
    for (const auto& n : sp.poset().names())
      if (coin(rng)) {
        a.insert(n);
        if (coin(rng)) b.insert(n);
      }
    const SheavedSpace ra = restrict(sp, a);
    CHECK(check_commutativity(ra.sheaf()));
    CHECK(restrict(ra, b) == restrict(sp, b));
  }
}

TEST_CASE("pullback", "[sheaf]") {
  Rng rng(6);
  const Poset circ = fixtures::circle();
  const Sheaf g = random_sheaf(rng, circ, Q, 2);
  std::map<std::string, std::string> id;
  for (const auto& n : circ.names()) id[n] = n;
  CHECK(pullback(circ, id, g) == g);

  const Poset c3 = fixtures::chain(3);
  std::map<std::string, std::string> to_x{{"a", "x"}, {"b", "x"}, {"c", "x"}};
  const Sheaf px = pullback(c3, to_x, g);
  const std::size_t dx = g.stalk_dim(circ.index_of("x"));
  CHECK(px == constant_sheaf(c3, Q, dx));

  const Poset point = build_poset({"p"}, {});
  const Sheaf rank2 = constant_sheaf(point, Q, 2);
  CHECK(pullback(fixtures::chain(2), {{"a", "p"}, {"b", "p"}}, rank2) ==
        constant_sheaf(fixtures::chain(2), Q, 2));

  // a < b sent to x, a: not order preserving.
  CHECK_THROWS_AS(pullback(fixtures::chain(2), {{"a", "x"}, {"b", "a"}}, g), PreconditionError);
  CHECK_THROWS_AS(pullback(fixtures::chain(2), {{"a", "x"}}, g), PreconditionError);
}

TEST_CASE("pullback along monotone maps commutes", "[sheaf][property]") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const SheavedSpace target = random_space(rng, 3, 7, Q, 2);
    // A random linear extension of the source composed with the target's
    // order: map a chain of length n monotonically by sorting random images.
    const Poset& tp = target.poset();
    const auto ext = tp.linear_extension();
    std::vector<Poset::Index> images;
    Poset::Index current = ext.front();
    images.push_back(current);
    for (int step = 0; step < 3; ++step) {
      const auto up = tp.upper_covers(current);
      if (!up.empty() && rng() % 2) current = up[rng() % up.size()];
      images.push_back(current);
    }
    const Poset src = fixtures::chain(images.size());
    std::map<std::string, std::string> f;
    for (std::size_t i = 0; i < images.size(); ++i) f[src.name(i)] = tp.name(images[i]);
    const Sheaf pb = pullback(src, f, target.sheaf());
    CHECK(check_commutativity(pb));
  }
}

TEST_CASE("global sections", "[sheaf]") {
  const Poset circ = fixtures::circle();
  CHECK(global_sections(SheavedSpace(constant_sheaf(circ, Q, 1))).dimension() == 1);
  const Poset c2 = fixtures::chain(2);
  CHECK(global_sections(SheavedSpace(skyscraper_sheaf(c2, Q, "b", 1))).dimension() == 0);
  const SheavedSpace zero_map(Sheaf(c2, Q, {1, 1}, {Matrix::from_rows(Q, {{0}})}));
  CHECK(global_sections(zero_map).dimension() == 1);
  CHECK(oracle::global_section_dim(zero_map) == 1);
}

TEST_CASE("global sections match the dense oracle and are compatible", "[sheaf][property]") {
  Rng rng(8);
  for (int t = 0; t < 120; ++t) {
    const SheavedSpace sp = random_space(rng, 1, 9, t % 2 ? Q : F7, 3);
    const SectionSpace g = global_sections(sp);
    CHECK(g.dimension() == oracle::global_section_dim(sp));
    for (std::size_t k = 0; k < g.dimension(); ++k)
      for (const auto& [a, b] : sp.poset().covers()) {
        const Matrix& m = sp.sheaf().cover_map(a, b);
        for (std::size_t r = 0; r < m.rows(); ++r) {
          Scalar lhs(sp.sheaf().coefficients(), 0);
          for (std::size_t c = 0; c < m.cols(); ++c)
            lhs = lhs + m.at(r, c) * g.basis.at(g.offsets[a] + c, k);
          CHECK(lhs == g.basis.at(g.offsets[b] + r, k));
        }
      }
    const Poset& p = sp.poset();
    CHECK(global_sections(SheavedSpace(constant_sheaf(p, Q, 2))).dimension() == 2 * components(p));
  }
}
