#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"
#include "sheafcore/cohomology.hpp"
#include "sheafcore/error.hpp"
#include "sheafcore/random.hpp"
#include "sheafcore/simplify.hpp"

using namespace sheafcore;

namespace {

const Coefficients Q = Coefficients::rationals();

std::set<std::pair<std::string, BeatKind>> beat_set(const SheavedSpace& sp) {
  std::set<std::pair<std::string, BeatKind>> out;
  for (const auto& b : find_beats(sp)) out.insert({b.element, b.kind});
  return out;
}

SheavedSpace chain_with(const Matrix& m) {
  return SheavedSpace(Sheaf(fixtures::chain(2), Q, {m.cols(), m.rows()}, {m}));
}

std::set<std::string> all_but(const SheavedSpace& sp, const std::string& s) {
  std::set<std::string> keep(sp.poset().names().begin(), sp.poset().names().end());
  keep.erase(s);
  return keep;
}

}  // namespace

TEST_CASE("beat detection", "[simplify]") {
  const auto id = beat_set(chain_with(Matrix::from_rows(Q, {{1}})));
  CHECK(id == std::set<std::pair<std::string, BeatKind>>{{"a", BeatKind::upbeat},
                                                         {"b", BeatKind::downbeat}});
  CHECK(beat_set(chain_with(Matrix::from_rows(Q, {{0}}))) ==
        std::set<std::pair<std::string, BeatKind>>{{"b", BeatKind::downbeat}});
  // Full rank but not square: never an upbeat.
  CHECK(beat_set(chain_with(Matrix::from_rows(Q, {{1, 0}}))) ==
        std::set<std::pair<std::string, BeatKind>>{{"b", BeatKind::downbeat}});
  CHECK(find_beats(SheavedSpace(constant_sheaf(fixtures::circle(), Q, 2))).empty());

  const auto reports = find_beats(chain_with(Matrix::from_rows(Q, {{3}})));
  for (const auto& r : reports) {
    CHECK(r.witness == (r.element == "a" ? "b" : "a"));
    CHECK(r.map_invertible);
  }
}

TEST_CASE("beat collapse", "[simplify]") {
  const SheavedSpace c = chain_with(Matrix::from_rows(Q, {{2, 1}, {1, 1}}));
  const SheavedSpace a = collapse_beat(c, "b");
  CHECK(a.poset().names() == std::vector<std::string>{"a"});
  CHECK(a.sheaf().stalk_dim(0) == 2);

  const Poset avb = build_poset({"a", "v", "b"}, {{"a", "v"}, {"v", "b"}});
  const Matrix m1 = Matrix::from_rows(Q, {{1, 0, 2}, {0, 1, 1}});
  const Matrix m2 = Matrix::from_rows(Q, {{0, 1}, {1, 1}});
  const SheavedSpace sp(Sheaf(avb, Q, {3, 2, 2}, {m1, m2}));
  const SheavedSpace ab = collapse_beat(sp, "v");
  REQUIRE(ab.poset().covers().size() == 1);
  CHECK(ab.sheaf().cover_maps().front() == m2 * m1);
  CHECK(check_commutativity(ab.sheaf()));

  CHECK_THROWS_AS(collapse_beat(SheavedSpace(constant_sheaf(fixtures::circle(), Q, 1)), "a"),
                  PreconditionError);
}

TEST_CASE("beat collapses preserve cohomology", "[simplify][property]") {
  Rng rng(41);
  for (int t = 0; t < 80; ++t) {
    const SheavedSpace sp = random_space(rng, 4, 9, t % 2 ? Q : Coefficients::prime_field(7), 3);
    const auto before = sheaf_cohomology(sp);
    for (const auto& b : find_beats(sp)) {
      const SheavedSpace after = collapse_beat(sp, b.element);
      CHECK(check_commutativity(after.sheaf()));
      CHECK(sheaf_cohomology(after) == before);
    }
  }
}

TEST_CASE("cores", "[simplify]") {
  const SheavedSpace c5(constant_sheaf(fixtures::chain(5), Q, 1));
  const auto [core5, trace5] = core(c5);
  CHECK(core5.size() == 1);
  CHECK(trace5.steps.size() == 4);

  const SheavedSpace circ(constant_sheaf(fixtures::circle(), Q, 1));
  const auto [same, empty] = core(circ);
  CHECK(same == circ);
  CHECK(empty.steps.empty());

  Rng rng(42);
  for (int t = 0; t < 40; ++t) {
    const SheavedSpace sp = random_space(rng, 3, 10, Q, 2);
    const auto [k, trace] = core(sp, RemovalOrder{static_cast<std::uint64_t>(t)});
    CHECK(find_beats(k).empty());
    CHECK(sheaf_cohomology(k) == sheaf_cohomology(sp));
    CHECK_NOTHROW(verify_trace(trace));
  }
}

TEST_CASE("deterministic order removes the smallest eligible name", "[simplify]") {
  const SheavedSpace c3(constant_sheaf(fixtures::chain(3), Q, 1));
  const auto [k, trace] = core(c3);
  REQUIRE(trace.steps.size() == 2);
  CHECK(trace.steps[0] == SimplificationStep{"a", RemovalRule::upbeat});
  CHECK(trace.steps[1] == SimplificationStep{"b", RemovalRule::upbeat});
  CHECK(k.poset().names() == std::vector<std::string>{"c"});
}

TEST_CASE("acyclic-downset removal", "[simplify]") {
  const SheavedSpace p5(constant_sheaf(fixtures::p5_apex(), Q, 1));
  CHECK(p5.poset().lower_covers(p5.poset().index_of("s")).size() == 2);
  CHECK(removable_by_acyclic_downset(p5, "s"));
  CHECK(remove_acyclic_downset(p5, "s") == restrict(p5, all_but(p5, "s")));

  const SheavedSpace circ(constant_sheaf(fixtures::circle_apex(), Q, 1));
  CHECK_FALSE(removable_by_acyclic_downset(circ, "s"));
  CHECK_THROWS_AS(remove_acyclic_downset(circ, "s"), PreconditionError);
  // Minimal elements have an empty downset, which does not count as acyclic.
  CHECK_FALSE(removable_by_acyclic_downset(circ, "a"));
}

TEST_CASE("downbeats have acyclic downsets", "[simplify][property]") {
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const SheavedSpace sp = random_space(rng, 2, 10, Q, 2);
    for (const auto& b : find_beats(sp)) {
      if (b.kind != BeatKind::downbeat) continue;
      CHECK(removable_by_acyclic_downset(sp, b.element));
      CHECK(remove_acyclic_downset(sp, b.element) == collapse_beat(sp, b.element));
    }
  }
}

TEST_CASE("constant up/down removal predicate", "[simplify]") {
  CHECK(removable_by_acyclic_upset_constant(fixtures::p5_apex(), "s"));
  const Poset below_cone = build_poset({"m", "x", "y", "top"},
                                       {{"m", "x"}, {"m", "y"}, {"x", "top"}, {"y", "top"}});
  CHECK(removable_by_acyclic_upset_constant(below_cone, "m"));
  for (const auto& s : {"a", "b", "x", "y"})
    CHECK_FALSE(removable_by_acyclic_upset_constant(fixtures::circle(), s));
}

TEST_CASE("pipelines", "[simplify]") {
  Rng rng(44);
  for (int t = 0; t < 30; ++t) {
    const SheavedSpace sp = random_space(rng, 3, 9, Q, 2);
    const auto a = simplify_pipeline(sp, Strategy::beats_only, {});
    const auto b = core(sp);
    CHECK(a.first == b.first);
    CHECK(a.second.steps == b.second.steps);
  }
  const SheavedSpace c4(constant_sheaf(fixtures::chain(4), Q, 1));
  CHECK(simplify_pipeline(c4, Strategy::constant_updown).first.size() == 1);

  Rng r2(45);
  SheavedSpace varied;
  do {
    varied = random_space(r2, 3, 6, Q, 2);
  } while (varied.sheaf().is_constant());
  CHECK_THROWS_AS(simplify_pipeline(varied, Strategy::constant_updown), PreconditionError);

  const SheavedSpace p5(constant_sheaf(fixtures::p5_apex(), Q, 1));
  const auto [out, trace] = simplify_pipeline(p5, Strategy::beats_acyclic_down);
  CHECK(sheaf_cohomology(out) == sheaf_cohomology(p5));
  CHECK(find_beats(out).empty());
}

TEST_CASE("trace verification rejects tampering", "[simplify]") {
  const SheavedSpace p5(constant_sheaf(fixtures::p5_apex(), Q, 1));
  SimplificationTrace trace;
  trace.initial = p5;
  trace.steps = {{"s", RemovalRule::acyclic_downset}};
  trace.final_space = remove_acyclic_downset(p5, "s");
  CHECK_NOTHROW(verify_trace(trace));

  auto wrong_rule = trace;
  wrong_rule.steps[0].rule = RemovalRule::downbeat;
  CHECK_THROWS_AS(verify_trace(wrong_rule), PreconditionError);

  auto wrong_final = trace;
  wrong_final.final_space = p5;
  CHECK_THROWS_AS(verify_trace(wrong_final), PreconditionError);

  auto unknown = trace;
  unknown.steps[0].removed = "zz";
  CHECK_THROWS_AS(verify_trace(unknown), PreconditionError);

  // acyclic-upset is only licensed for constant sheaves.
  Rng rng(46);
  const SheavedSpace varied(random_sheaf(rng, fixtures::p5_apex(), Q, 2));
  SimplificationTrace up;
  up.initial = varied;
  up.steps = {{"a", RemovalRule::acyclic_upset}};
  up.final_space = restrict(varied, all_but(varied, "a"));
  if (!varied.sheaf().is_constant()) CHECK_THROWS_AS(verify_trace(up), PreconditionError);
}

TEST_CASE("every pipeline step preserves cohomology", "[simplify][property]") {
  Rng rng(47);
  for (int t = 0; t < 60; ++t) {
    const bool constant = t % 3 == 0;
    SheavedSpace sp = random_space(rng, 3, 9, Q, 2);
    if (constant) sp = SheavedSpace(constant_sheaf(sp.poset(), Q, 1));
    const Strategy s = constant ? Strategy::constant_updown : Strategy::beats_acyclic_down;
    const auto [out, trace] = simplify_pipeline(sp, s, RemovalOrder{static_cast<std::uint64_t>(t)});
    SheavedSpace cur = trace.initial;
    auto h = sheaf_cohomology(cur);
    for (const auto& step : trace.steps) {
      cur = restrict(cur, all_but(cur, step.removed));
      const auto next = sheaf_cohomology(cur);
      CHECK(next == h);
      h = next;
    }
    CHECK(cur == out);
  }
}

TEST_CASE("names of strategies and rules", "[simplify]") {
  for (auto s : {Strategy::beats_only, Strategy::beats_acyclic_down, Strategy::constant_updown})
    CHECK(parse_strategy(to_string(s)) == s);
  CHECK(parse_strategy("acyclic-down") == Strategy::beats_acyclic_down);
  CHECK_FALSE(parse_strategy("greedy"));
  for (auto r : {RemovalRule::downbeat, RemovalRule::upbeat, RemovalRule::acyclic_downset,
                 RemovalRule::acyclic_upset})
    CHECK(parse_rule(to_string(r)) == r);
}
