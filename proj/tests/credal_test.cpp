#include <gtest/gtest.h>

#include <random>

#include "credal/credal.hpp"
#include "credal/harness.hpp"
#include "support.hpp"

using namespace credal;
using credal::test::pt;
using credal::test::q;
using credal::test::space;

namespace {

const Space XY3 = space({{"X", 2}, {"Y", 3}});

CredalSet second_example() { return paper_example("ex3-2"); }
CredalSet third_example() { return paper_example("ex3-3"); }

Point mixture(const std::vector<Point>& verts, const std::vector<Rational>& w) {
  Point p(verts.front().size());
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t c = 0; c < p.size(); ++c) p[c] += w[i] * verts[i][c];
  return p;
}

}  // namespace

TEST(CredalSet, RequiresUnitMass) {
  EXPECT_THROW(CredalSet(space({{"X", 2}}), {pt({"1/2", "1/4"})}), ValidationError);
  EXPECT_NO_THROW(CredalSet(space({{"X", 2}}), {pt({"1/2", "1/2"})}));
}

TEST(ConditionalSetOp, Examples) {
  // Row sums of p3 are 3/10 and 7/10.
  const CredalSet p3(XY3, {pt({"0", "1/10", "1/5", "0", "3/10", "2/5"})});
  const auto c = conditional_set(p3, {"X"});
  ASSERT_EQ(c.carrier().size(), 1u);
  EXPECT_EQ(c.carrier().vertices()[0], pt({"0", "1/3", "2/3", "0", "3/7", "4/7"}));

  const CredalSet prod(XY3, {pt({"1/8", "1/4", "1/8", "1/8", "1/4", "1/8"})});
  EXPECT_EQ(conditional_set(prod, {"X"}).carrier().vertices()[0], pt({"1/4", "1/2", "1/4", "1/4", "1/2", "1/4"}));

  const CredalSet zero_slice(XY3, {pt({"0", "0", "0", "1/2", "1/4", "1/4"})});
  EXPECT_EQ(conditional_set(zero_slice, {"X"}).carrier().vertices()[0], pt({"0", "0", "0", "1/2", "1/4", "1/4"}));
  EXPECT_THROW(conditional_set(prod, {"X", "Y"}), InputError);
}

TEST(Recompose, ContainsInputAndDetectsCauses) {
  const CredalSet h = third_example();
  const FuncSet r = recompose(h, {"X"});
  EXPECT_TRUE(hull_subset(h.carrier(), r));
  // p3's Y|X table (15/71, 56/71 | 15/29, 14/29) times p1's X-marginal
  // (4/5, 1/5). Its (u1, v2) mass 224/355 exceeds 0.56, the largest in H.
  const Point outside = pt({"12/71", "224/355", "3/29", "14/145"});
  EXPECT_TRUE(in_hull(outside, r.points()));
  EXPECT_FALSE(in_hull(outside, h.carrier().points()));
  EXPECT_FALSE(is_cause(h, {"X"}));

  const FuncSet built = combine(FuncSet(space({{"X", 2}}), {pt({"1/2", "1/2"}), pt({"1/4", "3/4"})}),
                                FuncSet(space({{"X", 2}, {"Y", 2}}), {pt({"1", "0", "1/3", "2/3"})}));
  const CredalSet hb(built);
  EXPECT_TRUE(hull_equal(recompose(hb, {"X"}), hb.carrier()));
  EXPECT_TRUE(is_cause(hb, {"X"}));
  EXPECT_TRUE(is_cause(CredalSet(space({{"X", 2}, {"Y", 2}}), {pt({"1/8", "3/8", "1/8", "3/8"})}), {"X"}));
}

TEST(Recompose, AsymmetricExampleHasYAsCause) {
  // H^Y is the single distribution (3/10, 7/10) and each vertex's X|Y table
  // recombines with it to give the vertex back.
  EXPECT_TRUE(is_cause(third_example(), {"Y"}));
}

TEST(ConditionMc, Examples) {
  const CredalSet h = second_example();
  EXPECT_TRUE(hull_equal(condition_mc(h, Likelihood::unit(space({{"Y", 3}}))), h.carrier()));
  const FuncSet masked = condition_mc(h, Likelihood::indicator(space({{"Y", 3}}), {0}));
  const FuncSet expected(XY3, {pt({"1/3", "0", "0", "2/3", "0", "0"}), pt({"1/4", "0", "0", "3/4", "0", "0"}),
                               pt({"0", "0", "0", "0", "0", "0"})});
  EXPECT_TRUE(hull_equal(masked, expected));
  // With the null function present, equivalence to H^X is the kernel test.
  EXPECT_TRUE(equivalent(marginalize(masked, {"X"}), marginalize(h.carrier(), {"X"})));
}

TEST(ConditionDempster, Examples) {
  const CredalSet h = second_example();
  const Space Y = space({{"Y", 3}});
  const auto v1 = condition_dempster(h, Likelihood::indicator(Y, {0}));
  ASSERT_TRUE(v1);
  EXPECT_TRUE(hull_equal(marginalize(v1->carrier(), {"X"}), FuncSet(space({{"X", 2}}), {pt({"1/3", "2/3"}), pt({"1/4", "3/4"})})));
  EXPECT_TRUE(hull_equal(condition_dempster(h, Likelihood::unit(Y))->carrier(), h.carrier()));

  // Columns v2, v3 of p3 sum to (3/10, 7/10); of p4 to (17/60, 43/60).
  const auto l = Likelihood(Y, {0, 1, 1});
  const auto got = condition_then_marginal(h, Rule::Dempster, l, {"X"});
  ASSERT_TRUE(got);
  EXPECT_EQ(got->vertices(), (std::vector<Point>{pt({"3/10", "7/10"}), pt({"17/60", "43/60"})}));

  const CredalSet dirac(space({{"X", 2}, {"Y", 2}}), {pt({"1", "0", "0", "0"})});
  EXPECT_FALSE(condition_dempster(dirac, Likelihood::indicator(space({{"Y", 2}}), {1})));
  EXPECT_FALSE(condition_then_marginal(dirac, Rule::Dempster, Likelihood::indicator(space({{"Y", 2}}), {1}), {"X"}));
}

TEST(ConditionDempster, PerValueConditionalsOfTheSecondExample) {
  // Pinned computed values; see the README note on this example.
  const CredalSet h = second_example();
  const Space X = space({{"X", 2}}), Y = space({{"Y", 3}});
  auto at = [&](std::size_t v) { return *condition_then_marginal(h, Rule::Dempster, Likelihood::indicator(Y, {v}), {"X"}); };
  EXPECT_TRUE(hull_equal(at(0), FuncSet(X, {pt({"1/3", "2/3"}), pt({"1/4", "3/4"})})));
  EXPECT_TRUE(hull_equal(at(1), FuncSet(X, {pt({"1/4", "3/4"})})));
  EXPECT_TRUE(hull_equal(at(2), FuncSet(X, {pt({"1/3", "2/3"})})));
  const FuncSet hx = marginalize(h.carrier(), {"X"});
  EXPECT_TRUE(hull_equal(hx, FuncSet(X, {pt({"1/4", "3/4"}), pt({"1/3", "2/3"})})));
}

TEST(ConditionThenMarginal, Examples) {
  const CredalSet h = third_example();
  EXPECT_TRUE(hull_equal(*condition_then_marginal(h, Rule::MoralCampos, Likelihood::unit(space({{"Y", 2}})), {"X"}),
                         marginalize(h.carrier(), {"X"})));
  const auto r = condition_then_marginal(h, Rule::MoralCampos, Likelihood::indicator(space({{"X", 2}}), {0}), {"Y"});
  ASSERT_TRUE(r);
  EXPECT_TRUE(hull_equal(*r, FuncSet(space({{"Y", 2}}), {pt({"6/25", "14/25"}), pt({"3/20", "7/20"}), pt({"3/20", "14/25"})})));
}

TEST(CredalProperties, UnitLikelihoodIsIdentity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    InstanceRecipe r;
    r.shape = {2, 3};
    r.vertices = 4;
    r.seed = seed;
    const CredalSet h = generate(r);
    const Likelihood one = Likelihood::unit(space({{"Y", 3}}));
    EXPECT_TRUE(hull_equal(condition_mc(h, one), h.carrier()));
    EXPECT_TRUE(hull_equal(condition_dempster(h, one)->carrier(), h.carrier()));
  }
}

TEST(CredalProperties, EventConditioningIsIdempotent) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    InstanceRecipe r;
    r.shape = {3, 3};
    r.vertices = 4;
    r.seed = seed;
    const CredalSet h = generate(r);
    const Likelihood event = Likelihood::indicator(space({{"Y", 3}}), {0, 2});
    const auto once = condition_dempster(h, event);
    if (!once) continue;
    const auto twice = condition_dempster(*once, event);
    ASSERT_TRUE(twice);
    EXPECT_TRUE(hull_equal(once->carrier(), twice->carrier()));
  }
}

// Dempster conditioning tested against its definition: conditioned mixtures
// land inside the output, and every output vertex is a conditioned vertex.
TEST(CredalProperties, DempsterMatchesDefinitionOnRandomMixtures) {
  std::mt19937_64 rng(77);
  std::size_t mixtures = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    InstanceRecipe r;
    r.shape = {2, 3};
    r.vertices = 4;
    r.seed = seed + 100;
    const CredalSet h = generate(r);
    const Likelihood l(space({{"Y", 3}}), {q("1/2"), 0, 1});
    const auto out = condition_dempster(h, l);
    if (!out) continue;
    const auto proj = h.space().projection(l.space());
    auto condition_point = [&](const Point& p) -> std::optional<Point> {
      Point m(p.size());
      Rational mass;
      for (std::size_t c = 0; c < p.size(); ++c) {
        m[c] = p[c] * l.values()[proj[c]];
        mass += m[c];
      }
      if (mass.is_zero()) return std::nullopt;
      for (auto& x : m) x /= mass;
      return m;
    };
    for (int i = 0; i < 10; ++i) {
      std::vector<Rational> w;
      Rational total;
      for (std::size_t k = 0; k < h.size(); ++k) {
        w.emplace_back(static_cast<std::int64_t>(rng() % 6));
        total += w.back();
      }
      if (total.is_zero()) continue;
      for (auto& x : w) x /= total;
      const auto c = condition_point(mixture(h.vertices(), w));
      if (!c) continue;
      ++mixtures;
      EXPECT_TRUE(in_hull(*c, out->carrier().points()));
    }
    for (const auto& v : out->vertices()) {
      bool found = false;
      for (const auto& p : h.vertices())
        if (auto c = condition_point(p); c && *c == v) found = true;
      EXPECT_TRUE(found);
    }
  }
  EXPECT_GE(mixtures, 90u);
}

TEST(CredalProperties, RecomposeContainsAndMarginalsStayNormalized) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    InstanceRecipe r;
    r.kind = seed % 2 ? InstanceKind::Random : InstanceKind::CausalChainA;
    r.shape = {2, 2, 2};
    r.vertices = 4;
    r.seed = seed;
    const CredalSet h = generate(r);
    for (const VarList& cause : {VarList{"X"}, VarList{"Z"}, VarList{"X", "Z"}}) {
      const FuncSet rec = recompose(h, cause);
      EXPECT_TRUE(hull_subset(h.carrier(), rec));
      if (is_cause(h, cause)) {
        EXPECT_TRUE(hull_equal(rec, h.carrier()));
      }
      EXPECT_NO_THROW(marginal(h, cause));
    }
  }
}
