#include <gtest/gtest.h>

#include <random>

#include "credal/funcset.hpp"
#include "support.hpp"

using namespace credal;
using credal::test::pt;
using credal::test::q;
using credal::test::space;

namespace {

const Space U = space({{"U", 2}});
const Space V = space({{"V", 3}});
const Space UV = space({{"U", 2}, {"V", 3}});

FuncSet random_set(std::mt19937_64& rng, const Space& s, std::size_t k, bool normalized) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < k; ++i) {
    Point p(s.size());
    std::int64_t total = 0;
    for (auto& x : p) {
      const auto n = static_cast<std::int64_t>(rng() % 5);
      total += n;
      x = n;
    }
    if (total == 0) {
      p[0] = 1;
      total = 1;
    }
    for (auto& x : p) x = normalized ? x / Rational(total) : x / Rational(8);
    pts.push_back(std::move(p));
  }
  return FuncSet(s, std::move(pts));
}

}  // namespace

TEST(Space, RowMajorLastFastest) {
  EXPECT_EQ(UV.size(), 6u);
  EXPECT_EQ(UV.assignment(4), (std::vector<std::size_t>{1, 1}));
  const std::vector<std::size_t> a{1, 2};
  EXPECT_EQ(UV.cell(a), 5u);
  const auto proj = UV.projection(V);
  EXPECT_EQ(proj, (std::vector<std::size_t>{0, 1, 2, 0, 1, 2}));
  EXPECT_THROW(space({{"U", 2}, {"U", 3}}), InputError);
  EXPECT_THROW(U.united(space({{"U", 3}})), InputError);
  EXPECT_EQ(V.united(U).describe(), "V:3 U:2");
}

TEST(Product, Examples) {
  const Func h(U, pt({"1", "0"}));
  const Func g(V, pt({"1/2", "1/2", "0"}));
  EXPECT_EQ(product(h, g).values(), pt({"1/2", "1/2", "0", "0", "0", "0"}));
  const Func joint(UV, pt({"1", "2", "3", "4", "5", "6"}));
  EXPECT_EQ(product(joint, Func::constant(V, 1)).values(), joint.values());
  const Func mask(V, pt({"1", "0", "0"}));
  EXPECT_EQ(product(joint, mask).values(), pt({"1", "0", "0", "4", "0", "0"}));
  EXPECT_THROW(product(h, Func(space({{"U", 3}}), pt({"1", "1", "1"}))), InputError);
}

TEST(Combine, Examples) {
  const FuncSet a = FuncSet::singleton(Func(U, pt({"1/2", "1/2"})));
  const FuncSet b = FuncSet::singleton(Func(V, pt({"1", "0", "0"})));
  const FuncSet ab = combine(a, b);
  EXPECT_EQ(ab.size(), 1u);
  EXPECT_EQ(ab.vertices()[0], pt({"1/2", "0", "0", "1/2", "0", "0"}));

  // H^X ⊗ H^Y reproduces the first two vertices of the asymmetric example.
  const Space X = space({{"X", 2}}), Y = space({{"Y", 2}});
  const FuncSet hx(X, {pt({"4/5", "1/5"}), pt({"1/2", "1/2"})});
  const FuncSet hy(Y, {pt({"3/10", "7/10"})});
  const FuncSet prod = combine(hx, hy);
  const FuncSet expected(space({{"X", 2}, {"Y", 2}}),
                         {pt({"0.24", "0.56", "0.06", "0.14"}), pt({"0.15", "0.35", "0.15", "0.35"})});
  EXPECT_TRUE(hull_equal(prod, expected));

  const FuncSet h(UV, {pt({"1/3", "0", "0", "2/3", "0", "0"}), pt({"0", "1/10", "1/5", "0", "3/10", "2/5"})});
  EXPECT_TRUE(hull_equal(combine(h, FuncSet::singleton(Func::constant(V, 1))), h));
}

TEST(Marginalize, Examples) {
  const FuncSet p1(UV, {pt({"1/3", "0", "0", "2/3", "0", "0"})});
  EXPECT_EQ(marginalize(p1, {"U"}).vertices()[0], pt({"1/3", "2/3"}));
  EXPECT_EQ(marginalize(p1, {"V"}).vertices()[0], pt({"1", "0", "0"}));
  EXPECT_TRUE(hull_equal(marginalize(p1, {"U", "V"}), p1));
  EXPECT_THROW(marginalize(p1, {"W"}), InputError);
  EXPECT_THROW(marginalize(p1, {}), InputError);
}

TEST(Scale, Examples) {
  const FuncSet h(U, {pt({"1/2", "1/2"})});
  EXPECT_EQ(scale(h, 1).vertices(), h.vertices());
  EXPECT_EQ(scale(h, 2).vertices()[0], pt({"1", "1"}));
  EXPECT_THROW(scale(h, 0), InputError);
  EXPECT_THROW(scale(h, -1), InputError);
}

TEST(Equivalent, Examples) {
  const FuncSet h(U, {pt({"1/4", "3/4"}), pt({"1/3", "2/3"})});
  EXPECT_TRUE(equivalent(h, scale(h, q("7/3"))));
  EXPECT_TRUE(equivalent(h, with_null(h)));
  // Hand check of the forced scale: max masses 1 and 17/20 give alpha = 20/17;
  // (3/20, 14/20) * 20/17 = (3/17, 14/17) is not on the ray through (3, 7).
  const FuncSet ray(U, {pt({"3/10", "7/10"})});
  const FuncSet off(U, {pt({"3/20", "14/20"}), pt({"3/20", "56/100"})});
  EXPECT_FALSE(equivalent(ray, off));
  EXPECT_THROW(equivalent(h, FuncSet(V, {pt({"1", "0", "0"})})), InputError);
}

TEST(Equivalent, NullSets) {
  const FuncSet null(U, {pt({"0", "0"})});
  EXPECT_TRUE(equivalent(null, FuncSet(U, {pt({"0", "0"}), pt({"0", "0"})})));
  EXPECT_FALSE(equivalent(null, FuncSet(U, {pt({"1", "0"})})));
}

TEST(FuncSetProperties, CombineCommutesAndAssociates) {
  std::mt19937_64 rng(21);
  const Space W = space({{"W", 2}});
  const Space UW = space({{"U", 2}, {"W", 2}});
  for (int trial = 0; trial < 40; ++trial) {
    const FuncSet a = random_set(rng, UW, 1 + rng() % 3, trial % 2 == 0);
    const FuncSet b = random_set(rng, V, 1 + rng() % 3, true);
    const FuncSet c = random_set(rng, W, 1 + rng() % 2, false);
    EXPECT_TRUE(hull_equal(combine(a, b), combine(b, a)));
    EXPECT_TRUE(hull_equal(combine(combine(a, b), c), combine(a, combine(b, c))));
  }
}

TEST(FuncSetProperties, MarginalOfCombinationWithNormalizedFactor) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const FuncSet h = random_set(rng, U, 1 + rng() % 3, trial % 2 == 0);
    const FuncSet g = random_set(rng, V, 1 + rng() % 3, true);
    EXPECT_TRUE(hull_equal(marginalize(combine(h, g), {"U"}), h));
  }
}

TEST(FuncSetProperties, NestedMarginals) {
  std::mt19937_64 rng(23);
  const Space UVW = space({{"U", 2}, {"V", 3}, {"W", 2}});
  for (int trial = 0; trial < 30; ++trial) {
    const FuncSet h = random_set(rng, UVW, 1 + rng() % 5, true);
    EXPECT_TRUE(hull_equal(marginalize(marginalize(h, {"U", "W"}), {"W"}), marginalize(h, {"W"})));
    EXPECT_TRUE(hull_equal(marginalize(marginalize(h, {"U", "V"}), {"U"}), marginalize(h, {"U"})));
  }
}

TEST(FuncSetProperties, EquivalenceIsAnEquivalenceRelation) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    const FuncSet a = random_set(rng, UV, 1 + rng() % 3, false);
    const Rational s1(1 + static_cast<std::int64_t>(rng() % 5), 1 + static_cast<std::int64_t>(rng() % 5));
    const Rational s2(1 + static_cast<std::int64_t>(rng() % 5), 1 + static_cast<std::int64_t>(rng() % 5));
    const FuncSet b = with_null(scale(a, s1));
    const FuncSet c = scale(b, s2);
    const FuncSet d = random_set(rng, UV, 1 + rng() % 3, false);
    EXPECT_TRUE(equivalent(a, a));
    EXPECT_TRUE(equivalent(a, b) && equivalent(b, a));
    EXPECT_TRUE(equivalent(b, c) && equivalent(a, c));
    EXPECT_EQ(equivalent(a, d), equivalent(d, a));
    if (equivalent(a, d)) EXPECT_TRUE(equivalent(c, d));
  }
}

TEST(FuncSetProperties, ProductsStayNonnegativeAndNormalized) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const FuncSet h = random_set(rng, U, 1 + rng() % 3, true);
    const FuncSet g = random_set(rng, V, 1 + rng() % 3, true);
    const FuncSet hg = combine(h, g);
    for (const auto& v : hg.vertices()) {
      Rational m;
      for (const auto& x : v) {
        EXPECT_GE(x.sign(), 0);
        m += x;
      }
      EXPECT_EQ(m, Rational(1));
    }
  }
}
