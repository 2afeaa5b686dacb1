#include <gtest/gtest.h>

#include <random>

#include "credal/fusion.hpp"
#include "credal/fusion_check.hpp"
#include "credal/harness.hpp"
#include "support.hpp"

using namespace credal;
using credal::test::pt;
using credal::test::q;
using credal::test::space;

namespace {

const VarList X{"X"}, Y{"Y"}, Z{"Z"};

// p1 on (X, Z) and p2 on (Y, Z), both 2x2 with Z fastest; the result is laid
// out over (X, Y, Z). Written out by hand, independent of the library map.
Point glue(const Point& p1, const Point& p2) {
  Point r(8);
  for (int z = 0; z < 2; ++z) {
    const Rational m = p2[z] + p2[2 + z];
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        if (!m.is_zero()) r[x * 4 + y * 2 + z] = p1[x * 2 + z] * p2[y * 2 + z] / m;
  }
  return r;
}

CredalSet set(const Space& s, std::vector<Point> pts) { return CredalSet(s, std::move(pts)); }

const Space XZ = space({{"X", 2}, {"Z", 2}});
const Space YZ = space({{"Y", 2}, {"Z", 2}});
const Space XYZ = space({{"X", 2}, {"Y", 2}, {"Z", 2}});

// Four distributions sharing the Z-marginal (1/2, 1/2).
const CredalSet H1 = set(XZ, {pt({"1/4", "1/4", "1/4", "1/4"}), pt({"1/2", "0", "0", "1/2"})});
const CredalSet H2 = set(YZ, {pt({"1/2", "1/2", "0", "0"}), pt({"0", "1/4", "1/2", "1/4"})});

}  // namespace

TEST(RestrictConsistent, IntervalOverlap) {
  // Z-mass at 0 ranges over [0, 1] in the first set, [1/3, 1/2] in the second.
  const CredalSet a = set(XZ, {pt({"1", "0", "0", "0"}), pt({"0", "0", "0", "1"})});
  const CredalSet b = set(YZ, {pt({"1/3", "0", "0", "2/3"}), pt({"0", "1/2", "1/2", "0"})});
  const auto r = restrict_consistent(a, b, Z);
  ASSERT_TRUE(r);
  // Mixtures t·(1,0,0,0) + (1-t)·(0,0,0,1) with t in [1/3, 1/2].
  EXPECT_TRUE(hull_equal(r->first.carrier(), FuncSet(XZ, {pt({"1/3", "0", "0", "2/3"}), pt({"1/2", "0", "0", "1/2"})})));
  EXPECT_TRUE(hull_equal(r->second.carrier(), b.carrier()));

  const auto again = restrict_consistent(r->first, r->second, Z);
  ASSERT_TRUE(again);
  EXPECT_TRUE(hull_equal(again->first.carrier(), r->first.carrier()));
  EXPECT_TRUE(hull_equal(again->second.carrier(), r->second.carrier()));
}

TEST(RestrictConsistent, DisjointMarginalsAndErrors) {
  const CredalSet w0 = set(XZ, {pt({"1/2", "0", "1/2", "0"})});
  const CredalSet w1 = set(YZ, {pt({"0", "1/2", "0", "1/2"})});
  EXPECT_FALSE(restrict_consistent(w0, w1, Z));
  EXPECT_FALSE(fuse(w0, w1, Z));
  EXPECT_THROW(restrict_consistent(w0, w1, {}), InputError);
  EXPECT_THROW(restrict_consistent(w0, w1, {"W"}), InputError);
  EXPECT_THROW(restrict_consistent(w0, set(space({{"X", 2}, {"Z", 2}}), {pt({"1/2", "0", "1/2", "0"})}), Z), InputError);
}

TEST(Fuse, ExactFourPointCase) {
  const auto r = fuse(H1, H2, Z);
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->exact);
  EXPECT_EQ(r->method, FusionMethod::SingletonMarginalExact);
  EXPECT_EQ(r->joint.space().describe(), "X:2 Y:2 Z:2");
  std::vector<Point> expected;
  for (const auto& p1 : H1.vertices())
    for (const auto& p2 : H2.vertices()) expected.push_back(glue(p1, p2));
  EXPECT_TRUE(hull_equal(r->joint.carrier(), FuncSet(XYZ, expected)));
  const auto props = fusion_properties(*r);
  EXPECT_TRUE(props.marginals_equal);
  EXPECT_TRUE(props.vertices_factorize);
  EXPECT_TRUE(props.ok(true));
}

TEST(Fuse, SingletonSecondInputIsCombinationWithItsConditional) {
  const CredalSet one = set(YZ, {pt({"1/8", "1/4", "3/8", "1/4"})});
  const auto r = fuse(H1, one, Z);
  ASSERT_TRUE(r);
  const FuncSet expected = combine(H1.carrier(), conditional_set(one, Z).carrier());
  EXPECT_TRUE(hull_equal(r->joint.carrier(), reorder(expected, XYZ)));
}

TEST(Fuse, InexactOverlapExample) {
  const CredalSet h1 = paper_example("ex5-h1"), h2 = paper_example("ex5-h2");
  ASSERT_TRUE(restrict_consistent(h1, h2, Z));
  const auto r = fuse(h1, h2, Z);
  ASSERT_TRUE(r);
  EXPECT_FALSE(r->exact);
  Point p1(8), p2(8);
  p1[1] = q("99/100");
  p1[6] = q("1/100");
  p2[7] = 1;
  EXPECT_TRUE(hull_equal(r->joint.carrier(), FuncSet(XYZ, {p1, p2})));
  EXPECT_TRUE(hull_equal(marginalize(r->joint.carrier(), {"X", "Z"}), h1.carrier()));
  EXPECT_TRUE(hull_equal(marginalize(r->joint.carrier(), {"Y", "Z"}), h2.carrier()));
  EXPECT_TRUE(fusion_properties(*r).ok(false));
  EXPECT_TRUE(fusion_properties(*r).vertices_factorize);
}

TEST(FusionProperties, MoreCouplingsNeverShrink) {
  const CredalSet a = set(XZ, {pt({"1", "0", "0", "0"}), pt({"0", "0", "0", "1"}), pt({"0", "1/2", "1/2", "0"})});
  const CredalSet b = set(YZ, {pt({"1/3", "0", "0", "2/3"}), pt({"0", "1/2", "1/2", "0"}), pt({"1/4", "1/4", "1/4", "1/4"})});
  FuseOptions o;
  o.seed = 5;
  const auto r0 = fuse(a, b, Z, o);
  o.coupling_count = 5;
  const auto r5 = fuse(a, b, Z, o);
  o.coupling_count = 20;
  const auto r20 = fuse(a, b, Z, o);
  ASSERT_TRUE(r0 && r5 && r20);
  EXPECT_FALSE(r0->exact);
  EXPECT_EQ(r20->method, FusionMethod::SampledInner);
  EXPECT_TRUE(hull_subset(r0->joint.carrier(), r5->joint.carrier()));
  EXPECT_TRUE(hull_subset(r5->joint.carrier(), r20->joint.carrier()));
  for (const auto* r : {&*r0, &*r5, &*r20}) {
    const auto p = fusion_properties(*r);
    EXPECT_TRUE(p.marginals_inside);
    EXPECT_TRUE(p.vertices_factorize);
  }
}

TEST(FusionProperties, CandidatesWithSameMarginalsLieInside) {
  const auto r = fuse(H1, H2, Z);
  ASSERT_TRUE(r);
  std::mt19937_64 rng(3);
  std::vector<CredalSet> candidates;
  for (int i = 0; i < 20; ++i) {
    // Covering pairs plus one interior product point.
    std::vector<Point> pts{glue(H1.vertices()[0], H2.vertices()[i % 2]), glue(H1.vertices()[1], H2.vertices()[1 - i % 2])};
    const Rational s(static_cast<std::int64_t>(rng() % 5), 4), t(static_cast<std::int64_t>(rng() % 5), 4);
    Point m1(4), m2(4);
    for (int c = 0; c < 4; ++c) {
      m1[c] = s * H1.vertices()[0][c] + (1 - s) * H1.vertices()[1][c];
      m2[c] = t * H2.vertices()[0][c] + (1 - t) * H2.vertices()[1][c];
    }
    pts.push_back(glue(m1, m2));
    candidates.emplace_back(XYZ, pts);
  }
  const auto p = fusion_properties(*r, candidates);
  EXPECT_EQ(p.candidates_checked, 20u);
  EXPECT_EQ(p.candidates_inside, 20u);
  EXPECT_TRUE(p.ok(true));
}

TEST(FusionProperties, FusingOwnMarginalsRecoversFactorizedJoints) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RationalDraw draw(seed);
    const FuncSet pz(space({{"Z", 2}}), {draw.distribution(2, true)});
    const FuncSet xz = detail::random_conditional(XZ, Z, 1 + draw.below(3), draw);
    const FuncSet yz = detail::random_conditional(YZ, Z, 1 + draw.below(3), draw);
    const CredalSet h(canonicalize(reorder(combine(combine(pz, xz), yz), XYZ)));
    const auto c = factorization_fusion_check(h, X, Y, Z);
    EXPECT_TRUE(c.consistent && c.exact);
    EXPECT_EQ(c.factorization, Status::Holds);
    EXPECT_TRUE(c.asserted && c.equal) << "seed " << seed;
    EXPECT_TRUE(c.ok());
  }
}

TEST(FusionProperties, ConditionalCounterexampleIsNotRecovered) {
  const auto c = factorization_fusion_check(instantiate_section4_example(), X, Y, Z);
  EXPECT_TRUE(c.consistent && c.exact);
  EXPECT_FALSE(c.equal);
  EXPECT_FALSE(c.asserted);
  EXPECT_TRUE(c.ok());
}
