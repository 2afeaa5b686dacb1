#pragma once

// Instance generators, the implication table that cross-checks every
// decider against the known implications between the notions, and a
// brute-force grid oracle for the likelihood sweep.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "credal/credal.hpp"
#include "credal/errors.hpp"
#include "credal/fusion.hpp"
#include "credal/independence.hpp"

namespace credal {

enum class InstanceKind { Random, ProductBuilt, CausalChainA, CausalChainB, CausalChainC, PaperExample, Perturbed };

inline const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::Random: return "random";
    case InstanceKind::ProductBuilt: return "product-built";
    case InstanceKind::CausalChainA: return "causal-chain-a";
    case InstanceKind::CausalChainB: return "causal-chain-b";
    case InstanceKind::CausalChainC: return "causal-chain-c";
    case InstanceKind::PaperExample: return "paper-example";
    case InstanceKind::Perturbed: return "perturbed";
  }
  return "?";
}

/// Generation is a pure function of the recipe. Variables are named X, Y and
/// (for three-variable shapes) Z. `vertices` bounds the generated vertex
/// count; `example` selects a built-in example for `PaperExample`.
struct InstanceRecipe {
  static constexpr std::size_t kMaxCells = 24;
  static constexpr std::size_t kMaxVertices = 12;

  InstanceKind kind = InstanceKind::Random;
  std::vector<std::size_t> shape{2, 2};
  std::size_t vertices = 3;
  std::uint64_t seed = 0;
  std::string example;

  std::string describe() const {
    if (kind == InstanceKind::PaperExample) return example;
    std::string s = std::string(to_string(kind)) + ' ';
    for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "x" : "") + std::to_string(shape[i]);
    return s + " k=" + std::to_string(vertices) + " seed=" + std::to_string(seed);
  }
};

/// Seeded source of exact random distributions with small denominators.
class RationalDraw {
 public:
  static constexpr std::int64_t kMaxDenominator = 16;

  explicit RationalDraw(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

  /// A distribution over n cells with common denominator at most 16 (or n,
  /// if larger and `positive`). With `positive`, every cell gets mass.
  Point distribution(std::size_t n, bool positive = false) {
    const auto lo = static_cast<std::int64_t>(positive ? std::max<std::size_t>(n, 4) : 4);
    const std::int64_t d = lo >= kMaxDenominator ? lo : lo + static_cast<std::int64_t>(below(kMaxDenominator - lo + 1));
    const std::int64_t free_units = positive ? d - static_cast<std::int64_t>(n) : d;
    std::vector<std::int64_t> cuts{0, free_units};
    for (std::size_t i = 1; i < n; ++i)
      cuts.push_back(static_cast<std::int64_t>(below(static_cast<std::uint64_t>(free_units) + 1)));
    std::sort(cuts.begin(), cuts.end());
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = Rational(cuts[i + 1] - cuts[i] + (positive ? 1 : 0), d);
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

inline Space space_for(const std::vector<std::size_t>& shape) {
  static const char* names[] = {"X", "Y", "Z"};
  if (shape.size() < 2 || shape.size() > 3) throw InputError("instance shapes have two or three variables");
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < shape.size(); ++i) vars.push_back({names[i], shape[i]});
  Space s(std::move(vars));
  if (s.size() > InstanceRecipe::kMaxCells) throw InputError("instance space exceeds the cell cap");
  return s;
}

inline FuncSet random_set(const Space& s, std::size_t k, RationalDraw& draw, bool positive) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < k; ++i) pts.push_back(draw.distribution(s.size(), positive));
  return canonicalize(FuncSet(s, std::move(pts)));
}

// k random conditional tables over `s`: one distribution over the remaining
// variables per cell of `given`. Variables in `ignored` do not key the slice,
// so the same slice repeats across their values.
inline FuncSet random_conditional(const Space& s, const VarList& given, std::size_t k, RationalDraw& draw,
                                  const VarList& ignored = {}) {
  const Space g = s.subspace(given);
  const Space rest = s.subspace(s.complement(given));
  const VarList keyed_names = g.complement(ignored);
  const Space keyed = keyed_names.empty() ? Space() : g.subspace(keyed_names);
  const auto pg = s.projection(keyed);
  const auto pr = s.projection(rest);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Point> slices;
    for (std::size_t c = 0; c < keyed.size(); ++c) slices.push_back(draw.distribution(rest.size()));
    Point p(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) p[c] = slices[pg[c]][pr[c]];
    pts.push_back(std::move(p));
  }
  return canonicalize(FuncSet(s, std::move(pts)));
}

// Splits a vertex budget into per-factor counts whose product stays within it.
inline std::vector<std::size_t> split_budget(std::size_t factors, std::size_t budget, RationalDraw& draw) {
  std::vector<std::size_t> k(factors, 1);
  for (std::size_t step = 0; step < 3 * factors; ++step) {
    const std::size_t f = draw.below(factors);
    std::size_t product = 1;
    for (std::size_t i = 0; i < factors; ++i) product *= i == f ? k[i] + 1 : k[i];
    if (product <= budget) ++k[f];
  }
  return k;
}

inline CredalSet compose(const std::vector<FuncSet>& factors, const Space& target) {
  FuncSet acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = combine(acc, factors[i]);
  return CredalSet(canonicalize(reorder(acc, target)));
}

inline CredalSet parse_rows(const Space& s, const std::vector<std::vector<const char*>>& rows) {
  std::vector<Point> pts;
  for (const auto& r : rows) {
    Point p;
    for (const char* v : r) p.push_back(Rational::from_string(v));
    pts.push_back(std::move(p));
  }
  return CredalSet(s, std::move(pts));
}

}  // namespace detail

/// Concrete two-vertex joint on X:2 Y:2 Z:2 with the slice pattern of the
/// conditional counterexample: p(w) shared; given Z=0 the X-conditionals
/// agree and the Y-conditionals differ, given Z=1 the reverse. Seed 0 gives
/// the canonical values, other seeds random values with the same pattern.
inline CredalSet instantiate_section4_example(std::uint64_t seed = 0) {
  Point pw{Rational(1, 2), Rational(1, 2)};
  Point x0{Rational(1, 2), Rational(1, 2)};
  Point x1a{1, 0}, x1b{0, 1};
  Point y0a{1, 0}, y0b{0, 1};
  Point y1{Rational(1, 2), Rational(1, 2)};
  if (seed != 0) {
    RationalDraw draw(seed);
    pw = draw.distribution(2, true);
    x0 = draw.distribution(2);
    y1 = draw.distribution(2);
    do {
      x1a = draw.distribution(2);
      x1b = draw.distribution(2);
    } while (x1a == x1b);
    do {
      y0a = draw.distribution(2);
      y0b = draw.distribution(2);
    } while (y0a == y0b);
  }
  const Space s({{"X", 2}, {"Y", 2}, {"Z", 2}});
  auto joint = [&](const Point& x1, const Point& y0) {
    Point p(8);
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t v = 0; v < 2; ++v) {
        p[u * 4 + v * 2 + 0] = x0[u] * pw[0] * y0[v];
        p[u * 4 + v * 2 + 1] = x1[u] * pw[1] * y1[v];
      }
    return p;
  };
  return CredalSet(s, {joint(x1a, y0a), joint(x1b, y0b)});
}

/// Ids accepted by `paper_example`.
inline const std::vector<std::string>& paper_example_ids() {
  static const std::vector<std::string> ids{"ex3-1", "ex3-2", "ex3-3", "ex4", "ex5-h1", "ex5-h2"};
  return ids;
}

inline CredalSet paper_example(const std::string& id) {
  using detail::parse_rows;
  if (id == "ex3-1") return parse_rows(Space({{"X", 2}, {"Y", 2}}), {{"1", "0", "0", "0"}, {"0", "0", "0", "1"}});
  if (id == "ex3-2")
    return parse_rows(Space({{"X", 2}, {"Y", 3}}), {{"1/3", "0", "0", "2/3", "0", "0"},
                                                    {"1/4", "0", "0", "3/4", "0", "0"},
                                                    {"0", "0.1", "0.2", "0", "0.3", "0.4"},
                                                    {"0", "0.15", "2/15", "0", "0.45", "4/15"}});
  if (id == "ex3-3")
    return parse_rows(Space({{"X", 2}, {"Y", 2}}), {{"0.24", "0.56", "0.06", "0.14"},
                                                    {"0.15", "0.35", "0.15", "0.35"},
                                                    {"0.15", "0.56", "0.15", "0.14"}});
  if (id == "ex4") return instantiate_section4_example();
  if (id == "ex5-h1")
    return parse_rows(Space({{"X", 2}, {"Z", 2}}), {{"0", "0.99", "0.01", "0"}, {"0", "0", "0", "1"}});
  if (id == "ex5-h2")
    return parse_rows(Space({{"Y", 2}, {"Z", 2}}), {{"0", "0.99", "0.01", "0"}, {"0", "0", "0", "1"}});
  throw InputError("unknown built-in example '" + id + "'");
}

inline CredalSet generate(const InstanceRecipe& r) {
  if (r.kind == InstanceKind::PaperExample) return paper_example(r.example);
  if (r.vertices == 0 || r.vertices > InstanceRecipe::kMaxVertices) throw InputError("vertex count outside 1..12");
  const Space s = detail::space_for(r.shape);
  RationalDraw draw(r.seed);
  const bool three = s.arity() == 3;
  const VarList X{"X"}, Y{"Y"}, Z{"Z"};
  auto sub = [&](const VarList& v) { return s.subspace(v); };

  switch (r.kind) {
    case InstanceKind::Random:
      return CredalSet(detail::random_set(s, r.vertices, draw, false));

    case InstanceKind::ProductBuilt: {
      const auto k = detail::split_budget(s.arity(), r.vertices, draw);
      std::vector<FuncSet> factors;
      for (std::size_t i = 0; i < s.arity(); ++i)
        factors.push_back(detail::random_set(sub({s.variables()[i].name}), k[i], draw, false));
      return detail::compose(factors, s);
    }

    case InstanceKind::CausalChainA:
    case InstanceKind::CausalChainB:
    case InstanceKind::CausalChainC: {
      if (three && r.kind == InstanceKind::CausalChainA) {
        // Z -> X, Y
        const auto k = detail::split_budget(3, r.vertices, draw);
        return detail::compose({detail::random_set(sub(Z), k[0], draw, true),
                                detail::random_conditional(sub({"X", "Z"}), Z, k[1], draw),
                                detail::random_conditional(sub({"Y", "Z"}), Z, k[2], draw)},
                               s);
      }
      // Two variables: A and C are X -> Y, B is Y -> X. Three variables: B is
      // X,Z -> Y and C is Y,Z -> X. Half the time the effect's conditional
      // ignores the non-Z cause, which makes the pair independent.
      const bool reversed = r.kind == InstanceKind::CausalChainB ? !three : r.kind == InstanceKind::CausalChainC && three;
      const VarList effect = reversed ? X : Y;
      const VarList cause = s.complement(effect);
      const auto k = detail::split_budget(2, r.vertices, draw);
      const bool flat = r.kind != InstanceKind::CausalChainC || three ? draw.below(2) == 0 : false;
      const VarList ignored = flat ? (reversed ? Y : X) : VarList{};
      return detail::compose({detail::random_set(sub(cause), k[0], draw, true),
                              detail::random_conditional(s, cause, k[1], draw, ignored)},
                             s);
    }

    case InstanceKind::Perturbed: {
      InstanceRecipe base = r;
      base.kind = draw.below(2) == 0 ? InstanceKind::ProductBuilt : InstanceKind::CausalChainA;
      base.seed = r.seed ^ 0x9e3779b97f4a7c15ULL;
      const CredalSet h = generate(base);
      std::vector<Point> pts = h.vertices();
      Point& p = pts[draw.below(pts.size())];
      std::vector<std::size_t> charged;
      for (std::size_t c = 0; c < p.size(); ++c)
        if (p[c].sign() > 0) charged.push_back(c);
      const std::size_t from = charged[draw.below(charged.size())];
      std::size_t to = draw.below(p.size() - 1);
      if (to >= from) ++to;
      const Rational amount = std::min(p[from], Rational(1, 16));
      p[from] -= amount;
      p[to] += amount;
      return CredalSet(canonicalize(FuncSet(s, std::move(pts))));
    }

    case InstanceKind::PaperExample: break;
  }
  throw InputError("unknown instance kind");
}

// ---------------------------------------------------------------------------
// Implication table

struct ImplicationTable {
  VarList x, y, z;
  Verdict i1, i2, i3;  // i3 is the conditional decider when z is nonempty
  Verdict i4_xy, i4_yx, i5_xy, i5_yx;
  CauseBundle cause;
  /// The type-5 witness replayed through the type-4 kernel (true when it
  /// also refutes type 4). Recorded only.
  std::optional<bool> i5_witness_refutes_i4_xy, i5_witness_refutes_i4_yx;
  std::vector<std::string> violations;

  bool consistent() const noexcept { return violations.empty(); }
};

namespace detail {

inline bool contradicts(const Verdict& a, const Verdict& b) {
  return (a.holds() && b.fails()) || (a.fails() && b.holds());
}

inline std::optional<bool> replay_in_type4(const CredalSet& h, const VarList& of, const VarList& wrt,
                                           const VarList& given, const Verdict& v5) {
  const auto* w = std::get_if<LikelihoodWitness>(&v5.witness);
  if (!v5.fails() || !w) return std::nullopt;
  const CredalSet joint = restricted(h, join(join(of, wrt), given));
  if (given.empty())
    return !irrelevance_kernel(joint, Rule::MoralCampos, of, marginalize(joint.carrier(), of), w->likelihood);
  const auto sb = slice_bases(joint, Rule::MoralCampos, of, given);
  return failing_slice(joint, Rule::MoralCampos, of, sb, w->likelihood).has_value();
}

}  // namespace detail

/// Runs every decider (both directions for the asymmetric notions) and
/// records each violated implication between them.
inline ImplicationTable implication_table(const CredalSet& h, const VarList& x, const VarList& y, const VarList& z,
                                          const LikelihoodFamily& family) {
  ImplicationTable t;
  t.x = x;
  t.y = y;
  t.z = z;
  const bool conditional = !z.empty();
  const CredalSet joint = detail::restricted(h, join(join(x, y), z));
  std::vector<Func> ext;
  for (std::size_t i = 0; i < joint.size(); ++i) ext.push_back(joint.vertex(i));
  t.i1 = type1(ext, x, y, z);
  t.i2 = type2(joint, x, y, z);
  t.i3 = conditional ? type3_conditional(joint, x, y, z) : type3(joint, x, y);
  t.i4_xy = type4(joint, x, y, z, family);
  t.i4_yx = type4(joint, y, x, z, family);
  t.i5_xy = type5(joint, x, y, z, family);
  t.i5_yx = type5(joint, y, x, z, family);
  t.cause = decide_under_cause(joint, x, y, z);
  t.i5_witness_refutes_i4_xy = detail::replay_in_type4(joint, x, y, z, t.i5_xy);
  t.i5_witness_refutes_i4_yx = detail::replay_in_type4(joint, y, x, z, t.i5_yx);

  auto violation = [&](bool bad, const std::string& what) {
    if (bad) t.violations.push_back(what);
  };
  violation(t.i1.status != t.i2.status, "type 1 on the extreme points differs from type 2");
  violation(t.i3.holds() && !t.i2.holds(), "type 3 holds without type 2");
  violation(t.i5_xy.fails() && t.i4_xy.holds(), "type 5 fails but type 4 holds (X wrt Y)");
  violation(t.i5_yx.fails() && t.i4_yx.holds(), "type 5 fails but type 4 holds (Y wrt X)");
  if (!conditional) {
    const bool lhs = t.i2.holds() && t.i4_xy.holds();
    violation(lhs != t.i3.holds(), "type 2 and type 4 versus type 3 biconditional");
    violation(t.i2.holds() && t.i4_xy.status != t.i3.status, "type 4 under type 2 differs from type 3");
    const auto cx = irrelevance_consequences(joint, x, y);
    const auto cy = irrelevance_consequences(joint, y, x);
    violation(!cx.product_inside && (t.i4_xy.holds() || t.i4_yx.holds()),
              "type 4 holds although the marginal combination leaves the joint");
    violation(!cx.partner_for_every_extreme && t.i5_xy.holds(), "type 5 holds without a partner (X wrt Y)");
    violation(!cy.partner_for_every_extreme && t.i5_yx.holds(), "type 5 holds without a partner (Y wrt X)");
  } else {
    violation(t.i3.holds() && (t.i4_xy.fails() || t.i4_yx.fails()), "conditional type 3 holds but type 4 fails");
    violation((t.i4_xy.fails() || t.i4_yx.fails()) && t.i3.holds(), "conditional type 4 fails but type 3 holds");
  }

  auto replay = [&](Notion n, const VarList& of, const VarList& wrt, const Verdict& v, const char* name) {
    if (v.fails()) violation(!confirms_failure(joint, n, of, wrt, z, v), std::string(name) + " witness does not replay");
  };
  replay(Notion::Type1, x, y, t.i1, "type 1");
  replay(Notion::Type2, x, y, t.i2, "type 2");
  replay(Notion::Type3, x, y, t.i3, "type 3");
  replay(Notion::Type4, x, y, t.i4_xy, "type 4 (X wrt Y)");
  replay(Notion::Type4, y, x, t.i4_yx, "type 4 (Y wrt X)");
  replay(Notion::Type5, x, y, t.i5_xy, "type 5 (X wrt Y)");
  replay(Notion::Type5, y, x, t.i5_yx, "type 5 (Y wrt X)");

  if (t.cause.applies) {
    const auto& b = t.cause;
    violation(b.type2.status != t.i2.status, "cause bundle type 2 differs from the direct check");
    violation(detail::contradicts(b.type3, t.i3), "cause bundle contradicts type 3");
    violation(detail::contradicts(b.type4, t.i4_xy), "cause bundle contradicts type 4 (X wrt Y)");
    violation(detail::contradicts(b.type5, t.i5_xy), "cause bundle contradicts type 5 (X wrt Y)");
    if (b.type4_reverse) violation(detail::contradicts(*b.type4_reverse, t.i4_yx), "cause bundle contradicts type 4 (Y wrt X)");
    if (b.type5_reverse) violation(detail::contradicts(*b.type5_reverse, t.i5_yx), "cause bundle contradicts type 5 (Y wrt X)");
    violation(b.type2.holds() && !b.decomposition_verified, "cause decomposition does not reproduce the joint");
  }
  return t;
}

inline char status_letter(const Verdict& v) { return to_string(v.status)[0]; }

/// One report line: recipe, verdict matrix (H/F/U), cause pattern, status.
inline std::string report_line(const std::string& recipe, const ImplicationTable& t) {
  std::ostringstream os;
  os << recipe << " | i1=" << to_string(t.i1.status) << " i2=" << to_string(t.i2.status)
     << " i3=" << to_string(t.i3.status) << " i4.xy=" << to_string(t.i4_xy.status)
     << " i4.yx=" << to_string(t.i4_yx.status) << " i5.xy=" << to_string(t.i5_xy.status)
     << " i5.yx=" << to_string(t.i5_yx.status) << " | cause=" << (t.cause.applies ? t.cause.pattern : "-") << " | ";
  if (t.consistent()) {
    os << "consistent";
  } else {
    os << "VIOLATION";
    for (const auto& v : t.violations) os << " [" << v << ']';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Grid oracle. Written against vertex tables and hull membership only, so it
// shares no code with the conditioning and equivalence routines it checks.

namespace detail {

inline bool mutual_hull(const std::vector<Point>& a, const std::vector<Point>& b) {
  const std::size_t d = a.front().size();
  const PointList pa(d, a), pb(d, b);
  return std::all_of(a.begin(), a.end(), [&](const Point& p) { return in_hull(p, pb); }) &&
         std::all_of(b.begin(), b.end(), [&](const Point& p) { return in_hull(p, pa); });
}

}  // namespace detail

/// True when the likelihood `l` (over the cells of `wrt`, in that order)
/// violates the irrelevance condition of `rule` for `of`.
inline bool grid_point_violates(const CredalSet& h, Rule rule, const VarList& of, const VarList& wrt,
                                const std::vector<Rational>& l) {
  const Space& s = h.space();
  const Space so = s.subspace(of), sw = s.subspace(wrt);
  if (l.size() != sw.size()) throw InputError("likelihood length does not match the conditioning space");
  const auto to_of = s.projection(so);
  const auto to_wrt = s.projection(sw);
  std::vector<Point> base, conditioned;
  std::vector<Rational> masses;
  for (const auto& p : h.vertices()) {
    Point b(so.size()), c(so.size());
    Rational m;
    for (std::size_t cell = 0; cell < p.size(); ++cell) {
      b[to_of[cell]] += p[cell];
      const Rational masked = p[cell] * l[to_wrt[cell]];
      c[to_of[cell]] += masked;
      m += masked;
    }
    base.push_back(std::move(b));
    conditioned.push_back(std::move(c));
    masses.push_back(std::move(m));
  }
  const Rational top = *std::max_element(masses.begin(), masses.end());
  if (top.is_zero()) return false;  // null or empty outcome
  if (rule == Rule::MoralCampos) {
    // Base vertices have mass 1, so the scale is the largest conditioned mass.
    for (auto& b : base)
      for (auto& x : b) x *= top;
    base.emplace_back(so.size(), Rational());
    conditioned.emplace_back(so.size(), Rational());
    return !detail::mutual_hull(conditioned, base);
  }
  std::vector<Point> normalized;
  for (std::size_t i = 0; i < conditioned.size(); ++i) {
    if (masses[i].is_zero()) continue;
    for (auto& x : conditioned[i]) x /= masses[i];
    normalized.push_back(conditioned[i]);
  }
  return !detail::mutual_hull(normalized, base);
}

/// Exhaustive search over likelihoods with coordinates in {0, 1/r, ..., 1},
/// last cell fastest. Returns the first violating likelihood.
inline std::optional<std::vector<Rational>> grid_likelihood_oracle(const CredalSet& h, Rule rule, const VarList& of,
                                                                   const VarList& wrt, std::size_t resolution) {
  const std::size_t n = h.space().subspace(wrt).size();
  if (n > 3) throw InputError("grid oracle supports at most 3 conditioning cells");
  if (resolution == 0 || resolution > 8) throw InputError("grid resolution must be within 1..8");
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Rational> l(n);
    for (std::size_t i = 0; i < n; ++i)
      l[i] = Rational(static_cast<std::int64_t>(idx[i]), static_cast<std::int64_t>(resolution));
    if (grid_point_violates(h, rule, of, wrt, l)) return l;
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == resolution) idx[--i] = 0;
    if (i == 0) return std::nullopt;
    ++idx[i - 1];
  }
}

/// True when every coordinate is a multiple of 1/r.
inline bool on_grid(const std::vector<Rational>& l, std::size_t resolution) {
  const auto r = static_cast<std::int64_t>(resolution);
  return std::all_of(l.begin(), l.end(), [&](const Rational& x) { return (x * r).is_integer(); });
}

}  // namespace credal
