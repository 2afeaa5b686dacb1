#pragma once

// Building a joint credal set over X, Y, Z from a set on (X, Z) and a set on
// (Y, Z): consistency restriction on the shared marginal, then the least
// specific joint whose extreme points factorize given Z.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "credal/credal.hpp"
#include "credal/errors.hpp"
#include "credal/geometry.hpp"

namespace credal {

struct ConsistentPair {
  CredalSet first;
  CredalSet second;
};

enum class FusionMethod { SingletonMarginalExact, CouplingVerticesInner, SampledInner };

inline const char* to_string(FusionMethod m) {
  switch (m) {
    case FusionMethod::SingletonMarginalExact: return "singleton-marginal-exact";
    case FusionMethod::CouplingVerticesInner: return "coupling-vertices-inner";
    case FusionMethod::SampledInner: return "sampled-inner";
  }
  return "?";
}

struct FusionResult {
  CredalSet joint;
  bool exact = false;
  FusionMethod method = FusionMethod::SingletonMarginalExact;
  std::size_t coupling_count = 0;
  /// The restricted inputs the joint was built from.
  CredalSet first;
  CredalSet second;
};

struct FuseOptions {
  std::size_t coupling_count = 0;  // interior coupling samples (inexact case only)
  std::uint64_t seed = 0;
};

namespace detail {

struct SharedLayout {
  Space shared;       // W in the caller's order
  VarList first_own;  // U
  VarList second_own; // V
};

inline SharedLayout shared_layout(const Space& s1, const Space& s2, const VarList& shared) {
  if (shared.empty()) throw InputError("fusion needs at least one shared variable");
  std::vector<Variable> w;
  for (const auto& n : shared) {
    auto p1 = s1.position(n);
    auto p2 = s2.position(n);
    if (!p1 || !p2) throw InputError("shared variable '" + n + "' missing from an input space");
    if (s1.variables()[*p1].cardinality != s2.variables()[*p2].cardinality)
      throw InputError("shared variable '" + n + "' has different cardinalities");
    w.push_back(s1.variables()[*p1]);
  }
  SharedLayout out{Space(std::move(w)), s1.complement(shared), s2.complement(shared)};
  for (const auto& n : out.first_own)
    if (s2.contains(n)) throw InputError("variable '" + n + "' appears in both inputs but is not declared shared");
  return out;
}

// W-marginal of every vertex, laid out over `w`.
inline std::vector<Point> shared_marginals(const CredalSet& h, const Space& w) {
  const auto proj = h.space().projection(w);
  std::vector<Point> out;
  out.reserve(h.size());
  for (const auto& v : h.vertices()) {
    Point m(w.size());
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!v[c].is_zero()) m[proj[c]] += v[c];
    out.push_back(std::move(m));
  }
  return out;
}

// {p ∈ hull(h) : p^W ∈ hull(target)}, worked out in mixture-weight
// coordinates of h's vertices. nullopt when empty.
inline std::optional<CredalSet> restrict_to_marginals(const CredalSet& h, const std::vector<Point>& own_marginals,
                                                      const PointList& target) {
  const std::size_t k = h.size();
  LinearSystem sys(k, /*nonneg=*/true);
  sys.add(std::vector<Rational>(k, Rational(1)), Relation::Equal, Rational(1));
  for (const auto& f : facet_representation(target)) {
    std::vector<Rational> row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = linalg::dot(f.coeffs, own_marginals[i]);
    sys.add(std::move(row), f.relation, f.rhs);
  }
  const auto weights = vertex_enumerate(sys);
  if (weights.empty()) return std::nullopt;
  std::vector<Point> pts;
  pts.reserve(weights.size());
  for (const auto& lambda : weights) {
    Point p(h.space().size());
    for (std::size_t i = 0; i < k; ++i)
      if (!lambda[i].is_zero())
        for (std::size_t c = 0; c < p.size(); ++c)
          if (!h.vertices()[i][c].is_zero()) p[c] += lambda[i] * h.vertices()[i][c];
    pts.push_back(std::move(p));
  }
  return CredalSet(canonicalize(FuncSet(h.space(), std::move(pts))));
}

}  // namespace detail

/// Shrinks each input to the distributions whose shared marginal is also
/// attainable by the other input. nullopt means the inputs are inconsistent
/// (their shared-marginal hulls do not meet).
inline std::optional<ConsistentPair> restrict_consistent(const CredalSet& h1, const CredalSet& h2,
                                                         const VarList& shared) {
  const auto layout = detail::shared_layout(h1.space(), h2.space(), shared);
  const auto m1 = detail::shared_marginals(h1, layout.shared);
  const auto m2 = detail::shared_marginals(h2, layout.shared);
  const PointList hull1 = canonicalize(PointList(layout.shared.size(), m1));
  const PointList hull2 = canonicalize(PointList(layout.shared.size(), m2));

  std::optional<CredalSet> r1, r2;
  if (hull_subset(hull1, hull2))
    r1 = canonicalize(h1);
  else
    r1 = detail::restrict_to_marginals(h1, m1, hull2);
  if (hull_subset(hull2, hull1))
    r2 = canonicalize(h2);
  else
    r2 = detail::restrict_to_marginals(h2, m2, hull1);
  if (!r1 || !r2) return std::nullopt;
  return ConsistentPair{std::move(*r1), std::move(*r2)};
}

namespace detail {

// p1 · p2 / p2^W on U×V×W, with 0/0 = 0.
struct Quotient {
  Space out;
  std::vector<std::size_t> to_first, to_second, to_shared;
  std::vector<std::size_t> second_to_shared;

  Quotient(const Space& s1, const Space& s2, const SharedLayout& layout) {
    out = s1.subspace(layout.first_own)
              .united(s2.subspace(layout.second_own))
              .united(layout.shared);
    to_first = out.projection(s1);
    to_second = out.projection(s2);
    to_shared = out.projection(layout.shared);
    second_to_shared = s2.projection(layout.shared);
  }

  Point operator()(const Point& p1, const Point& p2, std::size_t w_size) const {
    std::vector<Rational> m(w_size);
    for (std::size_t c = 0; c < p2.size(); ++c)
      if (!p2[c].is_zero()) m[second_to_shared[c]] += p2[c];
    Point r(out.size());
    for (std::size_t c = 0; c < r.size(); ++c) {
      const Rational& a = p1[to_first[c]];
      const Rational& b = p2[to_second[c]];
      if (a.is_zero() || b.is_zero()) continue;
      r[c] = a * b / m[to_shared[c]];
    }
    return r;
  }
};

inline Point mix(const std::vector<Point>& verts, const std::vector<Rational>& weights, std::size_t offset,
                 std::size_t dim) {
  Point p(dim);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Rational& w = weights[offset + i];
    if (w.is_zero()) continue;
    for (std::size_t c = 0; c < dim; ++c)
      if (!verts[i][c].is_zero()) p[c] += w * verts[i][c];
  }
  return p;
}

}  // namespace detail

/// Least specific joint with conditionally factorizing extreme points.
///
/// When the common shared marginal is a single distribution m (always the
/// case for a one-cell shared space) every pair of vertices is compatible and
/// the quotient map is bilinear, so the images of vertex pairs generate the
/// whole set: the result is exact. Otherwise the compatible pairs form the
/// coupling polytope; its vertices, plus `coupling_count` seeded interior
/// couplings, are mapped and the hull of the images is returned as an inner
/// approximation flagged inexact.
inline std::optional<FusionResult> fuse(const CredalSet& h1, const CredalSet& h2, const VarList& shared,
                                        const FuseOptions& options = {}) {
  auto pair = restrict_consistent(h1, h2, shared);
  if (!pair) return std::nullopt;
  const auto layout = detail::shared_layout(h1.space(), h2.space(), shared);
  const CredalSet& a = pair->first;
  const CredalSet& b = pair->second;
  const detail::Quotient quotient(a.space(), b.space(), layout);
  const std::size_t wn = layout.shared.size();

  const auto ma = detail::shared_marginals(a, layout.shared);
  const auto mb = detail::shared_marginals(b, layout.shared);
  const PointList common = canonicalize(PointList(wn, ma));

  std::vector<Point> images;
  FusionResult result{a, false, FusionMethod::CouplingVerticesInner, 0, a, b};
  if (common.size() == 1) {
    for (const auto& p1 : a.vertices())
      for (const auto& p2 : b.vertices()) images.push_back(quotient(p1, p2, wn));
    result.exact = true;
    result.method = FusionMethod::SingletonMarginalExact;
  } else {
    const std::size_t k1 = a.size(), k2 = b.size();
    LinearSystem sys(k1 + k2, /*nonneg=*/true);
    std::vector<Rational> first_sum(k1 + k2), second_sum(k1 + k2);
    for (std::size_t i = 0; i < k1; ++i) first_sum[i] = 1;
    for (std::size_t j = 0; j < k2; ++j) second_sum[k1 + j] = 1;
    sys.add(first_sum, Relation::Equal, 1);
    sys.add(second_sum, Relation::Equal, 1);
    for (std::size_t c = 0; c < wn; ++c) {
      std::vector<Rational> row(k1 + k2);
      for (std::size_t i = 0; i < k1; ++i) row[i] = ma[i][c];
      for (std::size_t j = 0; j < k2; ++j) row[k1 + j] = -mb[j][c];
      sys.add(std::move(row), Relation::Equal, 0);
    }
    const auto couplings = vertex_enumerate(sys);
    const std::size_t d1 = a.space().size(), d2 = b.space().size();
    auto map_coupling = [&](const std::vector<Rational>& w) {
      return quotient(detail::mix(a.vertices(), w, 0, d1), detail::mix(b.vertices(), w, k1, d2), wn);
    };
    for (const auto& w : couplings) images.push_back(map_coupling(w));

    // Interior couplings: seeded convex combinations of coupling vertices.
    // Each sample consumes a fixed number of draws, so a larger count extends
    // the same sample sequence.
    std::mt19937_64 rng(options.seed);
    for (std::size_t s = 0; s < options.coupling_count; ++s) {
      std::vector<std::int64_t> raw(couplings.size());
      std::int64_t total = 0;
      for (auto& r : raw) total += (r = static_cast<std::int64_t>(rng() % 17));
      if (total == 0) {
        raw[0] = 1;
        total = 1;
      }
      std::vector<Rational> w(k1 + k2);
      for (std::size_t t = 0; t < couplings.size(); ++t) {
        if (raw[t] == 0) continue;
        const Rational lambda(raw[t], total);
        for (std::size_t i = 0; i < k1 + k2; ++i)
          if (!couplings[t][i].is_zero()) w[i] += lambda * couplings[t][i];
      }
      images.push_back(map_coupling(w));
    }
    result.coupling_count = options.coupling_count;
    result.method = options.coupling_count > 0 ? FusionMethod::SampledInner : FusionMethod::CouplingVerticesInner;
  }
  result.joint = CredalSet(canonicalize(FuncSet(quotient.out, std::move(images))));
  return result;
}

}  // namespace credal
