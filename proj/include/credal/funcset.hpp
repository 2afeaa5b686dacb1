#pragma once

// Nonnegative functions on product spaces and convex sets of them, with the
// set-level algebra: pointwise product, combination, marginalization,
// scaling and equivalence of unnormalized sets.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "credal/errors.hpp"
#include "credal/geometry.hpp"
#include "credal/rational.hpp"
#include "credal/space.hpp"

namespace credal {

/// Dense nonnegative function over the cells of a space.
class Func {
 public:
  Func(Space space, std::vector<Rational> values) : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_.size())
      throw InputError("function has " + std::to_string(values_.size()) + " values, space '" + space_.describe() +
                       "' has " + std::to_string(space_.size()) + " cells");
    for (const auto& v : values_)
      if (v.sign() < 0) throw InputError("negative function value " + v.str());
  }

  static Func constant(Space space, const Rational& value) {
    const std::size_t n = space.size();
    return Func(std::move(space), std::vector<Rational>(n, value));
  }

  const Space& space() const noexcept { return space_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& operator[](std::size_t cell) const { return values_[cell]; }

  Rational mass() const {
    Rational s;
    for (const auto& v : values_) s += v;
    return s;
  }

  bool is_null() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v.is_zero(); });
  }

  friend bool operator==(const Func&, const Func&) = default;

 private:
  Space space_;
  std::vector<Rational> values_;
};

/// h·g on the union space: (h·g)(cell) = h(proj_h cell) · g(proj_g cell).
inline Func product(const Func& h, const Func& g) {
  Space joint = h.space().united(g.space());
  const auto ph = joint.projection(h.space());
  const auto pg = joint.projection(g.space());
  std::vector<Rational> out(joint.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    const Rational& a = h[ph[c]];
    if (a.is_zero()) continue;
    const Rational& b = g[pg[c]];
    if (!b.is_zero()) out[c] = a * b;
  }
  return Func(std::move(joint), std::move(out));
}

/// Sums out every variable not in `sub`.
inline Func marginalize(const Func& h, const Space& sub) {
  const auto proj = h.space().projection(sub);
  std::vector<Rational> out(sub.size());
  for (std::size_t c = 0; c < proj.size(); ++c)
    if (!h[c].is_zero()) out[proj[c]] += h[c];
  return Func(sub, std::move(out));
}

/// Same function laid out over a permutation of its variables.
inline Func reorder(const Func& h, const Space& target) {
  if (!h.space().same_variables(target))
    throw InputError("cannot lay out '" + h.space().describe() + "' as '" + target.describe() + "'");
  const auto proj = target.projection(h.space());
  std::vector<Rational> out(target.size());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = h[proj[c]];
  return Func(target, std::move(out));
}

/// Convex set of functions on one space, held as a finite generator list.
/// Two FuncSets denote the same set when their hulls are equal; the list
/// itself need not be minimal unless it was canonicalized.
class FuncSet {
 public:
  FuncSet(Space space, std::vector<Point> vertices) : space_(std::move(space)), vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw InputError("a function set needs at least one vertex");
    const std::size_t n = space_.size();
    for (const auto& v : vertices_) {
      if (v.size() != n)
        throw InputError("vertex has " + std::to_string(v.size()) + " values, space '" + space_.describe() +
                         "' has " + std::to_string(n) + " cells");
      for (const auto& x : v)
        if (x.sign() < 0) throw InputError("negative vertex value " + x.str());
    }
  }

  static FuncSet singleton(const Func& f) { return FuncSet(f.space(), {f.values()}); }

  const Space& space() const noexcept { return space_; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  Func vertex(std::size_t i) const { return Func(space_, vertices_[i]); }
  PointList points() const { return PointList(space_.size(), vertices_); }

 private:
  Space space_;
  std::vector<Point> vertices_;
};

inline FuncSet canonicalize(const FuncSet& h) { return FuncSet(h.space(), canonicalize(h.points()).points()); }

inline FuncSet reorder(const FuncSet& h, const Space& target) {
  if (h.space() == target) return h;
  if (!h.space().same_variables(target))
    throw InputError("cannot lay out '" + h.space().describe() + "' as '" + target.describe() + "'");
  const auto proj = target.projection(h.space());
  std::vector<Point> out;
  out.reserve(h.size());
  for (const auto& v : h.vertices()) {
    Point p(target.size());
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = v[proj[c]];
    out.push_back(std::move(p));
  }
  return FuncSet(target, std::move(out));
}

/// hull(a) ⊆ hull(b); b is laid out over a's variable order when needed.
inline bool hull_subset(const FuncSet& a, const FuncSet& b) {
  return hull_subset(a.points(), reorder(b, a.space()).points());
}

inline bool hull_equal(const FuncSet& a, const FuncSet& b) {
  const FuncSet bb = reorder(b, a.space());
  return hull_subset(a.points(), bb.points()) && hull_subset(bb.points(), a.points());
}

/// H ⊗ G: every pairwise vertex product, reduced to extreme points.
inline FuncSet combine(const FuncSet& h, const FuncSet& g) {
  Space joint = h.space().united(g.space());
  const auto ph = joint.projection(h.space());
  const auto pg = joint.projection(g.space());
  std::vector<Point> out;
  out.reserve(h.size() * g.size());
  for (const auto& a : h.vertices())
    for (const auto& b : g.vertices()) {
      Point p(joint.size());
      for (std::size_t c = 0; c < p.size(); ++c) {
        const Rational& x = a[ph[c]];
        if (x.is_zero()) continue;
        const Rational& y = b[pg[c]];
        if (!y.is_zero()) p[c] = x * y;
      }
      out.push_back(std::move(p));
    }
  return canonicalize(FuncSet(std::move(joint), std::move(out)));
}

/// Vertex-wise marginal onto `onto` (kept in the space's variable order).
inline FuncSet marginalize(const FuncSet& h, const VarList& onto) {
  if (onto.empty()) throw InputError("marginalization onto an empty variable set");
  const Space sub = h.space().subspace(onto);
  if (sub == h.space()) return canonicalize(h);
  const auto proj = h.space().projection(sub);
  std::vector<Point> out;
  out.reserve(h.size());
  for (const auto& v : h.vertices()) {
    Point p(sub.size());
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!v[c].is_zero()) p[proj[c]] += v[c];
    out.push_back(std::move(p));
  }
  return canonicalize(FuncSet(sub, std::move(out)));
}

inline FuncSet scale(const FuncSet& h, const Rational& alpha) {
  if (alpha.sign() <= 0) throw InputError("scale factor must be positive, got " + alpha.str());
  std::vector<Point> out = h.vertices();
  for (auto& v : out)
    for (auto& x : v) x *= alpha;
  return FuncSet(h.space(), std::move(out));
}

/// The generator list with the null function appended.
inline FuncSet with_null(const FuncSet& h) {
  std::vector<Point> out = h.vertices();
  out.emplace_back(h.space().size(), Rational());
  return FuncSet(h.space(), std::move(out));
}

inline Rational max_mass(const FuncSet& h) {
  Rational best;
  for (const auto& v : h.vertices()) {
    Rational m;
    for (const auto& x : v) m += x;
    if (m > best) best = m;
  }
  return best;
}

/// Decides whether CH(H1 ∪ {0}) = α · CH(H2 ∪ {0}) for some α > 0.
///
/// Total mass is linear, so its maximum over a hull is reached at a vertex,
/// and the null function adds mass 0. Scaling by α multiplies that maximum
/// by α, hence the only candidate is α = max_mass(H1) / max_mass(H2). When
/// both maxima vanish both hulls are {0}; when exactly one does no α exists.
inline bool equivalent(const FuncSet& h1, const FuncSet& h2) {
  if (!h1.space().same_variables(h2.space()))
    throw InputError("equivalence between sets on '" + h1.space().describe() + "' and '" + h2.space().describe() + "'");
  const Rational m1 = max_mass(h1);
  const Rational m2 = max_mass(h2);
  if (m1.is_zero() && m2.is_zero()) return true;
  if (m1.is_zero() || m2.is_zero()) return false;
  return hull_equal(with_null(h1), scale(with_null(h2), m1 / m2));
}

}  // namespace credal
