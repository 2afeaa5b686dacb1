#pragma once

// Exact polytope primitives on finite point lists: hull membership, extreme
// point extraction, inclusion/equality of hulls, and conversions between the
// vertex and the inequality description (brute force, desk-scale only).

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "credal/errors.hpp"
#include "credal/linalg.hpp"
#include "credal/lp.hpp"
#include "credal/rational.hpp"

namespace credal {

using Point = std::vector<Rational>;

/// Nonempty list of points sharing one dimension.
class PointList {
 public:
  PointList(std::size_t dimension, std::vector<Point> points) : dim_(dimension), points_(std::move(points)) {
    if (dim_ == 0) throw InputError("point list dimension must be positive");
    if (points_.empty()) throw InputError("point list must be nonempty");
    for (const auto& p : points_)
      if (p.size() != dim_)
        throw InputError("point of dimension " + std::to_string(p.size()) + " in a list of dimension " +
                         std::to_string(dim_));
  }

  explicit PointList(std::vector<Point> points)
      : PointList(points.empty() ? 0 : points.front().size(), std::move(points)) {}

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::size_t dim_;
  std::vector<Point> points_;
};

namespace detail {

inline void require_dimension(std::size_t got, std::size_t want) {
  if (got != want)
    throw InputError("dimension mismatch: " + std::to_string(got) + " vs " + std::to_string(want));
}

inline bool in_hull_of(const Point& p, const std::vector<const Point*>& verts) {
  if (verts.empty()) return false;
  const std::size_t d = p.size();
  for (const Point* v : verts)
    if (*v == p) return true;
  if (verts.size() == 1) return false;
  // Bounding box rejection.
  for (std::size_t c = 0; c < d; ++c) {
    Rational lo = (*verts[0])[c], hi = lo;
    for (const Point* v : verts) {
      if ((*v)[c] < lo) lo = (*v)[c];
      if ((*v)[c] > hi) hi = (*v)[c];
    }
    if (p[c] < lo || p[c] > hi) return false;
  }
  // lambda >= 0, sum lambda = 1, sum lambda_i v_i = p
  const std::size_t k = verts.size();
  LinearSystem sys(k, /*nonneg=*/true);
  sys.add(std::vector<Rational>(k, Rational(1)), Relation::Equal, Rational(1));
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<Rational> row(k);
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
      row[i] = (*verts[i])[c];
      any = any || !row[i].is_zero();
    }
    if (!any) continue;  // coordinate pinned at zero on every vertex; box test covered p[c]
    sys.add(std::move(row), Relation::Equal, p[c]);
  }
  return lp_feasible(sys).feasible();
}

}  // namespace detail

/// True iff `point` is a convex combination of `vertices`.
inline bool in_hull(const Point& point, const PointList& vertices) {
  detail::require_dimension(point.size(), vertices.dimension());
  std::vector<const Point*> refs;
  refs.reserve(vertices.size());
  for (const auto& v : vertices) refs.push_back(&v);
  return detail::in_hull_of(point, refs);
}

/// Extreme points of the hull, in order of first occurrence.
inline PointList canonicalize(const PointList& input) {
  std::vector<Point> distinct;
  for (const auto& p : input)
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
  if (distinct.size() <= 2) return PointList(input.dimension(), std::move(distinct));
  // For distinct points, p is extreme iff it is not in the hull of the others.
  std::vector<Point> extreme;
  std::vector<const Point*> others;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < distinct.size(); ++j)
      if (j != i) others.push_back(&distinct[j]);
    if (!detail::in_hull_of(distinct[i], others)) extreme.push_back(distinct[i]);
  }
  return PointList(input.dimension(), std::move(extreme));
}

inline bool hull_subset(const PointList& a, const PointList& b) {
  detail::require_dimension(a.dimension(), b.dimension());
  for (const auto& p : a)
    if (!in_hull(p, b)) return false;
  return true;
}

inline bool hull_equal(const PointList& a, const PointList& b) { return hull_subset(a, b) && hull_subset(b, a); }

/// First point of `a` outside hull(b), if any.
inline std::optional<Point> first_outside(const PointList& a, const PointList& b) {
  detail::require_dimension(a.dimension(), b.dimension());
  for (const auto& p : a)
    if (!in_hull(p, b)) return p;
  return std::nullopt;
}

namespace detail {

// Scales a constraint so its first nonzero coefficient has magnitude one and
// turns >= into <=, giving a canonical key for deduplication.
inline LinearConstraint normalized(LinearConstraint c) {
  if (c.relation == Relation::GreaterEqual) {
    for (auto& v : c.coeffs) v = -v;
    c.rhs = -c.rhs;
    c.relation = Relation::LessEqual;
  }
  Rational lead;
  for (const auto& v : c.coeffs)
    if (!v.is_zero()) {
      lead = v.abs();
      break;
    }
  if (!lead.is_zero() && lead != Rational(1)) {
    for (auto& v : c.coeffs) v /= lead;
    c.rhs /= lead;
  }
  if (c.relation == Relation::Equal) {
    // Equalities are sign-free; fix the leading coefficient to +1.
    for (const auto& v : c.coeffs)
      if (!v.is_zero()) {
        if (v.sign() < 0) {
          for (auto& w : c.coeffs) w = -w;
          c.rhs = -c.rhs;
        }
        break;
      }
  }
  return c;
}

inline bool same_constraint(const LinearConstraint& a, const LinearConstraint& b) {
  return a.relation == b.relation && a.rhs == b.rhs && a.coeffs == b.coeffs;
}

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order;
// stops early when f returns false.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Inequality (plus equality) description of the hull of `vertices`.
///
/// Equalities pin the affine hull; each facet is found as a hyperplane inside
/// the affine hull spanned by an affinely independent subset of points that
/// leaves every point on one side.
inline std::vector<LinearConstraint> facet_representation(const PointList& vertices) {
  const std::size_t d = vertices.dimension();
  std::vector<Point> pts;
  for (const auto& p : vertices)
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  const Point& origin = pts.front();

  // Basis of the direction space of the affine hull.
  linalg::Matrix basis;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    linalg::Vector diff(d);
    for (std::size_t c = 0; c < d; ++c) diff[c] = pts[i][c] - origin[c];
    basis.push_back(diff);
    if (linalg::rank(basis) < basis.size()) basis.pop_back();
  }
  const std::size_t r = basis.size();

  std::vector<LinearConstraint> out;
  auto push_unique = [&out](LinearConstraint c) {
    c = detail::normalized(std::move(c));
    for (const auto& e : out)
      if (detail::same_constraint(e, c)) return;
    out.push_back(std::move(c));
  };

  for (auto& normal : linalg::null_space(basis, d)) {
    Rational rhs = linalg::dot(normal, origin);
    push_unique({std::move(normal), Relation::Equal, std::move(rhs)});
  }
  if (r == 0) return out;

  detail::for_each_subset(pts.size(), r, [&](const std::vector<std::size_t>& subset) {
    const Point& q0 = pts[subset[0]];
    // Coefficients c (length r) with (sum c_i B_i) . (q_j - q0) = 0.
    linalg::Matrix g;
    for (std::size_t t = 1; t < subset.size(); ++t) {
      linalg::Vector diff(d);
      for (std::size_t c = 0; c < d; ++c) diff[c] = pts[subset[t]][c] - q0[c];
      linalg::Vector row(r);
      for (std::size_t i = 0; i < r; ++i) row[i] = linalg::dot(basis[i], diff);
      g.push_back(std::move(row));
    }
    auto ns = linalg::null_space(g, r);
    if (ns.size() != 1) return true;
    linalg::Vector a(d, Rational());
    for (std::size_t i = 0; i < r; ++i)
      if (!ns[0][i].is_zero())
        for (std::size_t c = 0; c < d; ++c) a[c] += ns[0][i] * basis[i][c];
    const Rational b = linalg::dot(a, q0);
    bool any_pos = false, any_neg = false;
    for (const auto& p : pts) {
      const int s = (linalg::dot(a, p) - b).sign();
      any_pos = any_pos || s > 0;
      any_neg = any_neg || s < 0;
    }
    if (any_pos && any_neg) return true;
    push_unique({std::move(a), any_pos ? Relation::GreaterEqual : Relation::LessEqual, b});
    return true;
  });
  return out;
}

/// Exact vertex list of a bounded polyhedron by basis enumeration.
/// Empty region yields an empty list; an unbounded region is an input error.
inline std::vector<Point> vertex_enumerate(const LinearSystem& system) {
  system.validate();
  const std::size_t n = system.num_vars;
  std::vector<LinearConstraint> eqs, ineqs;
  for (const auto& c : system.constraints) (c.relation == Relation::Equal ? eqs : ineqs).push_back(c);
  if (system.nonnegative)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> row(n, Rational());
      row[j] = Rational(1);
      ineqs.push_back({std::move(row), Relation::GreaterEqual, Rational()});
    }

  LinearSystem full(n);
  full.constraints = eqs;
  full.constraints.insert(full.constraints.end(), ineqs.begin(), ineqs.end());
  if (!lp_feasible(full).feasible()) return {};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> obj(n, Rational());
    obj[j] = Rational(1);
    if (lp_maximize(full, obj).status == LpStatus::Unbounded || lp_minimize(full, obj).status == LpStatus::Unbounded)
      throw InputError("vertex enumeration of an unbounded region");
  }

  linalg::Matrix eq_rows;
  for (const auto& e : eqs) eq_rows.push_back(e.coeffs);
  const std::size_t eq_rank = linalg::rank(eq_rows);
  const std::size_t need = n - eq_rank;

  std::vector<Point> verts;
  detail::for_each_subset(ineqs.size(), need, [&](const std::vector<std::size_t>& subset) {
    linalg::Matrix aug;
    for (const auto& e : eqs) {
      auto row = e.coeffs;
      row.push_back(e.rhs);
      aug.push_back(std::move(row));
    }
    for (auto i : subset) {
      auto row = ineqs[i].coeffs;
      row.push_back(ineqs[i].rhs);
      aug.push_back(std::move(row));
    }
    auto x = linalg::solve_unique(std::move(aug), n);
    if (!x || !full.satisfied_by(*x)) return true;
    if (std::find(verts.begin(), verts.end(), *x) == verts.end()) verts.push_back(std::move(*x));
    return true;
  });
  return verts;
}

}  // namespace credal
