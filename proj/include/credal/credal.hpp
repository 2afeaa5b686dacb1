#pragma once

// Normalized credal sets and their probabilistic operators: marginal and
// conditional sets, recomposition and the cause test, and the two
// conditioning rules (unnormalized likelihood product, and per-distribution
// Dempster normalization).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credal/errors.hpp"
#include "credal/funcset.hpp"

namespace credal {

/// Convex set of probability distributions: every vertex has mass exactly 1.
class CredalSet {
 public:
  explicit CredalSet(FuncSet carrier) : carrier_(std::move(carrier)) {
    for (std::size_t i = 0; i < carrier_.size(); ++i) {
      Rational m;
      for (const auto& x : carrier_.vertices()[i]) m += x;
      if (m != Rational(1))
        throw ValidationError("vertex " + std::to_string(i + 1) + " has total mass " + m.str() + ", expected 1");
    }
  }

  CredalSet(Space space, std::vector<Point> vertices) : CredalSet(FuncSet(std::move(space), std::move(vertices))) {}

  const FuncSet& carrier() const noexcept { return carrier_; }
  const Space& space() const noexcept { return carrier_.space(); }
  const std::vector<Point>& vertices() const noexcept { return carrier_.vertices(); }
  std::size_t size() const noexcept { return carrier_.size(); }
  Func vertex(std::size_t i) const { return carrier_.vertex(i); }

  operator const FuncSet&() const noexcept { return carrier_; }  // NOLINT(google-explicit-constructor)

 private:
  FuncSet carrier_;
};

inline CredalSet canonicalize(const CredalSet& h) { return CredalSet(canonicalize(h.carrier())); }

/// Marginal credal set; summation preserves normalization.
inline CredalSet marginal(const CredalSet& h, const VarList& onto) {
  return CredalSet(marginalize(h.carrier(), onto));
}

inline CredalSet reorder(const CredalSet& h, const Space& target) { return CredalSet(reorder(h.carrier(), target)); }

/// Convex set of conditional tables: for each vertex and each assignment of
/// the conditioning variables, the remaining slice sums to 1, or to 0 where
/// the conditioning event had probability 0.
class ConditionalSet {
 public:
  ConditionalSet(FuncSet carrier, VarList given) : carrier_(std::move(carrier)), given_(std::move(given)) {
    const Space g = carrier_.space().subspace(given_);
    for (const auto& v : carrier_.vertices()) {
      const Func slice_sums = marginalize(Func(carrier_.space(), v), g);
      for (const auto& s : slice_sums.values())
        if (!s.is_zero() && s != Rational(1))
          throw ValidationError("conditional slice sums to " + s.str() + ", expected 0 or 1");
    }
  }

  const FuncSet& carrier() const noexcept { return carrier_; }
  const VarList& given() const noexcept { return given_; }
  const Space& space() const noexcept { return carrier_.space(); }

 private:
  FuncSet carrier_;
  VarList given_;
};

/// Likelihood function with values in [0, 1].
class Likelihood {
 public:
  Likelihood(Space space, std::vector<Rational> values) : f_(std::move(space), std::move(values)) {
    for (const auto& v : f_.values())
      if (v > Rational(1)) throw InputError("likelihood value " + v.str() + " exceeds 1");
  }

  static Likelihood unit(const Space& space) { return Likelihood(space, std::vector<Rational>(space.size(), 1)); }

  /// 0/1 likelihood of the event made of the given cells.
  static Likelihood indicator(const Space& space, const std::vector<std::size_t>& cells) {
    std::vector<Rational> v(space.size(), Rational());
    for (auto c : cells) {
      if (c >= space.size()) throw InputError("indicator cell out of range");
      v[c] = Rational(1);
    }
    return Likelihood(space, std::move(v));
  }

  const Func& func() const noexcept { return f_; }
  const Space& space() const noexcept { return f_.space(); }
  const std::vector<Rational>& values() const noexcept { return f_.values(); }

  friend bool operator==(const Likelihood&, const Likelihood&) = default;

 private:
  Func f_;
};

/// "Y:0,1,1"
inline std::string describe(const Likelihood& l) {
  std::string s;
  for (const auto& v : l.space().variables()) {
    if (!s.empty()) s += '*';
    s += v.name;
  }
  s += ':';
  for (std::size_t i = 0; i < l.values().size(); ++i) {
    if (i) s += ',';
    s += l.values()[i].str();
  }
  return s;
}

namespace detail {

inline void require_proper_subset(const Space& space, const VarList& vars, const char* what) {
  if (vars.empty()) throw InputError(std::string(what) + " variables must be nonempty");
  if (!space.contains_all(vars)) throw InputError(std::string(what) + " variables not all in space '" + space.describe() + "'");
  if (space.subspace(vars).arity() == space.arity())
    throw InputError(std::string(what) + " variables must be a proper subset of the space");
}

inline void require_likelihood_fits(const Space& space, const Likelihood& l) {
  for (const auto& v : l.space().variables()) {
    auto pos = space.position(v.name);
    if (!pos) throw InputError("likelihood variable '" + v.name + "' not in space '" + space.describe() + "'");
    if (space.variables()[*pos].cardinality != v.cardinality)
      throw InputError("likelihood variable '" + v.name + "' has mismatched cardinality");
  }
}

// p / p^{given}, with 0/0 = 0.
inline Point divide_by_marginal(const Space& space, const Point& p, const Space& given) {
  const auto proj = space.projection(given);
  std::vector<Rational> m(given.size());
  for (std::size_t c = 0; c < p.size(); ++c)
    if (!p[c].is_zero()) m[proj[c]] += p[c];
  Point q(p.size());
  for (std::size_t c = 0; c < p.size(); ++c)
    if (!p[c].is_zero()) q[c] = p[c] / m[proj[c]];
  return q;
}

}  // namespace detail

/// H^{rest | given}: each vertex divided pointwise by its marginal on `given`.
inline ConditionalSet conditional_set(const CredalSet& h, const VarList& given) {
  detail::require_proper_subset(h.space(), given, "conditioning");
  const Space g = h.space().subspace(given);
  std::vector<Point> out;
  out.reserve(h.size());
  for (const auto& v : h.vertices()) out.push_back(detail::divide_by_marginal(h.space(), v, g));
  return ConditionalSet(canonicalize(FuncSet(h.space(), std::move(out))), g.names());
}

/// Marginal on the cause variables combined with the conditional given them:
/// the largest set with that marginal and that conditional. Always contains H.
inline FuncSet recompose(const CredalSet& h, const VarList& cause) {
  detail::require_proper_subset(h.space(), cause, "cause");
  // Conditional first so the combined layout is H's own variable order.
  return combine(conditional_set(h, cause).carrier(), marginalize(h.carrier(), cause));
}

inline bool is_cause(const CredalSet& h, const VarList& cause) { return hull_equal(h.carrier(), recompose(h, cause)); }

/// Likelihood-product conditioning H ⊗ {l}: unnormalized, mass information
/// kept, null function possible. `l` is extended cylindrically to H's space.
inline FuncSet condition_mc(const FuncSet& h, const Likelihood& l) {
  detail::require_likelihood_fits(h.space(), l);
  return combine(h, FuncSet::singleton(l.func()));
}

/// Dempster conditioning: each positive-mass vertex masked by l and
/// renormalized. nullopt stands for the empty result (every vertex gets mass 0).
///
/// A mixture Σ λ_i p_i conditions to Σ (λ_i r_i / Σ λ_j r_j) · (p_i l / r_i),
/// a convex combination of the normalized positive-mass vertices, and every
/// such combination arises from some λ. So vertex-level computation generates
/// the full definitional set.
inline std::optional<CredalSet> condition_dempster(const CredalSet& h, const Likelihood& l) {
  detail::require_likelihood_fits(h.space(), l);
  const auto pl = h.space().projection(l.space());
  std::vector<Point> out;
  for (const auto& v : h.vertices()) {
    Point q(v.size());
    Rational r;
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c].is_zero() || l.values()[pl[c]].is_zero()) continue;
      q[c] = v[c] * l.values()[pl[c]];
      r += q[c];
    }
    if (r.is_zero()) continue;
    for (auto& x : q)
      if (!x.is_zero()) x /= r;
    out.push_back(std::move(q));
  }
  if (out.empty()) return std::nullopt;
  return CredalSet(canonicalize(FuncSet(h.space(), std::move(out))));
}

enum class Rule { MoralCampos, Dempster };

inline const char* to_string(Rule r) { return r == Rule::MoralCampos ? "mc" : "dempster"; }

/// Conditions under `rule` and marginalizes onto `onto`; nullopt is the empty
/// Dempster outcome.
inline std::optional<FuncSet> condition_then_marginal(const CredalSet& h, Rule rule, const Likelihood& l,
                                                      const VarList& onto) {
  if (rule == Rule::MoralCampos) return marginalize(condition_mc(h.carrier(), l), onto);
  auto d = condition_dempster(h, l);
  if (!d) return std::nullopt;
  return marginalize(d->carrier(), onto);
}

}  // namespace credal
