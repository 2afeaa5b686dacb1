#pragma once

// Diagnostics for fused joints: the three properties the fused set is meant
// to have, and the check that a conditionally factorizable joint is
// recovered by fusing its own marginals.

#include <cstddef>
#include <optional>
#include <vector>

#include "credal/fusion.hpp"
#include "credal/independence.hpp"

namespace credal {

struct FusionProperties {
  /// Marginals of the joint against the restricted inputs: equal when
  /// `marginals_equal`, otherwise only `marginals_inside` is expected for an
  /// inner approximation.
  bool marginals_inside = false;
  bool marginals_equal = false;
  bool vertices_factorize = false;
  std::optional<std::size_t> non_factorizing_vertex;
  /// Candidate joints that met the hypotheses (same marginals, conditional
  /// type 2) and how many of them lay inside the fused set.
  std::size_t candidates_checked = 0;
  std::size_t candidates_inside = 0;
  bool maximality_asserted = false;  // only for exact results

  bool ok(bool exact) const noexcept {
    const bool first = exact ? marginals_equal : marginals_inside;
    return first && vertices_factorize && (!maximality_asserted || candidates_inside == candidates_checked);
  }
};

namespace detail {

struct FusionRoles {
  VarList first_own, second_own, shared;
};

inline FusionRoles fusion_roles(const FusionResult& r) {
  FusionRoles roles;
  const Space& s1 = r.first.space();
  const Space& s2 = r.second.space();
  for (const auto& v : s1.variables()) (s2.contains(v.name) ? roles.shared : roles.first_own).push_back(v.name);
  roles.second_own = s2.complement(roles.shared);
  return roles;
}

}  // namespace detail

inline FusionProperties fusion_properties(const FusionResult& r, const std::vector<CredalSet>& candidates = {}) {
  FusionProperties p;
  const auto roles = detail::fusion_roles(r);
  const FuncSet m1 = marginalize(r.joint.carrier(), r.first.space().names());
  const FuncSet m2 = marginalize(r.joint.carrier(), r.second.space().names());
  p.marginals_inside = hull_subset(m1, r.first.carrier()) && hull_subset(m2, r.second.carrier());
  p.marginals_equal = p.marginals_inside && hull_subset(r.first.carrier(), m1) && hull_subset(r.second.carrier(), m2);

  p.vertices_factorize = true;
  for (std::size_t i = 0; i < r.joint.size(); ++i) {
    if (factorization_violation(r.joint.vertex(i), roles.first_own, roles.second_own, roles.shared)) {
      p.vertices_factorize = false;
      p.non_factorizing_vertex = i;
      break;
    }
  }

  p.maximality_asserted = r.exact;
  for (const auto& c : candidates) {
    if (!c.space().same_variables(r.joint.space())) throw InputError("candidate joint lives on another space");
    if (!hull_equal(marginalize(c.carrier(), r.first.space().names()), r.first.carrier())) continue;
    if (!hull_equal(marginalize(c.carrier(), r.second.space().names()), r.second.carrier())) continue;
    if (!type2(c, roles.first_own, roles.second_own, roles.shared).holds()) continue;
    ++p.candidates_checked;
    if (hull_subset(c.carrier(), r.joint.carrier())) ++p.candidates_inside;
  }
  return p;
}

/// Fuses H's own marginals on X∪Z and Y∪Z and compares with H. Equality is
/// required only when the fusion is exact and H factorizes given Z.
struct FactorizationFusionCheck {
  bool consistent = false;  // the marginals could be fused
  bool exact = false;
  Status factorization = Status::Undecided;
  bool equal = false;
  bool asserted = false;

  bool ok() const noexcept { return !asserted || equal; }
};

inline FactorizationFusionCheck factorization_fusion_check(const CredalSet& h, const VarList& x, const VarList& y,
                                                           const VarList& z) {
  detail::require_groups(h.space(), x, y, z);
  if (z.empty()) throw InputError("the fusion check needs shared variables");
  const CredalSet joint = detail::restricted(h, join(join(x, y), z));
  FactorizationFusionCheck c;
  auto fused = fuse(marginal(joint, join(x, z)), marginal(joint, join(y, z)), z);
  if (!fused) return c;
  c.consistent = true;
  c.exact = fused->exact;
  c.factorization = type3_conditional(joint, x, y, z).status;
  c.equal = hull_equal(joint.carrier(), fused->joint.carrier());
  c.asserted = c.exact && c.factorization == Status::Holds;
  return c;
}

}  // namespace credal
