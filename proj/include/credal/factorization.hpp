#pragma once

#include <cstddef>
#include <optional>

#include "credal/funcset.hpp"

namespace credal {

/// Checks the division-free (conditional) independence identity
///
///   p(x,y,z) · p(z) = p(x,z) · p(y,z)      for every cell,
///
/// on the marginal of `p` over X∪Y∪Z. With Z empty, p(z) is the total mass
/// and the identity reads p(x,y) · |p| = p(x) · p(y). Returns the first
/// violating cell of the X∪Y∪Z marginal space, or nullopt when it holds.
inline std::optional<std::size_t> factorization_violation(const Func& p, const VarList& x, const VarList& y,
                                                          const VarList& z) {
  const Space& s = p.space();
  const Space joint = s.subspace(join(join(x, y), z));
  const Func q = marginalize(p, joint);
  const Space xz = joint.subspace(join(x, z));
  const Space yz = joint.subspace(join(y, z));
  const Func mxz = marginalize(q, xz);
  const Func myz = marginalize(q, yz);
  const auto pxz = joint.projection(xz);
  const auto pyz = joint.projection(yz);

  std::vector<Rational> mz;
  std::vector<std::size_t> pz;
  if (z.empty()) {
    mz.push_back(q.mass());
    pz.assign(joint.size(), 0);
  } else {
    const Space zs = joint.subspace(z);
    mz = marginalize(q, zs).values();
    pz = joint.projection(zs);
  }
  for (std::size_t c = 0; c < joint.size(); ++c)
    if (q[c] * mz[pz[c]] != mxz[pxz[c]] * myz[pyz[c]]) return c;
  return std::nullopt;
}

}  // namespace credal
