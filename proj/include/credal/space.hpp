#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "credal/errors.hpp"
#include "credal/rational.hpp"

namespace credal {

using VarList = std::vector<std::string>;

struct Variable {
  std::string name;
  std::size_t cardinality = 0;

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Ordered product of finite variables. Cells are indexed row-major with the
/// last variable varying fastest.
class Space {
 public:
  Space() = default;

  explicit Space(std::vector<Variable> variables) : vars_(std::move(variables)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name.empty()) throw InputError("variable with empty name");
      if (vars_[i].cardinality == 0) throw InputError("variable '" + vars_[i].name + "' has cardinality 0");
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[j].name == vars_[i].name) throw InputError("duplicate variable '" + vars_[i].name + "'");
    }
  }

  const std::vector<Variable>& variables() const noexcept { return vars_; }
  std::size_t arity() const noexcept { return vars_.size(); }

  std::size_t size() const noexcept {
    std::size_t n = 1;
    for (const auto& v : vars_) n *= v.cardinality;
    return n;
  }

  std::optional<std::size_t> position(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    return std::nullopt;
  }

  bool contains(std::string_view name) const { return position(name).has_value(); }

  bool contains_all(const VarList& names) const {
    return std::all_of(names.begin(), names.end(), [&](const auto& n) { return contains(n); });
  }

  VarList names() const {
    VarList out;
    for (const auto& v : vars_) out.push_back(v.name);
    return out;
  }

  std::vector<std::size_t> assignment(std::size_t cell) const {
    std::vector<std::size_t> a(vars_.size());
    for (std::size_t i = vars_.size(); i-- > 0;) {
      a[i] = cell % vars_[i].cardinality;
      cell /= vars_[i].cardinality;
    }
    return a;
  }

  std::size_t cell(std::span<const std::size_t> assignment) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) c = c * vars_[i].cardinality + assignment[i];
    return c;
  }

  /// The listed variables, kept in this space's order.
  Space subspace(const VarList& names) const {
    for (const auto& n : names)
      if (!contains(n)) throw InputError("unknown variable '" + n + "'");
    std::vector<Variable> kept;
    for (const auto& v : vars_)
      if (std::find(names.begin(), names.end(), v.name) != names.end()) kept.push_back(v);
    return Space(std::move(kept));
  }

  /// Variables of this space not in `names`, in order.
  VarList complement(const VarList& names) const {
    VarList out;
    for (const auto& v : vars_)
      if (std::find(names.begin(), names.end(), v.name) == names.end()) out.push_back(v.name);
    return out;
  }

  /// Union ordered by first appearance (this space first).
  Space united(const Space& other) const {
    std::vector<Variable> out = vars_;
    for (const auto& v : other.vars_) {
      auto pos = position(v.name);
      if (pos) {
        if (vars_[*pos].cardinality != v.cardinality)
          throw InputError("variable '" + v.name + "' has cardinality " + std::to_string(vars_[*pos].cardinality) +
                           " and " + std::to_string(v.cardinality));
      } else {
        out.push_back(v);
      }
    }
    return Space(std::move(out));
  }

  /// For each cell of this space, the index of its projection onto `sub`,
  /// whose variables must all occur here with equal cardinalities.
  std::vector<std::size_t> projection(const Space& sub) const {
    std::vector<std::size_t> where(sub.arity());
    for (std::size_t i = 0; i < sub.arity(); ++i) {
      auto pos = position(sub.vars_[i].name);
      if (!pos) throw InputError("variable '" + sub.vars_[i].name + "' not in space");
      if (vars_[*pos].cardinality != sub.vars_[i].cardinality)
        throw InputError("cardinality clash on '" + sub.vars_[i].name + "'");
      where[i] = *pos;
    }
    std::vector<std::size_t> out(size());
    std::vector<std::size_t> a(arity(), 0), sa(sub.arity());
    for (std::size_t c = 0; c < out.size(); ++c) {
      for (std::size_t i = 0; i < sub.arity(); ++i) sa[i] = a[where[i]];
      out[c] = sub.cell(sa);
      for (std::size_t i = arity(); i-- > 0;) {
        if (++a[i] < vars_[i].cardinality) break;
        a[i] = 0;
      }
    }
    return out;
  }

  /// Same variables regardless of order.
  bool same_variables(const Space& other) const {
    if (arity() != other.arity()) return false;
    for (const auto& v : other.vars_) {
      auto pos = position(v.name);
      if (!pos || vars_[*pos].cardinality != v.cardinality) return false;
    }
    return true;
  }

  /// "X:2 Y:3"
  std::string describe() const {
    std::string s;
    for (const auto& v : vars_) {
      if (!s.empty()) s += ' ';
      s += v.name + ':' + std::to_string(v.cardinality);
    }
    return s;
  }

  friend bool operator==(const Space&, const Space&) = default;

 private:
  std::vector<Variable> vars_;
};

/// Concatenation of variable lists without duplicates.
inline VarList join(const VarList& a, const VarList& b) {
  VarList out = a;
  for (const auto& n : b)
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  return out;
}

inline std::string join_names(const VarList& names) {
  std::string s;
  for (const auto& n : names) {
    if (!s.empty()) s += ',';
    s += n;
  }
  return s;
}

}  // namespace credal
