#pragma once

// Exact dense-tableau simplex over Rational.
//
// Two-phase method with Bland's smallest-index rule for both the entering and
// the leaving variable, so the pivot sequence can never cycle. Feasibility
// checks stop after phase one.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "credal/errors.hpp"
#include "credal/rational.hpp"

namespace credal {

enum class Relation { LessEqual, GreaterEqual, Equal };

/// coeffs · x  (<= | >= | =)  rhs
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;

  /// Evaluates the constraint at a point of matching dimension.
  bool satisfied_by(std::span<const Rational> x) const {
    Rational lhs;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      if (!coeffs[j].is_zero()) lhs += coeffs[j] * x[j];
    switch (relation) {
      case Relation::LessEqual: return lhs <= rhs;
      case Relation::GreaterEqual: return lhs >= rhs;
      case Relation::Equal: return lhs == rhs;
    }
    return false;
  }
};

struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<LinearConstraint> constraints;
  /// When set, every unknown is additionally constrained to be >= 0.
  bool nonnegative = false;

  LinearSystem() = default;
  explicit LinearSystem(std::size_t n, bool nonneg = false) : num_vars(n), nonnegative(nonneg) {}

  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
  }

  void validate() const {
    for (const auto& c : constraints)
      if (c.coeffs.size() != num_vars)
        throw InputError("constraint has " + std::to_string(c.coeffs.size()) + " coefficients, expected " +
                         std::to_string(num_vars));
  }

  bool satisfied_by(std::span<const Rational> x) const {
    if (x.size() != num_vars) return false;
    if (nonnegative)
      for (const auto& v : x)
        if (v.sign() < 0) return false;
    for (const auto& c : constraints)
      if (!c.satisfied_by(x)) return false;
    return true;
  }
};

enum class LpStatus { Feasible, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> point;  // witness / optimizer when status == Feasible
  Rational objective;           // optimal value for lp_maximize

  bool feasible() const noexcept { return status == LpStatus::Feasible; }
};

namespace detail {

class Tableau {
 public:
  explicit Tableau(const LinearSystem& sys) : sys_(sys) {
    sys.validate();
    n_struct_ = sys.nonnegative ? sys.num_vars : 2 * sys.num_vars;
    rows_ = sys.constraints.size();
    std::size_t n_slack = 0;
    for (const auto& c : sys.constraints)
      if (c.relation != Relation::Equal) ++n_slack;

    // Column layout: structural | slack | artificial.
    slack_begin_ = n_struct_;
    art_begin_ = n_struct_ + n_slack;
    std::vector<bool> needs_artificial(rows_, true);
    std::vector<std::size_t> slack_of_row(rows_, npos);
    std::size_t s = slack_begin_;
    for (std::size_t i = 0; i < rows_; ++i)
      if (sys.constraints[i].relation != Relation::Equal) slack_of_row[i] = s++;

    std::size_t n_art = 0;
    std::vector<bool> flip(rows_, false);
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto& c = sys.constraints[i];
      flip[i] = c.rhs.sign() < 0;
      // After an optional sign flip the slack enters with coefficient
      // +1 for (<=, no flip) and (>=, flip); it can then start basic.
      const bool slack_positive = (c.relation == Relation::LessEqual && !flip[i]) ||
                                  (c.relation == Relation::GreaterEqual && flip[i]);
      needs_artificial[i] = !slack_positive;
      if (needs_artificial[i]) ++n_art;
    }
    cols_ = art_begin_ + n_art;
    width_ = cols_ + 1;
    data_.assign(rows_ * width_, Rational());
    basis_.assign(rows_, npos);

    std::size_t a = art_begin_;
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto& c = sys.constraints[i];
      const Rational sgn = flip[i] ? Rational(-1) : Rational(1);
      for (std::size_t j = 0; j < sys.num_vars; ++j) {
        if (c.coeffs[j].is_zero()) continue;
        const Rational v = flip[i] ? -c.coeffs[j] : c.coeffs[j];
        at(i, j) = v;
        if (!sys.nonnegative) at(i, sys.num_vars + j) = -v;
      }
      if (slack_of_row[i] != npos) at(i, slack_of_row[i]) = c.relation == Relation::LessEqual ? sgn : -sgn;
      rhs(i) = flip[i] ? -c.rhs : c.rhs;
      if (needs_artificial[i]) {
        at(i, a) = Rational(1);
        basis_[i] = a++;
      } else {
        basis_[i] = slack_of_row[i];
      }
    }
  }

  // Phase one; returns false when the system is infeasible.
  bool phase_one() {
    cost_.assign(width_, Rational());
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < art_begin_) continue;
      for (std::size_t j = 0; j < width_; ++j)
        if (j < art_begin_ || j == cols_) {
          if (!at(i, j).is_zero()) cost_[j] -= at(i, j);
        }
    }
    run(cols_);
    // cost_[cols_] holds minus the sum of artificials.
    if (!cost_[cols_].is_zero()) return false;
    drive_out_artificials();
    return true;
  }

  // Minimizes the given objective (length = num_vars) after phase one.
  // Returns false if unbounded.
  bool phase_two(std::span<const Rational> objective) {
    std::vector<Rational> c(cols_, Rational());
    for (std::size_t j = 0; j < sys_.num_vars; ++j) {
      c[j] = objective[j];
      if (!sys_.nonnegative) c[sys_.num_vars + j] = -objective[j];
    }
    cost_.assign(width_, Rational());
    for (std::size_t j = 0; j < cols_; ++j) cost_[j] = c[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const std::size_t b = basis_[i];
      if (b == npos || c[b].is_zero()) continue;
      const Rational cb = c[b];
      for (std::size_t j = 0; j < width_; ++j)
        if (!at(i, j).is_zero()) cost_[j] -= cb * at(i, j);
    }
    return run(art_begin_);
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> col_value(cols_, Rational());
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] != npos) col_value[basis_[i]] = data_[i * width_ + cols_];
    std::vector<Rational> x(sys_.num_vars);
    for (std::size_t j = 0; j < sys_.num_vars; ++j)
      x[j] = sys_.nonnegative ? col_value[j] : col_value[j] - col_value[sys_.num_vars + j];
    return x;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Rational& at(std::size_t i, std::size_t j) { return data_[i * width_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * width_ + j]; }
  Rational& rhs(std::size_t i) { return data_[i * width_ + cols_]; }

  // Bland's rule over columns [0, limit). Returns false on unboundedness.
  bool run(std::size_t limit) {
    for (;;) {
      std::size_t enter = npos;
      for (std::size_t j = 0; j < limit; ++j)
        if (cost_[j].sign() < 0) {
          enter = j;
          break;
        }
      if (enter == npos) return true;
      std::size_t leave = npos;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Rational& a = at(i, enter);
        if (a.sign() <= 0 || basis_[i] == npos) continue;
        Rational ratio = data_[i * width_ + cols_] / a;
        if (leave == npos || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == npos) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = at(r, c);
    if (p != Rational(1))
      for (std::size_t j = 0; j < width_; ++j)
        if (!at(r, j).is_zero()) at(r, j) /= p;
    std::vector<std::size_t> nz;
    nz.reserve(width_);
    for (std::size_t j = 0; j < width_; ++j)
      if (!at(r, j).is_zero()) nz.push_back(j);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, c).is_zero()) continue;
      const Rational f = at(i, c);
      for (std::size_t j : nz) at(i, j) -= f * at(r, j);
    }
    if (!cost_[c].is_zero()) {
      const Rational f = cost_[c];
      for (std::size_t j : nz) cost_[j] -= f * at(r, j);
    }
    basis_[r] = c;
  }

  // Artificials still basic after a successful phase one sit at level zero.
  // Pivot them out on any non-artificial column; rows where that is
  // impossible are redundant and get retired.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] == npos || basis_[i] < art_begin_) continue;
      std::size_t col = npos;
      for (std::size_t j = 0; j < art_begin_; ++j)
        if (!at(i, j).is_zero()) {
          col = j;
          break;
        }
      if (col != npos) {
        pivot(i, col);
      } else {
        basis_[i] = npos;
      }
    }
  }

  const LinearSystem& sys_;
  std::size_t n_struct_ = 0, rows_ = 0, cols_ = 0, width_ = 0;
  std::size_t slack_begin_ = 0, art_begin_ = 0;
  std::vector<Rational> data_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Decides whether the system has a solution and returns an exact witness.
inline LpResult lp_feasible(const LinearSystem& sys) {
  if (sys.constraints.empty()) {
    sys.validate();
    return {LpStatus::Feasible, std::vector<Rational>(sys.num_vars), Rational()};
  }
  detail::Tableau t(sys);
  if (!t.phase_one()) return {};
  return {LpStatus::Feasible, t.solution(), Rational()};
}

/// Maximizes objective · x over the system.
inline LpResult lp_maximize(const LinearSystem& sys, std::span<const Rational> objective) {
  if (objective.size() != sys.num_vars) throw InputError("objective dimension mismatch");
  detail::Tableau t(sys);
  if (!t.phase_one()) return {};
  std::vector<Rational> negated(objective.size());
  for (std::size_t j = 0; j < objective.size(); ++j) negated[j] = -objective[j];
  if (!t.phase_two(negated)) return {LpStatus::Unbounded, {}, Rational()};
  LpResult result{LpStatus::Feasible, t.solution(), Rational()};
  for (std::size_t j = 0; j < objective.size(); ++j) result.objective += objective[j] * result.point[j];
  return result;
}

inline LpResult lp_minimize(const LinearSystem& sys, std::span<const Rational> objective) {
  std::vector<Rational> negated(objective.begin(), objective.end());
  for (auto& v : negated) v = -v;
  LpResult r = lp_maximize(sys, negated);
  if (r.feasible()) r.objective = -r.objective;
  return r;
}

}  // namespace credal
