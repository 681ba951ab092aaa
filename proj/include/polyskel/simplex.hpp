#pragma once

// Small exact simplex solver over the rationals.
//
// Problems are in maximization form with nonnegative variables. The solver is
// a dense two-phase tableau method with Bland's smallest-index rule, which
// guarantees termination on degenerate problems. Sizes of interest are a few
// hundred columns and a handful of rows.

#include <span>
#include <vector>

#include "polyskel/hypercube.hpp"
#include "polyskel/rational.hpp"

namespace polyskel {

enum class RowSense { equal, less_equal, greater_equal };

/// maximize objective . x  s.t.  rows[i] . x  (sense[i])  rhs[i],  x >= 0.
struct LpProblem {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<RowSense> senses;

  std::size_t num_vars() const noexcept { return objective.size(); }
  std::size_t num_rows() const noexcept { return rows.size(); }

  void add_row(std::vector<Rational> coeffs, RowSense sense, Rational rhs_value);
  /// Throws std::invalid_argument on inconsistent shapes.
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  Rational value;                 // meaningful when optimal
  std::vector<Rational> solution; // meaningful when optimal
};

LpOutcome simplex_solve(const LpProblem& problem);

/// Exact residual check: every row holds as declared and x >= 0.
bool satisfies(const LpProblem& problem, std::span<const Rational> x);

/// point in conv(generators), decided by exact LP feasibility.
bool convex_membership(std::span<const Rational> point, std::span<const Vertex> generators);

}  // namespace polyskel
