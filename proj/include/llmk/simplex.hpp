#pragma once

// Exact rational linear programming: two-phase tableau simplex with Bland's
// rule, so it terminates on degenerate problems without tolerances.

#include <vector>

#include "llmk/rational.hpp"

namespace llmk {

using Vec = std::vector<Rational>;

/// maximize objective . x  subject to  A x <= b,  x >= 0.
/// Entries of b may be negative; phase one then finds a feasible basis.
struct LpProblem {
  Vec objective;
  std::vector<Vec> constraints;
  Vec bounds;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;  // meaningful when Optimal
  Vec solution;    // meaningful when Optimal
};

LpResult solve_lp(const LpProblem& problem);

Rational dot(const Vec& a, const Vec& b);

}  // namespace llmk
