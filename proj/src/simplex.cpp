#include "llmk/simplex.hpp"

#include <stdexcept>

namespace llmk {

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

namespace {

// Dense tableau. Row r holds basic variable basis[r]; the last column is the
// right-hand side. `cost` is the reduced-cost row for a maximisation, with
// cost[j] < 0 meaning column j improves the objective.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : t_(rows, Vec(cols + 1, Rational(0))), basis_(rows), cols_(cols) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][cols_]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }

  // Loads the objective `c` (maximise c.x) as a reduced-cost row.
  void set_objective(const Vec& c) {
    cost_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) cost_[j] = -c[j];
    for (std::size_t r = 0; r < rows(); ++r) {
      const Rational cb = c[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(t_[r][j]) != 0) cost_[j] += cb * t_[r][j];
      }
    }
  }

  Rational objective_value() const { return cost_[cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = t_[r][c];
    for (auto& e : t_[r]) {
      if (sgn(e) != 0) e /= p;
    }
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      eliminate(t_[i], t_[r], t_[i][c]);
    }
    if (sgn(cost_[c]) != 0) eliminate(cost_, t_[r], cost_[c]);
    basis_[r] = c;
  }

  // Bland's rule over the allowed columns. Returns false when unbounded.
  bool optimise(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && sgn(cost_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (sgn(t_[r][enter]) <= 0) continue;
        Rational ratio = t_[r][cols_] / t_[r][enter];
        if (leave == rows() || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

 private:
  static void eliminate(Vec& row, const Vec& pivot_row, Rational factor) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (sgn(pivot_row[j]) != 0) row[j] -= factor * pivot_row[j];
    }
  }

  std::vector<Vec> t_;
  Vec cost_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace

LpResult solve_lp(const LpProblem& problem) {
  const std::size_t n = problem.objective.size();
  const std::size_t m = problem.constraints.size();
  if (problem.bounds.size() != m) throw std::invalid_argument("solve_lp: bounds length");
  for (const auto& row : problem.constraints) {
    if (row.size() != n) throw std::invalid_argument("solve_lp: constraint width");
  }

  // Columns: n structural, m slacks, then one artificial per negative bound.
  std::vector<std::size_t> artificial_row;
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(problem.bounds[i]) < 0) artificial_row.push_back(i);
  }
  const std::size_t k = artificial_row.size();
  const std::size_t cols = n + m + k;
  Tableau tab(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(problem.bounds[i]) < 0;
    for (std::size_t j = 0; j < n; ++j) {
      tab.at(i, j) = flip ? Rational(-problem.constraints[i][j]) : problem.constraints[i][j];
    }
    tab.at(i, n + i) = flip ? -1 : 1;
    tab.rhs(i) = flip ? Rational(-problem.bounds[i]) : problem.bounds[i];
    tab.basic(i) = n + i;
  }
  for (std::size_t a = 0; a < k; ++a) {
    std::size_t i = artificial_row[a];
    tab.at(i, n + m + a) = 1;
    tab.basic(i) = n + m + a;
  }

  std::vector<bool> allowed(cols, true);
  if (k > 0) {
    Vec phase1(cols, Rational(0));
    for (std::size_t a = 0; a < k; ++a) phase1[n + m + a] = -1;
    tab.set_objective(phase1);
    tab.optimise(allowed);
    if (sgn(tab.objective_value()) < 0) return {LpStatus::Infeasible, 0, {}};
    // Drive remaining (zero-valued) artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basic(r) < n + m) continue;
      for (std::size_t j = 0; j < n + m; ++j) {
        if (sgn(tab.at(r, j)) != 0) {
          tab.pivot(r, j);
          break;
        }
      }
    }
    for (std::size_t a = 0; a < k; ++a) allowed[n + m + a] = false;
  }

  Vec phase2(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = problem.objective[j];
  tab.set_objective(phase2);
  if (!tab.optimise(allowed)) return {LpStatus::Unbounded, 0, {}};

  LpResult result;
  result.status = LpStatus::Optimal;
  result.value = tab.objective_value();
  result.solution.assign(n, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basic(r) < n) result.solution[tab.basic(r)] = tab.rhs(r);
  }
  return result;
}

}  // namespace llmk
