#include "polyskel/simplex.hpp"

#include <stdexcept>

namespace polyskel {

void LpProblem::add_row(std::vector<Rational> coeffs, RowSense sense, Rational rhs_value) {
  rows.push_back(std::move(coeffs));
  senses.push_back(sense);
  rhs.push_back(std::move(rhs_value));
}

void LpProblem::validate() const {
  if (rows.size() != rhs.size() || rows.size() != senses.size()) {
    throw std::invalid_argument("LP row, rhs and sense counts differ");
  }
  for (const auto& row : rows) {
    if (row.size() != objective.size()) throw std::invalid_argument("LP row width differs from objective");
  }
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), a_(rows, std::vector<Rational>(cols + 1)), basis_(rows), z_(cols) {}

  std::vector<Rational>& row(std::size_t i) { return a_[i]; }
  Rational& rhs(std::size_t i) { return a_[i][cols_]; }
  std::size_t rows() const { return a_.size(); }
  std::size_t& basic(std::size_t i) { return basis_[i]; }

  void set_costs(const std::vector<Rational>& cost) {
    cost_ = cost;
    for (std::size_t j = 0; j < cols_; ++j) {
      Rational zj = cost_[j];
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (sgn(cost_[basis_[i]]) != 0 && sgn(a_[i][j]) != 0) zj -= cost_[basis_[i]] * a_[i][j];
      }
      z_[j] = zj;
    }
  }

  Rational objective_value() {
    Rational v(0);
    for (std::size_t i = 0; i < a_.size(); ++i) v += cost_[basis_[i]] * a_[i][cols_];
    return v;
  }

  void pivot(std::size_t r, std::size_t s) {
    auto& pr = a_[r];
    const Rational piv = pr[s];
    nonzero_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(pr[j]) != 0) {
        pr[j] /= piv;
        nonzero_.push_back(j);
      }
    }
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r || sgn(a_[i][s]) == 0) continue;
      const Rational f = a_[i][s];
      auto& ri = a_[i];
      for (auto j : nonzero_) {
        tmp_ = f * pr[j];
        ri[j] -= tmp_;
      }
    }
    if (sgn(z_[s]) != 0) {
      const Rational f = z_[s];
      for (auto j : nonzero_) {
        if (j < cols_) {
          tmp_ = f * pr[j];
          z_[j] -= tmp_;
        }
      }
    }
    basis_[r] = s;
  }

  /// Bland's rule on columns [0, allowed). Returns false if unbounded.
  bool run(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (sgn(z_[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;

      std::size_t leave = a_.size();
      Rational best;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (sgn(a_[i][enter]) <= 0) continue;
        Rational ratio = a_[i][cols_] / a_[i][enter];
        if (leave == a_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          best = std::move(ratio);
          leave = i;
        }
      }
      if (leave == a_.size()) return false;
      pivot(leave, enter);
    }
  }

  void erase_row(std::size_t i) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> a_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_;
  std::vector<Rational> z_;
  std::vector<std::size_t> nonzero_;
  Rational tmp_;
};

}  // namespace

LpOutcome simplex_solve(const LpProblem& problem) {
  problem.validate();
  const std::size_t nv = problem.num_vars();
  const std::size_t m = problem.num_rows();

  // Normalize to rhs >= 0 and count auxiliary columns.
  std::vector<RowSense> sense(problem.senses);
  std::vector<int> flip(m, 1);
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(problem.rhs[i]) < 0) {
      flip[i] = -1;
      if (sense[i] == RowSense::less_equal) {
        sense[i] = RowSense::greater_equal;
      } else if (sense[i] == RowSense::greater_equal) {
        sense[i] = RowSense::less_equal;
      }
    }
    if (sense[i] != RowSense::equal) ++n_slack;
    if (sense[i] != RowSense::less_equal) ++n_art;
  }
  const std::size_t art_start = nv + n_slack;
  const std::size_t cols = art_start + n_art;

  Tableau t(m, cols);
  std::size_t next_slack = nv;
  std::size_t next_art = art_start;
  for (std::size_t i = 0; i < m; ++i) {
    auto& r = t.row(i);
    for (std::size_t j = 0; j < nv; ++j) {
      r[j] = problem.rows[i][j];
      if (flip[i] < 0) r[j] = -r[j];
    }
    t.rhs(i) = flip[i] < 0 ? Rational(-problem.rhs[i]) : problem.rhs[i];
    switch (sense[i]) {
      case RowSense::less_equal:
        r[next_slack] = 1;
        t.basic(i) = next_slack++;
        break;
      case RowSense::greater_equal:
        r[next_slack++] = -1;
        r[next_art] = 1;
        t.basic(i) = next_art++;
        break;
      case RowSense::equal:
        r[next_art] = 1;
        t.basic(i) = next_art++;
        break;
    }
  }

  LpOutcome out;
  if (n_art > 0) {
    std::vector<Rational> phase1(cols);
    for (std::size_t j = art_start; j < cols; ++j) phase1[j] = -1;
    t.set_costs(phase1);
    t.run(cols);  // bounded below by zero, never unbounded
    if (sgn(t.objective_value()) < 0) {
      out.status = LpStatus::infeasible;
      return out;
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basic(i) < art_start) {
        ++i;
        continue;
      }
      std::size_t j = 0;
      while (j < art_start && sgn(t.row(i)[j]) == 0) ++j;
      if (j < art_start) {
        t.pivot(i, j);
        ++i;
      } else {
        t.erase_row(i);
      }
    }
  }

  std::vector<Rational> phase2(cols);
  for (std::size_t j = 0; j < nv; ++j) phase2[j] = problem.objective[j];
  t.set_costs(phase2);
  if (!t.run(art_start)) {
    out.status = LpStatus::unbounded;
    return out;
  }

  out.status = LpStatus::optimal;
  out.solution.assign(nv, Rational(0));
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.basic(i) < nv) out.solution[t.basic(i)] = t.rhs(i);
  }
  out.value = 0;
  for (std::size_t j = 0; j < nv; ++j) out.value += problem.objective[j] * out.solution[j];
  return out;
}

bool satisfies(const LpProblem& problem, std::span<const Rational> x) {
  if (x.size() != problem.num_vars()) return false;
  for (const auto& v : x) {
    if (sgn(v) < 0) return false;
  }
  for (std::size_t i = 0; i < problem.num_rows(); ++i) {
    Rational lhs(0);
    for (std::size_t j = 0; j < x.size(); ++j) lhs += problem.rows[i][j] * x[j];
    switch (problem.senses[i]) {
      case RowSense::equal:
        if (lhs != problem.rhs[i]) return false;
        break;
      case RowSense::less_equal:
        if (lhs > problem.rhs[i]) return false;
        break;
      case RowSense::greater_equal:
        if (lhs < problem.rhs[i]) return false;
        break;
    }
  }
  return true;
}

bool convex_membership(std::span<const Rational> point, std::span<const Vertex> generators) {
  if (generators.empty()) throw std::invalid_argument("convex hull of no generators");
  const int n = generators.front().dim();
  if (point.size() != static_cast<std::size_t>(n)) {
    throw DimensionMismatch(static_cast<int>(point.size()), n);
  }
  LpProblem lp;
  lp.objective.assign(generators.size(), Rational(0));
  for (int i = 1; i <= n; ++i) {
    std::vector<Rational> row(generators.size());
    for (std::size_t w = 0; w < generators.size(); ++w) {
      require_same_dim(generators[w], generators.front());
      row[w] = generators[w].coordinate(i) ? 1 : 0;
    }
    lp.add_row(std::move(row), RowSense::equal, point[static_cast<std::size_t>(i - 1)]);
  }
  lp.add_row(std::vector<Rational>(generators.size(), Rational(1)), RowSense::equal, Rational(1));
  return simplex_solve(lp).status == LpStatus::optimal;
}

}  // namespace polyskel
