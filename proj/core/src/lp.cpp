#include "sphcover/lp.hpp"

#include <stdexcept>
#include <utility>

namespace sphcover {

LinearProgram::LinearProgram(std::size_t num_vars)
    : num_vars_(num_vars), free_(num_vars, false), objective_(num_vars, Rat(0)) {}

void LinearProgram::set_free(std::size_t var, bool is_free) { free_.at(var) = is_free; }

void LinearProgram::set_all_free() { free_.assign(num_vars_, true); }

void LinearProgram::add_constraint(LinearConstraint constraint) {
  if (constraint.coeffs.size() != num_vars_) throw std::invalid_argument("LP constraint has wrong width");
  constraints_.push_back(std::move(constraint));
}

void LinearProgram::set_objective(std::vector<Rat> coeffs) {
  if (coeffs.size() != num_vars_) throw std::invalid_argument("LP objective has wrong width");
  objective_ = std::move(coeffs);
}

namespace {

// Tableau in canonical form: each basic column is a unit vector.
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // structural columns, rhs stored separately
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> rhs;
  std::vector<std::size_t> basis;
  std::size_t pivots = 0;

  void pivot(std::size_t r, std::size_t c) {
    const Rat p = a[r][c];
    if (p != 1) {
      for (auto& v : a[r]) {
        if (v != 0) v /= p;
      }
      rhs[r] /= p;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
      }
      rhs[i] -= f * rhs[r];
    }
    basis[r] = c;
    ++pivots;
  }

  // Maximizes cost^T x over the current basis; `allowed` masks entering
  // columns. Returns false when unbounded.
  bool optimize(const std::vector<Rat>& cost, const std::vector<bool>& allowed) {
    Rat reduced;
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols && enter == cols; ++j) {
        if (!allowed[j]) continue;
        reduced = cost[j];
        for (std::size_t i = 0; i < rows; ++i) {
          if (a[i][j] != 0 && cost[basis[i]] != 0) reduced -= cost[basis[i]] * a[i][j];
        }
        if (reduced > 0) enter = j;
      }
      if (enter == cols) return true;
      std::size_t leave = rows;
      Rat best_ratio;
      for (std::size_t i = 0; i < rows; ++i) {
        if (a[i][enter] <= 0) continue;
        Rat ratio = rhs[i] / a[i][enter];
        if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution LinearProgram::solve() const {
  // Column layout: for each variable a "+" column, plus a "-" column when
  // free; then one slack/surplus per inequality; then artificials.
  std::vector<std::size_t> plus_col(num_vars_), minus_col(num_vars_, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < num_vars_; ++v) {
    plus_col[v] = cols++;
    if (free_[v]) minus_col[v] = cols++;
  }
  const std::size_t m = constraints_.size();

  // Normalize rows to rhs >= 0.
  std::vector<std::vector<Rat>> row_coeffs(m);
  std::vector<Relation> rel(m);
  std::vector<Rat> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = constraints_[i];
    row_coeffs[i] = c.coeffs;
    rel[i] = c.relation;
    rhs[i] = c.rhs;
    if (rhs[i] < 0) {
      for (auto& v : row_coeffs[i]) v = -v;
      rhs[i] = -rhs[i];
      if (rel[i] == Relation::LessEqual) rel[i] = Relation::GreaterEqual;
      else if (rel[i] == Relation::GreaterEqual) rel[i] = Relation::LessEqual;
    }
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    if (rel[i] != Relation::Equal) slack_col[i] = cols++;
  }
  const std::size_t first_art = cols;
  for (std::size_t i = 0; i < m; ++i) {
    if (rel[i] != Relation::LessEqual) art_col[i] = cols++;
  }

  Tableau t;
  t.rows = m;
  t.cols = cols;
  t.a.assign(m, std::vector<Rat>(cols, Rat(0)));
  t.rhs = rhs;
  t.basis.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t v = 0; v < num_vars_; ++v) {
      const Rat& coef = row_coeffs[i][v];
      if (coef == 0) continue;
      t.a[i][plus_col[v]] = coef;
      if (minus_col[v] != SIZE_MAX) t.a[i][minus_col[v]] = -coef;
    }
    if (rel[i] == Relation::LessEqual) {
      t.a[i][slack_col[i]] = 1;
      t.basis[i] = slack_col[i];
    } else {
      if (rel[i] == Relation::GreaterEqual) t.a[i][slack_col[i]] = -1;
      t.a[i][art_col[i]] = 1;
      t.basis[i] = art_col[i];
    }
  }

  LpSolution out;
  std::vector<bool> allowed(cols, true);
  if (first_art < cols) {
    std::vector<Rat> phase1(cols, Rat(0));
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = -1;
    t.optimize(phase1, allowed);
    Rat infeasibility = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] >= first_art) infeasibility += t.rhs[i];
    }
    if (infeasibility > 0) {
      out.status = LpStatus::Infeasible;
      out.pivots = t.pivots;
      return out;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows;) {
      if (t.basis[i] < first_art) {
        ++i;
        continue;
      }
      std::size_t c = first_art;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (t.a[i][j] != 0) {
          c = j;
          break;
        }
      }
      if (c < first_art) {
        t.pivot(i, c);
        ++i;
      } else {
        t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
        t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        --t.rows;
      }
    }
    for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;
  }

  std::vector<Rat> cost(cols, Rat(0));
  for (std::size_t v = 0; v < num_vars_; ++v) {
    cost[plus_col[v]] = objective_[v];
    if (minus_col[v] != SIZE_MAX) cost[minus_col[v]] = -objective_[v];
  }
  const bool bounded = t.optimize(cost, allowed);
  out.pivots = t.pivots;
  std::vector<Rat> col_value(cols, Rat(0));
  for (std::size_t i = 0; i < t.rows; ++i) col_value[t.basis[i]] = t.rhs[i];
  out.x.assign(num_vars_, Rat(0));
  for (std::size_t v = 0; v < num_vars_; ++v) {
    out.x[v] = col_value[plus_col[v]];
    if (minus_col[v] != SIZE_MAX) out.x[v] -= col_value[minus_col[v]];
  }
  if (!bounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  for (std::size_t v = 0; v < num_vars_; ++v) out.objective += objective_[v] * out.x[v];
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rat>>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rat inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rat f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t exact_rank(std::vector<std::vector<Rat>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  return rref(rows, cols).size();
}

std::vector<Rat> exact_null_vector(std::vector<std::vector<Rat>> rows, std::size_t cols) {
  const auto pivots = rref(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::size_t free_col = cols;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  }
  if (free_col == cols) return {};
  std::vector<Rat> x(cols, Rat(0));
  x[free_col] = 1;
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -rows[k][free_col];
  return x;
}

}  // namespace sphcover
