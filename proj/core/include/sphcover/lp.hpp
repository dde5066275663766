#pragma once

#include <cstddef>
#include <vector>

#include "sphcover/rational.hpp"

namespace sphcover {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  std::vector<Rat> coeffs;
  Relation relation = Relation::LessEqual;
  Rat rhs = 0;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rat objective = 0;
  std::vector<Rat> x;
  std::size_t pivots = 0;
};

/// Dense two-phase primal simplex over exact rationals, maximizing c^T x.
/// Bland's rule on both entering and leaving choices rules out cycling. Meant
/// for the small systems the cover engines produce (tens of rows).
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars);

  /// Variables are nonnegative unless marked free.
  void set_free(std::size_t var, bool is_free = true);
  void set_all_free();
  void add_constraint(LinearConstraint constraint);
  void set_objective(std::vector<Rat> coeffs);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_constraints() const { return constraints_.size(); }

  LpSolution solve() const;

 private:
  std::size_t num_vars_;
  std::vector<bool> free_;
  std::vector<LinearConstraint> constraints_;
  std::vector<Rat> objective_;
};

/// Rank of a rational matrix given as rows.
std::size_t exact_rank(std::vector<std::vector<Rat>> rows);

/// A nonzero vector in the null space of `rows` (columns = `cols`), or an
/// empty vector when the null space is trivial.
std::vector<Rat> exact_null_vector(std::vector<std::vector<Rat>> rows, std::size_t cols);

}  // namespace sphcover
