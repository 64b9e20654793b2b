#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wcfair/matrix.hpp"
#include "wcfair/model.hpp"

namespace wcfair {

enum class Objective { kRawlsian, kUtilitarian };

std::string_view to_string(Objective objective);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Entries of x^frac below this are treated as zero downstream.
inline constexpr double kAssignmentPruneThreshold = 1e-12;

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearRow {
  std::vector<std::size_t> index;
  std::vector<double> value;
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
  std::string name;
};

// Positions of the assignment-LP variables inside the flat variable vector.
class AssignmentLayout {
 public:
  AssignmentLayout() = default;
  AssignmentLayout(std::size_t k, std::size_t n, std::size_t colors,
                   bool has_z);

  std::size_t k() const noexcept { return k_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t colors() const noexcept { return colors_; }
  bool has_z() const noexcept { return has_z_; }

  // x_{ij}; the k entries of one point are contiguous.
  std::size_t x(std::size_t i, std::size_t j) const { return j * k_ + i; }
  std::size_t t(std::size_t i, std::size_t h) const {
    return k_ * n_ + i * colors_ + h;
  }
  std::size_t u(std::size_t i, std::size_t h) const {
    return k_ * n_ + k_ * colors_ + i * colors_ + h;
  }
  std::size_t o(std::size_t i, std::size_t h) const {
    return k_ * n_ + 2 * k_ * colors_ + i * colors_ + h;
  }
  std::size_t z() const { return k_ * n_ + 3 * k_ * colors_; }
  std::size_t num_variables() const {
    return k_ * n_ + 3 * k_ * colors_ + (has_z_ ? 1 : 0);
  }

 private:
  std::size_t k_ = 0;
  std::size_t n_ = 0;
  std::size_t colors_ = 0;
  bool has_z_ = false;
};

// A linear program  min c^T v  s.t.  rows, lower <= v <= upper.
struct LPModel {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> names;
  std::vector<LinearRow> rows;
  // Optional: one preferred variable per assignment row, used by the built-in
  // solver to pick its starting basis.
  std::vector<std::size_t> start_hint;
  // Set by the assignment-LP builders.
  std::optional<AssignmentLayout> layout;

  std::size_t num_variables() const noexcept { return objective.size(); }
  std::size_t add_variable(std::string name, double cost, double lo,
                           double hi);
};

enum class SolverStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view to_string(SolverStatus status);

struct LPResult {
  SolverStatus status = SolverStatus::kIterationLimit;
  std::vector<double> values;
  double objective = 0.0;
  std::size_t iterations = 0;
};

struct SolverOptions {
  double tolerance = 1e-7;
  std::size_t max_iterations = 1'000'000;
};

// Pluggable solver interface.
class LPSolver {
 public:
  virtual ~LPSolver() = default;
  virtual LPResult solve(const LPModel& model,
                         const SolverOptions& options) const = 0;
};

// Built-in primal revised simplex with bounded variables. Rows of the form
// sum_{v in S} v = 1 over nonnegative variables with disjoint supports are
// handled implicitly (generalized upper bounding), so the factored working
// basis only spans the remaining rows. Dantzig pricing, switching to Bland's
// rule after a run of degenerate pivots.
class SimplexSolver final : public LPSolver {
 public:
  LPResult solve(const LPModel& model,
                 const SolverOptions& options) const override;
};

struct FractionalSolution {
  Matrix x;  // k x n
  Matrix t;  // k x |H|
  Matrix u;
  Matrix o;
  double objective_value = 0.0;
  SolverStatus solver_status = SolverStatus::kIterationLimit;
  std::size_t iterations = 0;
};

// LP (Rawlsian): min z s.t. per color z >= disutility expression, violation
// definitions for u/o/t, and one assignment row per point.
LPModel build_rawlsian_lp(const Instance& instance, const Matrix& centers,
                          const Params& params);

// LP (Utilitarian): min sum of disutility expressions, same constraints
// without z.
LPModel build_utilitarian_lp(const Instance& instance, const Matrix& centers,
                             const Params& params);

LPModel build_assignment_lp(Objective objective, const Instance& instance,
                            const Matrix& centers, const Params& params);

// Solves with the built-in solver and extracts the assignment variables.
// Throws InternalError on infeasible / unbounded models.
FractionalSolution solve_lp(const LPModel& model, double tolerance,
                            const LPSolver& solver = SimplexSolver{});

// Splits a variable vector of an assignment LP. x entries below the prune
// threshold are set to zero, and t is tightened to max(u, o, 0).
FractionalSolution extract_assignment(const LPModel& model,
                                      const LPResult& result);

// c^T v.
double evaluate_objective(const LPModel& model, const std::vector<double>& v);

// Largest violation of any row or bound by v (0 when feasible).
double max_infeasibility(const LPModel& model, const std::vector<double>& v);

// Variable vector of an integral assignment: x from phi, u/o from their
// defining rows, t = |C_i| Delta(h, i), z = R when present.
std::vector<double> embed_assignment(const LPModel& model,
                                     const Instance& instance,
                                     const std::vector<std::size_t>& assignment);

inline constexpr double kBruteForceLimit = 1e7;

// Exact minimizer over all k^n assignments (lexicographically smallest
// assignment on ties). Throws UsageError when k^n exceeds kBruteForceLimit.
Solution brute_force_assignment(const Instance& instance, const Matrix& centers,
                                const Params& params, Objective objective);

// CPLEX-style LP text: Minimize / Subject To / Bounds / End, numbers printed
// with 17 significant digits.
void write_lp_format(const LPModel& model, std::ostream& out);

}  // namespace wcfair
