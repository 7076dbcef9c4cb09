#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace plauset::lp {

enum class Relation { less_equal, equal, greater_equal };

enum class Status { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(Status status);

/// Sparse row: (variable index, coefficient) pairs.
using Terms = std::vector<std::pair<std::size_t, double>>;

struct Constraint {
    Terms terms;
    Relation relation = Relation::less_equal;
    double rhs = 0.0;
};

/**
 * minimize c^T x  subject to  rows (<=, =, >=) rhs,  x >= 0.
 *
 * Small dense problems only; the solver materializes the full tableau.
 */
class LinearProgram {
public:
    explicit LinearProgram(std::size_t num_variables) : objective_(num_variables, 0.0) {}

    std::size_t num_variables() const noexcept { return objective_.size(); }
    const std::vector<double>& objective() const noexcept { return objective_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

    void set_objective(std::size_t var, double coefficient) { objective_.at(var) = coefficient; }
    void add_constraint(Terms terms, Relation relation, double rhs);

private:
    std::vector<double> objective_;
    std::vector<Constraint> constraints_;
};

struct SolverOptions {
    double pivot_tolerance = 1e-10;
    double cost_tolerance = 1e-11;
    double feasibility_tolerance = 1e-9;
    std::size_t max_pivots = 100000;
    /// Consecutive degenerate pivots after which Bland's rule replaces Dantzig's.
    std::size_t degenerate_switch = 50;
};

struct Result {
    Status status = Status::infeasible;
    double objective = 0.0;
    std::vector<double> x;
    std::size_t pivots = 0;
};

/// Two-phase primal simplex on a dense tableau.
Result solve(const LinearProgram& program, const SolverOptions& options = {});

}  // namespace plauset::lp
