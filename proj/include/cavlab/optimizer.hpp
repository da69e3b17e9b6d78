#ifndef CAVLAB_OPTIMIZER_HPP
#define CAVLAB_OPTIMIZER_HPP

#include <Eigen/Core>
#include <functional>
#include <vector>

namespace cavlab {

// Objective oracle: returns f(x) and, when grad != nullptr, fills the
// gradient.  Line-search probes pass grad = nullptr.
using Objective =
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd* grad)>;

// Strict nonlinear feasibility test (e.g. discrete determinant positivity).
// The objective is only ever evaluated at points the oracle accepts.
using FeasibilityOracle = std::function<bool(const Eigen::VectorXd&)>;

// Bound-constrained minimization problem with per-coordinate lower bounds
// (-inf for a free coordinate) and an optional strict feasibility oracle.
// The objective must blow up toward the oracle's boundary, so the oracle
// acts as an interior barrier.
struct OptProblem {
    int dim = 0;
    Objective objective;
    Eigen::VectorXd lower_bounds;  // empty => unbounded
    FeasibilityOracle feasibility; // empty => always feasible
    Eigen::VectorXd x0;
};

enum class StopReason { gradient_tol, step_tol, max_iter };

struct OptReport {
    Eigen::VectorXd x_final;
    double f_final = 0.0;
    int iterations = 0;
    std::vector<double> f_history;  // per accepted iterate; may be non-monotone
    bool converged = false;
    StopReason stop_reason = StopReason::max_iter;
};

struct OptOptions {
    int max_iter = 50000;
    double grad_tol = 1e-8;
    double step_tol = 1e-12;
    int memory = 10;               // limited-memory pairs
    int nonmonotone_window = 10;   // 1 => classic monotone Armijo
};

// Projected limited-memory quasi-Newton descent.  Search directions come
// from the two-loop recursion on projected gradients; a backtracking line
// search accepts x+ once
//     f(x+) <= max(last `nonmonotone_window` f-values) + c * g.(x+ - x)
// with c = 1e-4.  Every trial point is projected onto the bounds and the
// step is halved until the feasibility oracle passes (60 halvings total,
// after which the run stops with StopReason::step_tol).  Deterministic:
// identical inputs give bitwise-identical f_history.
OptReport minimize(const OptProblem& problem, const OptOptions& opts = {});

// Central finite differences against the analytic gradient; returns the max
// componentwise relative error (absolute floor 1e-10 on the denominator).
// An infeasible stencil point (objective throwing std::domain_error) shrinks
// fd_step for that coordinate, up to 8 times.
double grad_check(const Objective& objective, const Eigen::VectorXd& x,
                  double fd_step);

}  // namespace cavlab

#endif
