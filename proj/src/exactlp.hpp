#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "model.hpp"

namespace chvip {

struct LpRow {
    Sense sense = Sense::LE;
    Rational rhs;
    std::vector<Term> terms;  // strictly increasing var index
};

struct LpProblem {
    int num_vars = 0;
    std::vector<Rational> lb;                 // finite for every variable
    std::vector<std::optional<Rational>> ub;  // nullopt = +infinity
    std::vector<Term> objective;              // maximize
    std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// All multiplier vectors follow the aggregation sign convention used by
// the certificate rules: >= 0 on <=-rows, <= 0 on >=-rows, free on
// equations; a positive per-variable multiplier refers to the upper
// bound, a negative one to the lower bound.
struct LpOutcome {
    LpStatus status = LpStatus::Optimal;
    Rational objective;
    std::vector<Rational> primal;
    std::vector<Rational> row_duals;
    std::vector<Rational> reduced_costs;
    std::vector<Rational> farkas_rows;
    std::vector<Rational> farkas_bounds;
    std::vector<Rational> ray;
};

struct LpInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct LpInternalError : std::logic_error {
    using std::logic_error::logic_error;
};

// Reusable solver instance; bound changes between solves keep the basis,
// so re-solves after branching are warm-started.
class LpSolver {
  public:
    explicit LpSolver(LpProblem p);
    ~LpSolver();
    LpSolver(LpSolver&&) noexcept;
    LpSolver& operator=(LpSolver&&) noexcept;

    const LpProblem& problem() const;
    void set_var_bounds(int var, Rational lb, std::optional<Rational> ub);
    LpOutcome solve();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

LpOutcome solve_lp(const LpProblem& p);

// Extracts the continuous relaxation of a model.
LpProblem relaxation_of(const Model& m);

}  // namespace chvip
