#pragma once

#include <optional>
#include <vector>

#include "certcheck.hpp"
#include "exactlp.hpp"
#include "model.hpp"

namespace chvip {

struct SolveLimits {
    double time_seconds = 43200.0;
    long node_limit = -1;  // negative = unlimited
    bool progress = false;
};

enum class IpStatus { Optimal, Infeasible, Limit };

struct SolveResult {
    IpStatus status = IpStatus::Optimal;
    std::optional<std::vector<Rational>> best_solution;
    Rational best_objective;  // valid when a solution is present
    std::optional<Rational> dual_bound;
    long node_count = 0;
    std::optional<Certificate> certificate;  // absent on limit
};

// Exact branch and bound. All variables must be binary or nonnegative
// integer with finite relevant bounds; throws LpInputError on malformed
// models.
SolveResult solve_ip(const Model& m, const SolveLimits& limits = {});

}  // namespace chvip
