#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdp/rational.hpp"

namespace vdp {

enum class Sense { LessEqual, Equal, GreaterEqual };

/// maximize objective·x  subject to  rows[i]·x (sense[i]) rhs[i],  x >= 0.
struct LinearProgram {
    RationalVector objective;
    RationalMatrix rows;
    RationalVector rhs;
    std::vector<Sense> senses;

    explicit LinearProgram(std::size_t variables = 0) : objective(variables) {}

    std::size_t variable_count() const { return objective.size(); }
    std::size_t row_count() const { return rows.size(); }

    void add_row(RationalVector coefficients, Sense sense, Rational bound);
};

class LpValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    RationalVector solution;

    bool optimal() const { return status == LpStatus::Optimal; }
};

/// Throws LpValidationError when dimensions are inconsistent.
void validate(const LinearProgram& lp);

/**
 * Exact two-phase primal simplex over rationals.
 *
 * Pivoting follows Bland's rule (lowest-index entering column, ratio ties
 * broken by lowest basic variable index), so the method terminates under
 * degeneracy and repeated runs pivot identically. The returned solution is a
 * basic feasible solution of the input program.
 */
LpResult lp_solve(const LinearProgram& lp);

const char* to_string(LpStatus status);

}  // namespace vdp
