#include "vdp/lp.hpp"

#include <limits>
#include <optional>

namespace vdp {

void LinearProgram::add_row(RationalVector coefficients, Sense sense, Rational bound) {
    rows.push_back(std::move(coefficients));
    senses.push_back(sense);
    rhs.push_back(std::move(bound));
}

void validate(const LinearProgram& lp) {
    if (lp.variable_count() == 0) throw LpValidationError("linear program has no variables");
    if (lp.rhs.size() != lp.rows.size())
        throw LpValidationError("rhs length " + std::to_string(lp.rhs.size()) + " != row count " +
                                std::to_string(lp.rows.size()));
    if (lp.senses.size() != lp.rows.size())
        throw LpValidationError("sense count " + std::to_string(lp.senses.size()) + " != row count " +
                                std::to_string(lp.rows.size()));
    for (std::size_t i = 0; i < lp.rows.size(); ++i)
        if (lp.rows[i].size() != lp.variable_count())
            throw LpValidationError("row " + std::to_string(i) + " has " + std::to_string(lp.rows[i].size()) +
                                    " coefficients, expected " + std::to_string(lp.variable_count()));
}

const char* to_string(LpStatus status) {
    switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Dense tableau in canonical form with respect to `basis`. The last column
// holds the right-hand side. `cost` is the current objective row:
// cost[j] = c_j - c_B B^-1 A_j for j < cols, and cost[cols] = -c_B B^-1 b.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : cols_(cols), a_(rows, std::vector<mpq_class>(cols + 1)), basis_(rows, npos), cost_(cols + 1) {}

    std::size_t rows() const { return a_.size(); }
    std::size_t cols() const { return cols_; }
    mpq_class& at(std::size_t i, std::size_t j) { return a_[i][j]; }
    const mpq_class& at(std::size_t i, std::size_t j) const { return a_[i][j]; }
    mpq_class& rhs(std::size_t i) { return a_[i][cols_]; }
    std::size_t& basis(std::size_t i) { return basis_[i]; }
    std::size_t basis(std::size_t i) const { return basis_[i]; }
    mpq_class objective_value() const { return -cost_[cols_]; }

    void set_costs(const std::vector<mpq_class>& c) {
        for (std::size_t j = 0; j <= cols_; ++j) cost_[j] = j < cols_ ? c[j] : mpq_class(0);
        for (std::size_t i = 0; i < rows(); ++i) {
            const mpq_class& cb = c[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn(a_[i][j]) != 0) cost_[j] -= cb * a_[i][j];
            cost_[cols_] -= cb * a_[i][cols_];
        }
    }

    void pivot(std::size_t r, std::size_t s) {
        std::vector<mpq_class>& prow = a_[r];
        const mpq_class inv = 1 / prow[s];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= cols_; ++j) {
            if (sgn(prow[j]) == 0) continue;
            prow[j] *= inv;
            nz.push_back(j);
        }
        auto eliminate = [&](std::vector<mpq_class>& row) {
            if (sgn(row[s]) == 0) return;
            const mpq_class f = row[s];
            for (std::size_t j : nz) row[j] -= f * prow[j];
        };
        for (std::size_t i = 0; i < rows(); ++i)
            if (i != r) eliminate(a_[i]);
        eliminate(cost_);
        basis_[r] = s;
    }

    // Runs the maximizing simplex restricted to columns < `usable`.
    // Returns false when the program is unbounded along some column.
    bool optimize(std::size_t usable) {
        for (;;) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < usable; ++j)
                if (sgn(cost_[j]) > 0) {
                    enter = j;
                    break;
                }
            if (enter == npos) return true;

            std::size_t leave = npos;
            mpq_class best_ratio;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (sgn(a_[i][enter]) <= 0) continue;
                mpq_class ratio = a_[i][cols_] / a_[i][enter];
                if (leave == npos || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == npos) return false;
            pivot(leave, enter);
        }
    }

    void drop_row(std::size_t i) {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
    }

private:
    std::size_t cols_;
    std::vector<std::vector<mpq_class>> a_;
    std::vector<std::size_t> basis_;
    std::vector<mpq_class> cost_;
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
    validate(lp);
    const std::size_t m = lp.row_count();
    const std::size_t n = lp.variable_count();

    // Normalize to nonnegative right-hand sides.
    std::vector<Sense> sense = lp.senses;
    std::vector<bool> flipped(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.rhs[i].sign() >= 0) continue;
        flipped[i] = true;
        if (sense[i] == Sense::LessEqual)
            sense[i] = Sense::GreaterEqual;
        else if (sense[i] == Sense::GreaterEqual)
            sense[i] = Sense::LessEqual;
    }

    // Column layout: structural | slack/surplus | artificial.
    std::size_t slack_count = 0, artificial_count = 0;
    for (Sense s : sense) {
        if (s != Sense::Equal) ++slack_count;
        if (s != Sense::LessEqual) ++artificial_count;
    }
    const std::size_t first_artificial = n + slack_count;
    const std::size_t cols = first_artificial + artificial_count;

    Tableau t(m, cols);
    std::size_t next_slack = n, next_artificial = first_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const mpq_class& c = lp.rows[i][j].raw();
            if (sgn(c) != 0) t.at(i, j) = flipped[i] ? mpq_class(-c) : c;
        }
        t.rhs(i) = flipped[i] ? mpq_class(-lp.rhs[i].raw()) : lp.rhs[i].raw();
        switch (sense[i]) {
        case Sense::LessEqual:
            t.at(i, next_slack) = 1;
            t.basis(i) = next_slack++;
            break;
        case Sense::GreaterEqual:
            t.at(i, next_slack++) = -1;
            t.at(i, next_artificial) = 1;
            t.basis(i) = next_artificial++;
            break;
        case Sense::Equal:
            t.at(i, next_artificial) = 1;
            t.basis(i) = next_artificial++;
            break;
        }
    }

    LpResult result;

    // Phase 1: maximize minus the sum of artificials.
    if (artificial_count > 0) {
        std::vector<mpq_class> c(cols);
        for (std::size_t j = first_artificial; j < cols; ++j) c[j] = -1;
        t.set_costs(c);
        t.optimize(cols);
        if (sgn(t.objective_value()) != 0) {
            result.status = LpStatus::Infeasible;
            return result;
        }
        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are linearly dependent and get dropped.
        for (std::size_t i = 0; i < t.rows();) {
            if (t.basis(i) < first_artificial) {
                ++i;
                continue;
            }
            std::size_t s = npos;
            for (std::size_t j = 0; j < first_artificial; ++j)
                if (sgn(t.at(i, j)) != 0) {
                    s = j;
                    break;
                }
            if (s == npos) {
                t.drop_row(i);
            } else {
                t.pivot(i, s);
                ++i;
            }
        }
    }

    // Phase 2 over structural and slack columns only.
    std::vector<mpq_class> c(cols);
    for (std::size_t j = 0; j < n; ++j) c[j] = lp.objective[j].raw();
    t.set_costs(c);
    if (!t.optimize(first_artificial)) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    result.status = LpStatus::Optimal;
    result.solution.assign(n, Rational());
    for (std::size_t i = 0; i < t.rows(); ++i)
        if (t.basis(i) < n) result.solution[t.basis(i)] = Rational(t.rhs(i));
    result.value = Rational(t.objective_value());
    return result;
}

}  // namespace vdp
