#include "fcg/lp.hpp"

#include "fcg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace fcg::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOptimalityTolerance = 1e-10;
constexpr double kRoundoff = 1e-14;
constexpr std::size_t kMaxIterations = 20000;

const char* relation_symbol(Relation r) {
    switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
    }
    return "?";
}

enum class ColumnRole { Structural, Slack, Artificial };

// Dense tableau in canonical form: rows hold B^{-1}A | B^{-1}b.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return data_[i * (cols_ + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, cols_); }
    [[nodiscard]] double rhs(std::size_t i) const { return at(i, cols_); }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    void pivot(std::size_t r, std::size_t c) {
        const double p = at(r, c);
        for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
        at(r, c) = 1.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) {
                double v = at(i, j) - f * at(r, j);
                if (std::abs(v) < kRoundoff) v = 0.0;
                at(i, j) = v;
            }
            at(i, c) = 0.0;
        }
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

struct Standardized {
    Tableau tableau;
    std::vector<std::size_t> basis;
    std::vector<ColumnRole> roles;
    // Column of the positive (and, for free variables, negative) part of each
    // original variable; negative part is npos for bounded variables.
    std::vector<std::size_t> pos_col;
    std::vector<std::size_t> neg_col;
    double rhs_scale = 1.0;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

Standardized standardize(const Problem& p) {
    const std::size_t n = p.variables();
    const std::size_t m = p.constraints.size();

    std::vector<std::size_t> pos_col(n), neg_col(n, npos);
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos_col[j] = cols++;
        if (p.is_free(j)) neg_col[j] = cols++;
    }
    const std::size_t structural = cols;

    // Normalize rows to non-negative rhs and count auxiliary columns.
    std::vector<Relation> rel(m);
    std::vector<double> sign(m, 1.0);
    std::size_t slacks = 0, artificials = 0;
    for (std::size_t i = 0; i < m; ++i) {
        rel[i] = p.constraints[i].relation;
        if (p.constraints[i].rhs < 0.0) {
            sign[i] = -1.0;
            if (rel[i] == Relation::LessEqual) rel[i] = Relation::GreaterEqual;
            else if (rel[i] == Relation::GreaterEqual) rel[i] = Relation::LessEqual;
        }
        if (rel[i] != Relation::Equal) ++slacks;
        if (rel[i] != Relation::LessEqual) ++artificials;
    }

    const std::size_t total = structural + slacks + artificials;
    Standardized s{Tableau(m, total), std::vector<std::size_t>(m), std::vector<ColumnRole>(total), pos_col,
                   neg_col, 1.0};
    std::fill(s.roles.begin(), s.roles.begin() + static_cast<std::ptrdiff_t>(structural), ColumnRole::Structural);

    std::size_t next_slack = structural;
    std::size_t next_art = structural + slacks;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = p.constraints[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double a = sign[i] * c.row[j];
            s.tableau.at(i, pos_col[j]) = a;
            if (neg_col[j] != npos) s.tableau.at(i, neg_col[j]) = -a;
        }
        s.tableau.rhs(i) = sign[i] * c.rhs;
        s.rhs_scale = std::max(s.rhs_scale, std::abs(c.rhs));
        switch (rel[i]) {
        case Relation::LessEqual:
            s.roles[next_slack] = ColumnRole::Slack;
            s.tableau.at(i, next_slack) = 1.0;
            s.basis[i] = next_slack++;
            break;
        case Relation::GreaterEqual:
            s.roles[next_slack] = ColumnRole::Slack;
            s.tableau.at(i, next_slack++) = -1.0;
            s.roles[next_art] = ColumnRole::Artificial;
            s.tableau.at(i, next_art) = 1.0;
            s.basis[i] = next_art++;
            break;
        case Relation::Equal:
            s.roles[next_art] = ColumnRole::Artificial;
            s.tableau.at(i, next_art) = 1.0;
            s.basis[i] = next_art++;
            break;
        }
    }
    return s;
}

enum class PhaseResult { Optimal, Unbounded };

void trace_pivot(std::ostream* trace, const char* phase, std::size_t iteration, std::size_t row, std::size_t col) {
    if (trace) *trace << phase << " iteration " << iteration << ": pivot row " << row << " col " << col << '\n';
}

// Maximizes cost . x over the current basic feasible solution using Bland's
// rule. Columns with allowed[j] == false never enter.
PhaseResult run_phase(Standardized& s, const std::vector<double>& cost, const std::vector<bool>& allowed,
                      std::size_t& iterations, const Problem& problem, const SolveOptions& options,
                      const char* phase) {
    Tableau& t = s.tableau;
    for (;;) {
        if (iterations >= kMaxIterations)
            throw NumericalInstability("simplex iteration limit reached", problem.dump());

        // Entering column: smallest index with positive reduced cost.
        std::size_t enter = npos;
        for (std::size_t j = 0; j < t.cols(); ++j) {
            if (!allowed[j]) continue;
            double reduced = cost[j];
            for (std::size_t i = 0; i < t.rows(); ++i) reduced -= cost[s.basis[i]] * t.at(i, j);
            if (reduced > kOptimalityTolerance) {
                enter = j;
                break;
            }
        }
        if (enter == npos) return PhaseResult::Optimal;

        // Ratio test; ties go to the smallest basic column index.
        std::size_t leave = npos;
        double best = kInf;
        bool tiny_positive = false;
        for (std::size_t i = 0; i < t.rows(); ++i) {
            const double a = t.at(i, enter);
            if (a > kPivotTolerance) {
                const double ratio = t.rhs(i) / a;
                if (ratio < best || (ratio == best && s.basis[i] < s.basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            } else if (a > 0.0) {
                tiny_positive = true;
            }
        }
        if (leave == npos) {
            if (tiny_positive)
                throw NumericalInstability("pivot magnitude below " + std::to_string(kPivotTolerance),
                                           problem.dump());
            return PhaseResult::Unbounded;
        }
        trace_pivot(options.trace, phase, iterations, leave, enter);
        t.pivot(leave, enter);
        s.basis[leave] = enter;
        ++iterations;
    }
}

} // namespace

bool Problem::is_free(std::size_t j) const {
    return !lower_bounds.empty() && lower_bounds[j] == -kInf;
}

void Problem::validate() const {
    const std::size_t n = objective.size();
    if (n == 0) throw DimensionError("LP needs at least one variable");
    if (n > kMaxVariables) throw DimensionError("LP has " + std::to_string(n) + " variables; limit is 64");
    if (constraints.size() > kMaxConstraints)
        throw DimensionError("LP has " + std::to_string(constraints.size()) + " constraints; limit is 256");
    if (!lower_bounds.empty() && lower_bounds.size() != n)
        throw DimensionError("LP lower bounds length does not match the variable count");
    for (double lb : lower_bounds)
        if (lb != 0.0 && lb != -kInf) throw InvalidArgument("LP lower bounds must be 0 or -infinity");
    for (double c : objective)
        if (!std::isfinite(c)) throw InvalidArgument("LP objective has a non-finite coefficient");
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const auto& c = constraints[i];
        if (c.row.size() != n)
            throw DimensionError("LP constraint " + std::to_string(i) + " has " + std::to_string(c.row.size()) +
                                 " coefficients for " + std::to_string(n) + " variables");
        if (!std::isfinite(c.rhs)) throw InvalidArgument("LP constraint " + std::to_string(i) + " has a non-finite rhs");
        for (double a : c.row)
            if (!std::isfinite(a))
                throw InvalidArgument("LP constraint " + std::to_string(i) + " has a non-finite coefficient");
    }
}

std::string Problem::dump() const {
    std::ostringstream os;
    os.precision(17);
    os << "lp " << objective.size() << " vars " << constraints.size() << " rows\n";
    os << "max";
    for (double c : objective) os << ' ' << c;
    os << '\n';
    os << "lb";
    for (std::size_t j = 0; j < objective.size(); ++j) os << ' ' << (is_free(j) ? "-inf" : "0");
    os << '\n';
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        os << "r" << i;
        for (double a : constraints[i].row) os << ' ' << a;
        os << ' ' << relation_symbol(constraints[i].relation) << ' ' << constraints[i].rhs << '\n';
    }
    return os.str();
}

Solution solve(const Problem& problem, const SolveOptions& options) {
    problem.validate();
    if (options.trace) *options.trace << problem.dump();

    Standardized s = standardize(problem);
    const std::size_t cols = s.tableau.cols();
    std::size_t iterations = 0;

    // Phase 1: drive the artificials to zero.
    const bool has_artificials =
        std::any_of(s.roles.begin(), s.roles.end(), [](ColumnRole r) { return r == ColumnRole::Artificial; });
    if (has_artificials) {
        std::vector<double> cost(cols, 0.0);
        for (std::size_t j = 0; j < cols; ++j)
            if (s.roles[j] == ColumnRole::Artificial) cost[j] = -1.0;
        std::vector<bool> allowed(cols, true);
        run_phase(s, cost, allowed, iterations, problem, options, "phase1");

        double infeasibility = 0.0;
        for (std::size_t i = 0; i < s.tableau.rows(); ++i)
            if (s.roles[s.basis[i]] == ColumnRole::Artificial) infeasibility += s.tableau.rhs(i);
        if (infeasibility > 1e-9 * s.rhs_scale) {
            if (options.trace) *options.trace << "infeasible (phase 1 residual " << infeasibility << ")\n";
            return Solution{Status::Infeasible, {}, 0.0, iterations};
        }

        // Pivot remaining zero-level artificials out of the basis where possible.
        for (std::size_t i = 0; i < s.tableau.rows(); ++i) {
            if (s.roles[s.basis[i]] != ColumnRole::Artificial) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (s.roles[j] == ColumnRole::Artificial) continue;
                if (std::abs(s.tableau.at(i, j)) > 1e-9) {
                    trace_pivot(options.trace, "cleanup", iterations, i, j);
                    s.tableau.pivot(i, j);
                    s.basis[i] = j;
                    break;
                }
            }
        }
    }

    // Phase 2 on the original objective.
    std::vector<double> cost(cols, 0.0);
    for (std::size_t j = 0; j < problem.variables(); ++j) {
        cost[s.pos_col[j]] = problem.objective[j];
        if (s.neg_col[j] != npos) cost[s.neg_col[j]] = -problem.objective[j];
    }
    std::vector<bool> allowed(cols);
    for (std::size_t j = 0; j < cols; ++j) allowed[j] = s.roles[j] != ColumnRole::Artificial;
    if (run_phase(s, cost, allowed, iterations, problem, options, "phase2") == PhaseResult::Unbounded) {
        if (options.trace) *options.trace << "unbounded\n";
        return Solution{Status::Unbounded, {}, 0.0, iterations};
    }

    std::vector<double> column_value(cols, 0.0);
    for (std::size_t i = 0; i < s.tableau.rows(); ++i) column_value[s.basis[i]] = s.tableau.rhs(i);
    Solution sol;
    sol.status = Status::Optimal;
    sol.iterations = iterations;
    sol.x.resize(problem.variables());
    for (std::size_t j = 0; j < problem.variables(); ++j) {
        double v = column_value[s.pos_col[j]];
        if (s.neg_col[j] != npos) v -= column_value[s.neg_col[j]];
        sol.x[j] = v;
    }
    sol.value = 0.0;
    for (std::size_t j = 0; j < problem.variables(); ++j) sol.value += problem.objective[j] * sol.x[j];
    if (options.trace) *options.trace << "optimal value " << sol.value << '\n';
    return sol;
}

double max_violation(const Problem& problem, std::span<const double> x) {
    double worst = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!problem.is_free(j)) worst = std::max(worst, -x[j]);
    for (const auto& c : problem.constraints) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += c.row[j] * x[j];
        switch (c.relation) {
        case Relation::LessEqual: worst = std::max(worst, lhs - c.rhs); break;
        case Relation::GreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
        case Relation::Equal: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
        }
    }
    return worst;
}

const char* to_string(Status s) noexcept {
    switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    }
    return "?";
}

} // namespace fcg::lp
