#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

// Small dense linear programs solved by a two-phase tableau simplex with
// Bland's anti-cycling rule. Every solve owns its tableau; there is no shared
// solver state, and identical inputs give bit-identical outputs.
namespace fcg::lp {

inline constexpr std::size_t kMaxVariables = 64;
inline constexpr std::size_t kMaxConstraints = 256;
inline constexpr double kPivotTolerance = 1e-12;

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
    std::vector<double> row;
    Relation relation = Relation::LessEqual;
    double rhs = 0.0;
};

struct Problem {
    std::vector<double> objective; // maximized
    std::vector<Constraint> constraints;
    // Per-variable lower bound, 0 or -infinity. Empty means all 0.
    std::vector<double> lower_bounds;

    [[nodiscard]] std::size_t variables() const noexcept { return objective.size(); }
    [[nodiscard]] bool is_free(std::size_t j) const;

    // Throws DimensionError for ragged or oversized problems and
    // InvalidArgument for non-finite data or unsupported bounds.
    void validate() const;

    // Plain-text tableau: one line per constraint, objective last.
    [[nodiscard]] std::string dump() const;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    std::vector<double> x; // only for Optimal
    double value = 0.0;    // only for Optimal
    std::size_t iterations = 0;
};

struct SolveOptions {
    // When set, the problem and every pivot are written here.
    std::ostream* trace = nullptr;
};

// Throws NumericalInstability (carrying the problem dump) when the only
// available pivots are below kPivotTolerance or the iteration cap is hit.
[[nodiscard]] Solution solve(const Problem& problem, const SolveOptions& options = {});

// Largest constraint or bound violation of x (0 when feasible).
[[nodiscard]] double max_violation(const Problem& problem, std::span<const double> x);

[[nodiscard]] const char* to_string(Status s) noexcept;

} // namespace fcg::lp
