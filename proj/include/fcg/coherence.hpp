#pragma once

#include "fcg/gamble.hpp"
#include "fcg/lp.hpp"
#include "fcg/utility.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fcg {

inline constexpr double kAcceptanceTolerance = 1e-9;
inline constexpr double kDefaultRejectionMargin = 1e-6;

// Accepted generators (and optional rejected gambles) under one utility.
// Construction rejects any accepted generator that is everywhere strictly
// negative after transformation, which F1 rules out directly.
class AssessmentSet {
public:
    AssessmentSet(StateSpace space, Utility utility, std::vector<Gamble> accepted,
                  std::vector<Gamble> rejected = {});

    [[nodiscard]] const StateSpace& space() const noexcept { return space_; }
    [[nodiscard]] const Utility& utility() const noexcept { return utility_; }
    [[nodiscard]] const std::vector<Gamble>& accepted() const noexcept { return accepted_; }
    [[nodiscard]] const std::vector<Gamble>& rejected() const noexcept { return rejected_; }

    // u(f_i) / u(g_j), precomputed at construction.
    [[nodiscard]] const std::vector<std::vector<double>>& transformed_accepted() const noexcept { return u_accepted_; }
    [[nodiscard]] const std::vector<std::vector<double>>& transformed_rejected() const noexcept { return u_rejected_; }

private:
    StateSpace space_;
    Utility utility_;
    std::vector<Gamble> accepted_;
    std::vector<Gamble> rejected_;
    std::vector<std::vector<double>> u_accepted_;
    std::vector<std::vector<double>> u_rejected_;
};

// Non-negative state weights, stored normalized to unit L1 norm.
class Functional {
public:
    explicit Functional(std::vector<double> weights);

    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] double operator()(std::span<const double> utilities) const;

private:
    std::vector<double> weights_;
};

struct AcceptanceResult {
    bool accepted = false;
    // max t such that u(g) - sum_i lambda_i u(f_i) >= t in every state (capped at 1).
    double margin = 0.0;
    std::vector<double> lambda;
    std::vector<double> combination; // sum_i lambda_i u(f_i)
};

// Natural-extension acceptance: u(g) dominates some element of the cone
// generated by the transformed accepted generators.
[[nodiscard]] AcceptanceResult accepts_detail(const AssessmentSet& a, const Gamble& g,
                                              const lp::SolveOptions& options = {});
[[nodiscard]] bool accepts(const AssessmentSet& a, const Gamble& g);

struct PartialLossResult {
    bool avoids = true;
    double margin = 0.0; // largest eps with sum lambda_i u(f_i) <= -eps (capped at 1)
    std::vector<double> lambda;
    std::vector<double> combination;
};

[[nodiscard]] PartialLossResult check_partial_loss(const AssessmentSet& a, const lp::SolveOptions& options = {});
[[nodiscard]] bool avoids_partial_loss(const AssessmentSet& a);

struct FitConstraint {
    bool from_accepted = true;
    std::size_t index = 0;
    std::vector<double> row; // weights . row >= 0 (accepted) or <= -eps (rejected)
};

struct FitResult {
    bool feasible = false;
    std::optional<Functional> functional;
    double margin = 0.0; // min accepted margin achieved by the returned weights
    double epsilon = 0.0;
    // The polytope of compatible weights is the unit simplex cut by these.
    std::vector<FitConstraint> constraints;
    // Irreducible conflicting subset when infeasible.
    std::vector<std::size_t> conflict_accepted;
    std::vector<std::size_t> conflict_rejected;
};

[[nodiscard]] FitResult fit_functional(const AssessmentSet& a, double epsilon = kDefaultRejectionMargin,
                                       const lp::SolveOptions& options = {});

// rho(f) = l(u(f)).
[[nodiscard]] double rho(const Functional& ell, const Utility& u, const Gamble& f);

// Acceptance signs and the full rho-ranking of fs agree under weights and
// c * weights.
[[nodiscard]] bool check_ordering_invariance(const Functional& ell, double c, const Utility& u,
                                             const std::vector<Gamble>& fs);

// Pointwise-threshold acceptance (u(f) >= 0 in every state) coincides under
// u and phi o u for every f. Throws InvalidArgument when phi(0) != 0 or phi
// is not strictly increasing over the utilities involved.
[[nodiscard]] bool check_transform_invariance(const Utility& u, const Transform& phi,
                                              const std::vector<Gamble>& fs);

// Probes accepted by the natural extension whose rho under ell is negative.
[[nodiscard]] std::vector<std::size_t> representation_cross_check(const AssessmentSet& a, const Functional& ell,
                                                                  const std::vector<Gamble>& probes);

struct Finding {
    enum class Axiom { F1, F2, F3 };
    Axiom axiom;
    std::string text; // one line, e.g. "F1 VIOLATION: witness lambda=[1, 1] combination=[-1, -1]"
};

struct AuditReport {
    std::vector<Finding> findings;
    PartialLossResult partial_loss;
    std::optional<FitResult> fit; // only attempted when no findings
    [[nodiscard]] bool coherent() const noexcept { return findings.empty(); }
};

// F1: partial-loss LP. F2: a rejected gamble dominates an accepted one.
// F3: a rejected gamble is reached by u-convex combination (natural extension).
[[nodiscard]] AuditReport audit(const AssessmentSet& a, double epsilon = kDefaultRejectionMargin,
                                const lp::SolveOptions& options = {});

} // namespace fcg
