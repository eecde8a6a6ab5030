#include "fcg/coherence.hpp"

#include "fcg/errors.hpp"
#include "fcg/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fcg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_space(const StateSpace& space, const Gamble& g) {
    if (!(g.space() == space)) throw SpaceMismatch("gamble is defined over a different state space");
}

std::vector<double> combine(const std::vector<std::vector<double>>& rows, const std::vector<double>& lambda,
                            std::size_t m) {
    std::vector<double> out(m, 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t s = 0; s < m; ++s) out[s] += lambda[i] * rows[i][s];
    return out;
}

std::vector<double> clamp_nonnegative(std::vector<double> v) {
    for (double& x : v)
        if (x < 0.0) x = 0.0;
    return v;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Margin LP over the simplex of weights: maximize t subject to
// w . acc_i >= t, w . rej_j <= -eps, sum w = 1, w >= 0.
struct WeightFit {
    bool feasible = false;
    std::vector<double> weights;
    double margin = 0.0;
};

WeightFit solve_weights(std::size_t m, const std::vector<const std::vector<double>*>& acc,
                        const std::vector<const std::vector<double>*>& rej, double epsilon,
                        const lp::SolveOptions& options) {
    lp::Problem p;
    p.objective.assign(m + 1, 0.0);
    p.lower_bounds.assign(m + 1, 0.0);
    p.lower_bounds[m] = -kInf;
    if (!acc.empty()) p.objective[m] = 1.0;

    std::vector<double> simplex(m + 1, 1.0);
    simplex[m] = 0.0;
    p.constraints.push_back({simplex, lp::Relation::Equal, 1.0});
    for (const auto* row : acc) {
        std::vector<double> r(row->begin(), row->end());
        r.push_back(-1.0);
        p.constraints.push_back({std::move(r), lp::Relation::GreaterEqual, 0.0});
    }
    for (const auto* row : rej) {
        std::vector<double> r(row->begin(), row->end());
        r.push_back(0.0);
        p.constraints.push_back({std::move(r), lp::Relation::LessEqual, -epsilon});
    }
    if (acc.empty()) {
        std::vector<double> cap(m + 1, 0.0);
        cap[m] = 1.0;
        p.constraints.push_back({std::move(cap), lp::Relation::Equal, 0.0});
    }

    const auto sol = lp::solve(p, options);
    WeightFit fit;
    if (sol.status != lp::Status::Optimal) return fit;
    fit.margin = sol.x[m];
    fit.weights = clamp_nonnegative(std::vector<double>(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(m)));
    fit.feasible = fit.margin >= -kAcceptanceTolerance;
    return fit;
}

int sign_with_tolerance(double value, double scale) {
    const double tol = 1e-12 * std::max(scale, 1e-300);
    if (value > tol) return 1;
    if (value < -tol) return -1;
    return 0;
}

} // namespace

// ---------------------------------------------------------------------------

AssessmentSet::AssessmentSet(StateSpace space, Utility utility, std::vector<Gamble> accepted,
                             std::vector<Gamble> rejected)
    : space_(std::move(space)), utility_(std::move(utility)), accepted_(std::move(accepted)),
      rejected_(std::move(rejected)) {
    for (std::size_t i = 0; i < accepted_.size(); ++i) {
        require_space(space_, accepted_[i]);
        auto row = transform(utility_, accepted_[i]);
        if (std::all_of(row.begin(), row.end(), [](double v) { return v < 0.0; }))
            throw InvalidArgument("accepted generator " + std::to_string(i) +
                                  " is everywhere strictly negative (avoid partial loss)");
        u_accepted_.push_back(std::move(row));
    }
    for (const auto& g : rejected_) {
        require_space(space_, g);
        u_rejected_.push_back(transform(utility_, g));
    }
}

Functional::Functional(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidArgument("functional needs at least one weight");
    double total = 0.0;
    for (double w : weights_) {
        if (!(std::isfinite(w) && w >= 0.0)) throw InvalidArgument("functional weights must be finite and >= 0");
        total += w;
    }
    if (!(total > 0.0)) throw InvalidArgument("functional weights must not all be zero");
    for (double& w : weights_) w /= total;
}

double Functional::operator()(std::span<const double> utilities) const {
    if (utilities.size() != weights_.size()) throw SpaceMismatch("functional and gamble sizes differ");
    return dot(weights_, utilities);
}

// ---------------------------------------------------------------------------

AcceptanceResult accepts_detail(const AssessmentSet& a, const Gamble& g, const lp::SolveOptions& options) {
    require_space(a.space(), g);
    const auto ug = transform(a.utility(), g);
    const auto& gens = a.transformed_accepted();
    const std::size_t n = gens.size();
    const std::size_t m = ug.size();

    AcceptanceResult result;
    // Empty conic combination: every u(g) >= 0 is accepted outright.
    const double min_ug = *std::min_element(ug.begin(), ug.end());
    if (min_ug >= 0.0 || n == 0) {
        result.accepted = min_ug >= -kAcceptanceTolerance;
        result.margin = std::min(min_ug, 1.0);
        result.lambda.assign(n, 0.0);
        result.combination.assign(m, 0.0);
        return result;
    }

    // Variables: lambda_1..lambda_n >= 0, t free. Maximize t subject to
    // sum_i lambda_i u(f_i)(s) + t <= u(g)(s) and t <= 1.
    lp::Problem p;
    p.objective.assign(n + 1, 0.0);
    p.objective[n] = 1.0;
    p.lower_bounds.assign(n + 1, 0.0);
    p.lower_bounds[n] = -kInf;
    for (std::size_t s = 0; s < m; ++s) {
        std::vector<double> row(n + 1);
        for (std::size_t i = 0; i < n; ++i) row[i] = gens[i][s];
        row[n] = 1.0;
        p.constraints.push_back({std::move(row), lp::Relation::LessEqual, ug[s]});
    }
    std::vector<double> cap(n + 1, 0.0);
    cap[n] = 1.0;
    p.constraints.push_back({std::move(cap), lp::Relation::LessEqual, 1.0});

    const auto sol = lp::solve(p, options);
    if (sol.status != lp::Status::Optimal)
        throw NumericalInstability(std::string("acceptance LP returned ") + lp::to_string(sol.status), p.dump());

    result.margin = sol.x[n];
    result.accepted = result.margin >= -kAcceptanceTolerance;
    result.lambda = clamp_nonnegative(std::vector<double>(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n)));
    result.combination = combine(gens, result.lambda, m);
    return result;
}

bool accepts(const AssessmentSet& a, const Gamble& g) { return accepts_detail(a, g).accepted; }

PartialLossResult check_partial_loss(const AssessmentSet& a, const lp::SolveOptions& options) {
    const auto& gens = a.transformed_accepted();
    const std::size_t n = gens.size();
    const std::size_t m = a.space().size();
    PartialLossResult result;
    if (n == 0) return result;

    // Variables: lambda >= 0, eps free. Maximize eps subject to
    // sum_i lambda_i u(f_i)(s) + eps <= 0 and eps <= 1.
    lp::Problem p;
    p.objective.assign(n + 1, 0.0);
    p.objective[n] = 1.0;
    p.lower_bounds.assign(n + 1, 0.0);
    p.lower_bounds[n] = -kInf;
    for (std::size_t s = 0; s < m; ++s) {
        std::vector<double> row(n + 1);
        for (std::size_t i = 0; i < n; ++i) row[i] = gens[i][s];
        row[n] = 1.0;
        p.constraints.push_back({std::move(row), lp::Relation::LessEqual, 0.0});
    }
    std::vector<double> cap(n + 1, 0.0);
    cap[n] = 1.0;
    p.constraints.push_back({std::move(cap), lp::Relation::LessEqual, 1.0});

    const auto sol = lp::solve(p, options);
    if (sol.status != lp::Status::Optimal)
        throw NumericalInstability(std::string("partial-loss LP returned ") + lp::to_string(sol.status), p.dump());

    result.margin = sol.x[n];
    result.avoids = result.margin <= kAcceptanceTolerance;
    result.lambda = clamp_nonnegative(std::vector<double>(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n)));
    result.combination = combine(gens, result.lambda, m);
    return result;
}

bool avoids_partial_loss(const AssessmentSet& a) { return check_partial_loss(a).avoids; }

FitResult fit_functional(const AssessmentSet& a, double epsilon, const lp::SolveOptions& options) {
    if (!(epsilon > 0.0 && epsilon <= 1e-2)) throw InvalidArgument("fit_functional needs epsilon in (0, 1e-2]");
    const std::size_t m = a.space().size();
    const auto& acc = a.transformed_accepted();
    const auto& rej = a.transformed_rejected();

    FitResult result;
    result.epsilon = epsilon;
    for (std::size_t i = 0; i < acc.size(); ++i) result.constraints.push_back({true, i, acc[i]});
    for (std::size_t j = 0; j < rej.size(); ++j) result.constraints.push_back({false, j, rej[j]});

    std::vector<const std::vector<double>*> acc_rows, rej_rows;
    for (const auto& r : acc) acc_rows.push_back(&r);
    for (const auto& r : rej) rej_rows.push_back(&r);

    const auto fit = solve_weights(m, acc_rows, rej_rows, epsilon, options);
    if (fit.feasible) {
        result.feasible = true;
        result.functional = Functional(fit.weights);
        result.margin = acc.empty() ? 0.0 : kInf;
        for (const auto& row : acc) result.margin = std::min(result.margin, (*result.functional)(row));
        return result;
    }

    // Greedy deletion in input order (accepted first, then rejected): drop a
    // constraint whenever the rest stays infeasible.
    std::vector<bool> keep(result.constraints.size(), true);
    for (std::size_t k = 0; k < result.constraints.size(); ++k) {
        keep[k] = false;
        acc_rows.clear();
        rej_rows.clear();
        for (std::size_t q = 0; q < result.constraints.size(); ++q) {
            if (!keep[q]) continue;
            (result.constraints[q].from_accepted ? acc_rows : rej_rows).push_back(&result.constraints[q].row);
        }
        if (solve_weights(m, acc_rows, rej_rows, epsilon, options).feasible) keep[k] = true;
    }
    for (std::size_t q = 0; q < result.constraints.size(); ++q) {
        if (!keep[q]) continue;
        const auto& c = result.constraints[q];
        (c.from_accepted ? result.conflict_accepted : result.conflict_rejected).push_back(c.index);
    }
    return result;
}

double rho(const Functional& ell, const Utility& u, const Gamble& f) {
    if (ell.size() != f.size()) throw SpaceMismatch("functional and gamble sizes differ");
    return ell(transform(u, f));
}

bool check_ordering_invariance(const Functional& ell, double c, const Utility& u, const std::vector<Gamble>& fs) {
    if (!(c > 0.0 && std::isfinite(c))) throw InvalidArgument("ordering invariance needs a finite c > 0");
    if (fs.empty()) throw InvalidArgument("ordering invariance needs at least one gamble");

    std::vector<double> scaled_weights = ell.weights();
    for (double& w : scaled_weights) w *= c;

    const std::size_t k = fs.size();
    std::vector<double> base(k), scaled(k), base_mag(k), scaled_mag(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (fs[i].size() != ell.size()) throw SpaceMismatch("functional and gamble sizes differ");
        const auto uf = transform(u, fs[i]);
        for (std::size_t s = 0; s < uf.size(); ++s) {
            base[i] += ell.weights()[s] * uf[s];
            scaled[i] += scaled_weights[s] * uf[s];
            base_mag[i] += std::abs(ell.weights()[s] * uf[s]);
            scaled_mag[i] += std::abs(scaled_weights[s] * uf[s]);
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        if (sign_with_tolerance(base[i], base_mag[i]) != sign_with_tolerance(scaled[i], scaled_mag[i])) return false;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const int b = sign_with_tolerance(base[i] - base[j], base_mag[i] + base_mag[j]);
            const int s = sign_with_tolerance(scaled[i] - scaled[j], scaled_mag[i] + scaled_mag[j]);
            if (b != s) return false;
        }
    }
    return true;
}

bool check_transform_invariance(const Utility& u, const Transform& phi, const std::vector<Gamble>& fs) {
    if (std::abs(phi(0.0)) > 1e-12) throw InvalidArgument("transform must satisfy phi(0) = 0");

    std::vector<std::vector<double>> values;
    std::vector<double> all{0.0};
    for (const auto& f : fs) {
        values.push_back(transform(u, f));
        all.insert(all.end(), values.back().begin(), values.back().end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    constexpr std::size_t kProbe = 1001;
    const double lo = all.front();
    const double hi = all.back();
    std::vector<double> probe = all;
    if (hi > lo)
        for (std::size_t i = 0; i < kProbe; ++i) probe.push_back(lo + (hi - lo) * static_cast<double>(i) / (kProbe - 1));
    std::sort(probe.begin(), probe.end());
    // Points closer than rounding noise can't be told apart by phi.
    std::vector<double> spaced;
    for (double y : probe)
        if (spaced.empty() || y > spaced.back() + 1e-9 * (1.0 + std::abs(spaced.back()))) spaced.push_back(y);
    for (std::size_t i = 1; i < spaced.size(); ++i)
        if (!(phi(spaced[i]) > phi(spaced[i - 1])))
            throw InvalidArgument("transform is not strictly increasing near utility " + format_g(spaced[i]));

    for (const auto& uf : values) {
        const bool under_u = std::all_of(uf.begin(), uf.end(), [](double v) { return v >= 0.0; });
        const bool under_phi = std::all_of(uf.begin(), uf.end(), [&](double v) { return phi(v) >= 0.0; });
        if (under_u != under_phi) return false;
    }
    return true;
}

std::vector<std::size_t> representation_cross_check(const AssessmentSet& a, const Functional& ell,
                                                    const std::vector<Gamble>& probes) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < probes.size(); ++i)
        if (accepts(a, probes[i]) && rho(ell, a.utility(), probes[i]) < -kAcceptanceTolerance) bad.push_back(i);
    return bad;
}

AuditReport audit(const AssessmentSet& a, double epsilon, const lp::SolveOptions& options) {
    AuditReport report;
    report.partial_loss = check_partial_loss(a, options);
    if (!report.partial_loss.avoids) {
        report.findings.push_back({Finding::Axiom::F1, "F1 VIOLATION: witness lambda=" +
                                                           format_vector(report.partial_loss.lambda) +
                                                           " combination=" +
                                                           format_vector(report.partial_loss.combination)});
    }

    for (std::size_t j = 0; j < a.rejected().size(); ++j) {
        const Gamble& g = a.rejected()[j];
        bool dominated = false;
        for (std::size_t i = 0; i < a.accepted().size(); ++i) {
            if (dominates(g, a.accepted()[i])) {
                report.findings.push_back({Finding::Axiom::F2, "F2 VIOLATION: rejected[" + std::to_string(j) +
                                                                   "] dominates accepted[" + std::to_string(i) +
                                                                   "]"});
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        const auto acc = accepts_detail(a, g, options);
        const bool empty_combination =
            std::all_of(acc.lambda.begin(), acc.lambda.end(), [](double l) { return l == 0.0; });
        if (acc.accepted && empty_combination) {
            report.findings.push_back({Finding::Axiom::F2, "F2 VIOLATION: rejected[" + std::to_string(j) +
                                                               "] has u(g) >= 0 in every state"});
        } else if (acc.accepted) {
            report.findings.push_back({Finding::Axiom::F3, "F3 VIOLATION: rejected[" + std::to_string(j) +
                                                               "] is reached by u-convex combination: witness lambda=" +
                                                               format_vector(acc.lambda) +
                                                               " combination=" + format_vector(acc.combination)});
        }
    }

    if (report.findings.empty()) report.fit = fit_functional(a, epsilon, options);
    return report;
}

} // namespace fcg
