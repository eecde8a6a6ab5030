#pragma once

#include "fcg/utility.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fcg {

// Reward-dependent exponent eta(x) > 0 for scale-dependent discounting.
class Eta {
public:
    enum class Form { InverseLog, Tabulated };

    // eta(x) = 1 / log_b(x) on x > 1.
    static Eta inverse_log(double log_base = 10.0);
    // Piecewise-linear monotone table of (x, eta) with strictly increasing x
    // and eta > 0; defined on [x_first, x_last].
    static Eta tabulated(std::vector<std::pair<double, double>> knots);

    [[nodiscard]] double operator()(double x) const;
    // InverseLog: -1 / (x ln b log_b(x)^2). Tabulated: central difference
    // with step 1e-5 x, one-sided at the table ends.
    [[nodiscard]] double derivative(double x) const;

    [[nodiscard]] Interval domain() const;
    [[nodiscard]] Form form() const noexcept { return form_; }
    [[nodiscard]] double log_base() const noexcept { return log_base_; }
    [[nodiscard]] const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }

    [[nodiscard]] std::string describe() const;

    friend bool operator==(const Eta&, const Eta&) = default;

private:
    Eta() = default;

    Form form_ = Form::InverseLog;
    double log_base_ = 10.0;
    std::vector<std::pair<double, double>> knots_;
};

enum class DiscountKind {
    Exponential,
    Hyperbolic,
    QuasiHyperbolic,
    GeneralizedHyperbolic,
    ScaleDependent,
    StateDependent,
    Hybrid,
};

// Exact evaluation, or replay of hand arithmetic that rounds every primitive
// factor to two decimals before combining (hybrid mixes round their parts).
enum class FactorRounding { Exact, TwoDecimals };

// Immutable discount-function description D(t[, x][, s]) in (0, 1].
class Discount {
public:
    static constexpr std::size_t kMaxDepth = 8;

    static Discount exponential(double rate);
    static Discount hyperbolic(double k);
    static Discount quasi_hyperbolic(double beta, double delta);
    static Discount generalized_hyperbolic(double k, double p);
    static Discount scale_dependent(Discount base, Eta eta);
    static Discount state_dependent(std::map<std::string, double> rates);
    static Discount hybrid(double lambda, Discount d1, Discount d2);

    // Throws MissingArgument when a reward (scale-dependent) or a state
    // (state-dependent) is needed but absent, UnknownState for an unmapped
    // state, DomainError when t < 0 or the reward is outside eta's domain.
    [[nodiscard]] double factor(double t, std::optional<double> reward = std::nullopt,
                                std::optional<std::string_view> state = std::nullopt,
                                FactorRounding rounding = FactorRounding::Exact) const;

    [[nodiscard]] DiscountKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t depth() const noexcept { return depth_; }
    [[nodiscard]] bool needs_reward() const;
    [[nodiscard]] bool needs_state() const;

    // Parameter accessors; meaning depends on kind.
    [[nodiscard]] double rate() const noexcept { return a_; }
    [[nodiscard]] double k() const noexcept { return a_; }
    [[nodiscard]] double beta() const noexcept { return a_; }
    [[nodiscard]] double delta() const noexcept { return b_; }
    [[nodiscard]] double p() const noexcept { return b_; }
    [[nodiscard]] double lambda() const noexcept { return a_; }
    [[nodiscard]] const Eta& eta() const;
    [[nodiscard]] const std::map<std::string, double>& rates() const noexcept { return rates_; }
    [[nodiscard]] const Discount& first() const;
    [[nodiscard]] const Discount& second() const;

    [[nodiscard]] std::string describe() const;

    friend bool operator==(const Discount& a, const Discount& b);

private:
    Discount() = default;

    DiscountKind kind_ = DiscountKind::Exponential;
    double a_ = 0.0;
    double b_ = 0.0;
    std::size_t depth_ = 1;
    std::shared_ptr<const Eta> eta_;
    std::map<std::string, double> rates_;
    std::shared_ptr<const Discount> d1_;
    std::shared_ptr<const Discount> d2_;
};

struct ScaleViolation {
    double t;
    double x;
    double value; // 1 + eta'(x) x ln D(t); a violation when <= 0
};

struct ConstraintReport {
    bool pass = true;
    std::size_t points_checked = 0;
    std::vector<ScaleViolation> violations;
};

// Checks that x -> D(t)^eta(x) x is strictly increasing at every grid point,
// i.e. 1 + eta'(x) x ln D(t) > 0.
[[nodiscard]] ConstraintReport check_scale_monotonicity(const Discount& d, const std::vector<double>& t_grid,
                                                        const std::vector<double>& x_grid,
                                                        std::optional<std::string_view> state = std::nullopt);

} // namespace fcg
