#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fcg {

// Real interval with independently open/closed ends; infinite ends are open.
struct Interval {
    double lo;
    double hi;
    bool lo_closed = false;
    bool hi_closed = false;

    [[nodiscard]] bool contains(double x) const noexcept;
    [[nodiscard]] bool bounded_below() const noexcept;
    [[nodiscard]] bool bounded_above() const noexcept;

    static Interval real_line() noexcept;
};

// A real map phi used to build phi o u. Admissible transforms are strictly
// increasing with phi(0) = 0; neither property is enforced here so that
// audits can be run against deliberately broken fixtures.
class Transform {
public:
    enum class Form { Polynomial, SignedPower, Tabulated };

    // c0 + c1*y + c2*y^2 + ...
    static Transform polynomial(std::vector<double> coeffs);
    // sign(y) * |y|^p, p > 0.
    static Transform signed_power(double p);
    // Piecewise-linear through (y, phi) knots with strictly increasing y;
    // the end segments extrapolate linearly.
    static Transform tabulated(std::vector<std::pair<double, double>> knots);
    static Transform scale(double c) { return polynomial({0.0, c}); }

    [[nodiscard]] double operator()(double y) const;

    // Solves phi(y) = v for y inside `range` (bracket expansion + bisection,
    // closed form where one exists). Throws ImageError when v is not attained.
    [[nodiscard]] double inverse(double v, const Interval& range) const;

    // Image of `range` under phi, assuming phi is increasing.
    [[nodiscard]] Interval map_interval(const Interval& range) const;

    [[nodiscard]] Form form() const noexcept { return form_; }
    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] double power() const noexcept { return power_; }
    [[nodiscard]] const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }

    [[nodiscard]] std::string describe() const;

    friend bool operator==(const Transform&, const Transform&) = default;

private:
    Transform() = default;
    [[nodiscard]] double limit(bool towards_plus_infinity) const;

    Form form_ = Form::Polynomial;
    std::vector<double> coeffs_;
    double power_ = 1.0;
    std::vector<std::pair<double, double>> knots_;
};

enum class UtilityKind { Linear, LogShift, Sqrt, PowerDiscounted, Composed };

// An immutable, strictly increasing utility u: X -> R.
//
//   Linear           u(x) = x
//   LogShift         u(x) = log(1 + x),                x > -1
//   Sqrt             u(x) = sqrt(x),                   x >= 0
//   PowerDiscounted  u(x) = (x^(1-a) - a) / (1 - a),   x > 0, a in [0, 1)
//   Composed         u(x) = phi(base(x))
//
// Closed-form inverses are used for every kind except Composed, which
// inverts phi numerically and then applies the base inverse.
class Utility {
public:
    static Utility linear();
    static Utility log_shift();
    static Utility sqrt();
    static Utility power_discounted(double alpha);
    static Utility composed(Transform phi, Utility base);

    [[nodiscard]] UtilityKind kind() const noexcept { return kind_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    // Only meaningful for Composed.
    [[nodiscard]] const Transform& phi() const;
    [[nodiscard]] const Utility& base() const;

    [[nodiscard]] Interval domain() const;
    [[nodiscard]] Interval image() const;
    [[nodiscard]] bool in_domain(double x) const { return domain().contains(x); }

    // True when the kind is only defined on strictly positive rewards, so
    // gambles must be evaluated on the wealth-shifted reward w + f.
    [[nodiscard]] bool requires_wealth_shift() const;

    [[nodiscard]] double eval(double x) const;
    [[nodiscard]] double inverse(double v) const;

    [[nodiscard]] std::string describe() const;

    friend bool operator==(const Utility& a, const Utility& b);

private:
    Utility() = default;

    UtilityKind kind_ = UtilityKind::Linear;
    double alpha_ = 0.0;
    std::shared_ptr<const Transform> phi_;
    std::shared_ptr<const Utility> base_;
};

struct AdmissibilityReport {
    bool strictly_increasing = false;
    // nullopt when 0 is outside the domain (not applicable).
    std::optional<bool> zero_normalized;
    // Continuous + strictly increasing on an interval gives an interval image.
    bool image_interval = false;
    std::size_t grid_n = 0;
    double grid_lo = 0.0;
    double grid_hi = 0.0;

    [[nodiscard]] bool admissible() const {
        return strictly_increasing && image_interval && zero_normalized.value_or(true);
    }
};

// Default audit window: [-10, 10] for utilities unbounded below, otherwise
// 100 units above the domain floor (0.01 inside it when the floor is open).
[[nodiscard]] std::pair<double, double> default_audit_range(const Utility& u);

[[nodiscard]] AdmissibilityReport audit_admissibility(const Utility& u, std::size_t grid_n);
[[nodiscard]] AdmissibilityReport audit_admissibility(const Utility& u, std::size_t grid_n,
                                                      double lo, double hi);

} // namespace fcg
