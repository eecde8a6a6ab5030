#include "fcg/utility.hpp"

#include "fcg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fcg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBisectionIterations = 200;
constexpr int kBracketExpansions = 2100;

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

// ---------------------------------------------------------------------------
// Interval

bool Interval::contains(double x) const noexcept {
    if (std::isnan(x)) return false;
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

bool Interval::bounded_below() const noexcept { return std::isfinite(lo); }
bool Interval::bounded_above() const noexcept { return std::isfinite(hi); }

Interval Interval::real_line() noexcept { return Interval{-kInf, kInf, false, false}; }

// ---------------------------------------------------------------------------
// Transform

Transform Transform::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw InvalidArgument("polynomial transform needs at least one coefficient");
    for (double c : coeffs)
        if (!std::isfinite(c)) throw InvalidArgument("polynomial transform coefficient is not finite");
    Transform t;
    t.form_ = Form::Polynomial;
    t.coeffs_ = std::move(coeffs);
    return t;
}

Transform Transform::signed_power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidArgument("signed power transform needs p > 0");
    Transform t;
    t.form_ = Form::SignedPower;
    t.power_ = p;
    return t;
}

Transform Transform::tabulated(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw InvalidArgument("tabulated transform needs at least two knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i].first) || !std::isfinite(knots[i].second))
            throw InvalidArgument("tabulated transform knot is not finite");
        if (i > 0 && !(knots[i].first > knots[i - 1].first))
            throw InvalidArgument("tabulated transform knots must have strictly increasing abscissae");
    }
    Transform t;
    t.form_ = Form::Tabulated;
    t.knots_ = std::move(knots);
    return t;
}

double Transform::operator()(double y) const {
    switch (form_) {
    case Form::Polynomial: {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
        return acc;
    }
    case Form::SignedPower:
        return std::copysign(std::pow(std::abs(y), power_), y);
    case Form::Tabulated: {
        std::size_t seg = 0;
        if (y >= knots_.back().first) {
            seg = knots_.size() - 2;
        } else if (y > knots_.front().first) {
            auto it = std::upper_bound(knots_.begin(), knots_.end(), y,
                                       [](double v, const auto& k) { return v < k.first; });
            seg = static_cast<std::size_t>(it - knots_.begin()) - 1;
        }
        const auto& [x0, y0] = knots_[seg];
        const auto& [x1, y1] = knots_[seg + 1];
        return y0 + (y1 - y0) * (y - x0) / (x1 - x0);
    }
    }
    return 0.0;
}

double Transform::limit(bool towards_plus_infinity) const {
    switch (form_) {
    case Form::Polynomial: {
        std::size_t degree = coeffs_.size() - 1;
        while (degree > 0 && coeffs_[degree] == 0.0) --degree;
        if (degree == 0) return coeffs_[0];
        double sign = coeffs_[degree] > 0 ? 1.0 : -1.0;
        if (!towards_plus_infinity && degree % 2 == 1) sign = -sign;
        return sign * kInf;
    }
    case Form::SignedPower:
        return towards_plus_infinity ? kInf : -kInf;
    case Form::Tabulated: {
        const auto& a = towards_plus_infinity ? knots_[knots_.size() - 2] : knots_[0];
        const auto& b = towards_plus_infinity ? knots_.back() : knots_[1];
        const double slope = (b.second - a.second) / (b.first - a.first);
        if (slope == 0.0) return towards_plus_infinity ? b.second : a.second;
        return (slope > 0) == towards_plus_infinity ? kInf : -kInf;
    }
    }
    return 0.0;
}

Interval Transform::map_interval(const Interval& range) const {
    Interval out;
    out.lo = range.bounded_below() ? (*this)(range.lo) : limit(false);
    out.hi = range.bounded_above() ? (*this)(range.hi) : limit(true);
    out.lo_closed = range.bounded_below() && range.lo_closed;
    out.hi_closed = range.bounded_above() && range.hi_closed;
    return out;
}

double Transform::inverse(double v, const Interval& range) const {
    if (!std::isfinite(v)) throw ImageError("cannot invert a non-finite value " + fmt_num(v));

    if (form_ == Form::SignedPower) {
        const double y = std::copysign(std::pow(std::abs(v), 1.0 / power_), v);
        if (!range.contains(y)) throw ImageError("value " + fmt_num(v) + " is outside the transform image");
        return y;
    }

    const auto& phi = *this;

    // Starting point inside the range.
    double start = 0.0;
    if (!range.contains(0.0)) {
        if (range.bounded_below() && range.bounded_above()) start = 0.5 * (range.lo + range.hi);
        else if (range.bounded_below()) start = range.lo + 1.0;
        else start = range.hi - 1.0;
    }
    const double f_start = phi(start);
    if (f_start == v) return start;
    const bool go_up = f_start < v;

    // Walk outward until phi crosses v; keep the last point on the near side.
    double near = start;
    double far = start;
    bool bracketed = false;
    double step = 1.0;
    for (int i = 0; i < kBracketExpansions; ++i) {
        double next;
        const bool bounded = go_up ? range.bounded_above() : range.bounded_below();
        const double bound = go_up ? range.hi : range.lo;
        const bool closed = go_up ? range.hi_closed : range.lo_closed;
        if (bounded) {
            next = far + 0.5 * (bound - far);
            if (next == far) {
                if (!closed) break;
                next = bound;
            }
        } else {
            next = go_up ? far + step : far - step;
            step *= 2.0;
            if (!std::isfinite(next)) break;
        }
        const double f_next = phi(next);
        if (go_up ? f_next >= v : f_next <= v) {
            far = next;
            bracketed = true;
            break;
        }
        near = next;
        far = next;
        if (bounded && next == bound) break;
    }
    if (!bracketed) throw ImageError("value " + fmt_num(v) + " is outside the transform image");

    double lo = go_up ? near : far;
    double hi = go_up ? far : near;
    for (int i = 0; i < kBisectionIterations; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid == lo || mid == hi) break;
        const double f_mid = phi(mid);
        if (f_mid == v) return mid;
        if (f_mid < v) lo = mid;
        else hi = mid;
    }
    return std::abs(phi(lo) - v) <= std::abs(phi(hi) - v) ? lo : hi;
}

std::string Transform::describe() const {
    std::ostringstream os;
    switch (form_) {
    case Form::Polynomial:
        os << "polynomial[";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
        os << "]";
        break;
    case Form::SignedPower:
        os << "signed_power(" << power_ << ")";
        break;
    case Form::Tabulated:
        os << "tabulated(" << knots_.size() << " knots)";
        break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Utility

Utility Utility::linear() { return Utility{}; }

Utility Utility::log_shift() {
    Utility u;
    u.kind_ = UtilityKind::LogShift;
    return u;
}

Utility Utility::sqrt() {
    Utility u;
    u.kind_ = UtilityKind::Sqrt;
    return u;
}

Utility Utility::power_discounted(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidArgument("power_discounted alpha must lie in [0, 1)");
    Utility u;
    u.kind_ = UtilityKind::PowerDiscounted;
    u.alpha_ = alpha;
    return u;
}

Utility Utility::composed(Transform phi, Utility base) {
    Utility u;
    u.kind_ = UtilityKind::Composed;
    u.phi_ = std::make_shared<const Transform>(std::move(phi));
    u.base_ = std::make_shared<const Utility>(std::move(base));
    return u;
}

const Transform& Utility::phi() const {
    if (!phi_) throw InvalidArgument("utility has no transform (not a composed utility)");
    return *phi_;
}

const Utility& Utility::base() const {
    if (!base_) throw InvalidArgument("utility has no base (not a composed utility)");
    return *base_;
}

Interval Utility::domain() const {
    switch (kind_) {
    case UtilityKind::Linear: return Interval::real_line();
    case UtilityKind::LogShift: return Interval{-1.0, kInf, false, false};
    case UtilityKind::Sqrt: return Interval{0.0, kInf, true, false};
    case UtilityKind::PowerDiscounted: return Interval{0.0, kInf, false, false};
    case UtilityKind::Composed: return base_->domain();
    }
    return Interval::real_line();
}

Interval Utility::image() const {
    switch (kind_) {
    case UtilityKind::Linear:
    case UtilityKind::LogShift: return Interval::real_line();
    case UtilityKind::Sqrt: return Interval{0.0, kInf, true, false};
    case UtilityKind::PowerDiscounted: return Interval{-alpha_ / (1.0 - alpha_), kInf, false, false};
    case UtilityKind::Composed: return phi_->map_interval(base_->image());
    }
    return Interval::real_line();
}

bool Utility::requires_wealth_shift() const {
    if (kind_ == UtilityKind::PowerDiscounted) return true;
    if (kind_ == UtilityKind::Composed) return base_->requires_wealth_shift();
    return false;
}

double Utility::eval(double x) const {
    if (!in_domain(x))
        throw DomainError("reward " + fmt_num(x) + " is outside the domain of " + describe());
    switch (kind_) {
    case UtilityKind::Linear: return x;
    case UtilityKind::LogShift: return std::log1p(x);
    case UtilityKind::Sqrt: return std::sqrt(x);
    case UtilityKind::PowerDiscounted:
        if (alpha_ == 0.0) return x;
        return (std::pow(x, 1.0 - alpha_) - alpha_) / (1.0 - alpha_);
    case UtilityKind::Composed: return (*phi_)(base_->eval(x));
    }
    return x;
}

double Utility::inverse(double v) const {
    if (!image().contains(v))
        throw ImageError("utility value " + fmt_num(v) + " is outside the image of " + describe());
    switch (kind_) {
    case UtilityKind::Linear: return v;
    case UtilityKind::LogShift: return std::expm1(v);
    case UtilityKind::Sqrt: return v * v;
    case UtilityKind::PowerDiscounted: {
        if (alpha_ == 0.0) return v;
        const double inner = (1.0 - alpha_) * v + alpha_;
        return std::pow(inner, 1.0 / (1.0 - alpha_));
    }
    case UtilityKind::Composed: return base_->inverse(phi_->inverse(v, base_->image()));
    }
    return v;
}

std::string Utility::describe() const {
    switch (kind_) {
    case UtilityKind::Linear: return "linear";
    case UtilityKind::LogShift: return "log_shift";
    case UtilityKind::Sqrt: return "sqrt";
    case UtilityKind::PowerDiscounted: return "power_discounted(alpha=" + fmt_num(alpha_) + ")";
    case UtilityKind::Composed: return phi_->describe() + " o " + base_->describe();
    }
    return "?";
}

bool operator==(const Utility& a, const Utility& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
    case UtilityKind::PowerDiscounted: return a.alpha_ == b.alpha_;
    case UtilityKind::Composed: return *a.phi_ == *b.phi_ && *a.base_ == *b.base_;
    default: return true;
    }
}

// ---------------------------------------------------------------------------
// Admissibility

std::pair<double, double> default_audit_range(const Utility& u) {
    const Interval d = u.domain();
    if (!d.bounded_below()) return {-10.0, 10.0};
    const double lo = d.lo_closed ? d.lo : d.lo + 0.01;
    return {lo, d.lo + 100.0};
}

AdmissibilityReport audit_admissibility(const Utility& u, std::size_t grid_n) {
    const auto [lo, hi] = default_audit_range(u);
    return audit_admissibility(u, grid_n, lo, hi);
}

AdmissibilityReport audit_admissibility(const Utility& u, std::size_t grid_n, double lo, double hi) {
    if (grid_n < 3) throw InvalidArgument("admissibility audit needs grid_n >= 3");
    if (!(lo < hi)) throw InvalidArgument("admissibility audit needs lo < hi");
    if (!u.in_domain(lo) || !u.in_domain(hi)) throw DomainError("audit window leaves the utility domain");

    AdmissibilityReport r;
    r.grid_n = grid_n;
    r.grid_lo = lo;
    r.grid_hi = hi;

    r.strictly_increasing = true;
    double prev = u.eval(lo);
    for (std::size_t i = 1; i < grid_n; ++i) {
        const double x = (i + 1 == grid_n)
                             ? hi
                             : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_n - 1);
        const double cur = u.eval(x);
        if (!(cur > prev)) r.strictly_increasing = false;
        prev = cur;
    }
    if (u.in_domain(0.0)) r.zero_normalized = std::abs(u.eval(0.0)) <= 1e-12;
    r.image_interval = r.strictly_increasing;
    return r;
}

} // namespace fcg
