#include "fcg/discount.hpp"

#include "fcg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fcg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

// ---------------------------------------------------------------------------
// Eta

Eta Eta::inverse_log(double log_base) {
    if (!(std::isfinite(log_base) && log_base > 1.0)) throw InvalidArgument("inverse_log eta needs log_base > 1");
    Eta e;
    e.form_ = Form::InverseLog;
    e.log_base_ = log_base;
    return e;
}

Eta Eta::tabulated(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw InvalidArgument("tabulated eta needs at least two knots");
    bool non_decreasing = true;
    bool non_increasing = true;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i].first) || !finite_positive(knots[i].second))
            throw InvalidArgument("tabulated eta needs finite x and eta > 0");
        if (i > 0) {
            if (!(knots[i].first > knots[i - 1].first))
                throw InvalidArgument("tabulated eta abscissae must be strictly increasing");
            non_decreasing = non_decreasing && knots[i].second >= knots[i - 1].second;
            non_increasing = non_increasing && knots[i].second <= knots[i - 1].second;
        }
    }
    if (!non_decreasing && !non_increasing) throw InvalidArgument("tabulated eta must be monotone");
    Eta e;
    e.form_ = Form::Tabulated;
    e.knots_ = std::move(knots);
    return e;
}

Interval Eta::domain() const {
    if (form_ == Form::InverseLog) return Interval{1.0, kInf, false, false};
    return Interval{knots_.front().first, knots_.back().first, true, true};
}

double Eta::operator()(double x) const {
    if (!domain().contains(x)) throw DomainError("reward " + fmt_num(x) + " is outside the eta domain");
    if (form_ == Form::InverseLog) return std::log(log_base_) / std::log(x);

    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const auto& k) { return v < k.first; });
    std::size_t seg = it == knots_.end() ? knots_.size() - 2 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    const auto& [x0, e0] = knots_[seg];
    const auto& [x1, e1] = knots_[seg + 1];
    return e0 + (e1 - e0) * (x - x0) / (x1 - x0);
}

double Eta::derivative(double x) const {
    if (!domain().contains(x)) throw DomainError("reward " + fmt_num(x) + " is outside the eta domain");
    if (form_ == Form::InverseLog) {
        const double lb = std::log(x) / std::log(log_base_);
        return -1.0 / (x * std::log(log_base_) * lb * lb);
    }
    const double h = 1e-5 * std::max(std::abs(x), 1e-300);
    const Interval d = domain();
    const double lo = std::max(x - h, d.lo);
    const double hi = std::min(x + h, d.hi);
    return ((*this)(hi) - (*this)(lo)) / (hi - lo);
}

std::string Eta::describe() const {
    if (form_ == Form::InverseLog) return "inverse_log(base=" + fmt_num(log_base_) + ")";
    return "tabulated(" + std::to_string(knots_.size()) + " knots)";
}

// ---------------------------------------------------------------------------
// Discount

Discount Discount::exponential(double rate) {
    if (!(std::isfinite(rate) && rate >= 0.0)) throw InvalidArgument("exponential discount needs rate >= 0");
    Discount d;
    d.kind_ = DiscountKind::Exponential;
    d.a_ = rate;
    return d;
}

Discount Discount::hyperbolic(double k) {
    if (!finite_positive(k)) throw InvalidArgument("hyperbolic discount needs k > 0");
    Discount d;
    d.kind_ = DiscountKind::Hyperbolic;
    d.a_ = k;
    return d;
}

Discount Discount::quasi_hyperbolic(double beta, double delta) {
    if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("quasi-hyperbolic discount needs beta in (0, 1]");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("quasi-hyperbolic discount needs delta in (0, 1)");
    Discount d;
    d.kind_ = DiscountKind::QuasiHyperbolic;
    d.a_ = beta;
    d.b_ = delta;
    return d;
}

Discount Discount::generalized_hyperbolic(double k, double p) {
    if (!finite_positive(k)) throw InvalidArgument("generalized hyperbolic discount needs k > 0");
    if (!finite_positive(p)) throw InvalidArgument("generalized hyperbolic discount needs p > 0");
    Discount d;
    d.kind_ = DiscountKind::GeneralizedHyperbolic;
    d.a_ = k;
    d.b_ = p;
    return d;
}

Discount Discount::scale_dependent(Discount base, Eta eta) {
    if (base.depth_ + 1 > kMaxDepth)
        throw InvalidArgument("discount nesting deeper than " + std::to_string(kMaxDepth));
    Discount d;
    d.kind_ = DiscountKind::ScaleDependent;
    d.depth_ = base.depth_ + 1;
    d.eta_ = std::make_shared<const Eta>(std::move(eta));
    d.d1_ = std::make_shared<const Discount>(std::move(base));
    return d;
}

Discount Discount::state_dependent(std::map<std::string, double> rates) {
    if (rates.empty()) throw InvalidArgument("state-dependent discount needs at least one state rate");
    for (const auto& [label, r] : rates)
        if (!finite_positive(r)) throw InvalidArgument("state-dependent rate for '" + label + "' must be > 0");
    Discount d;
    d.kind_ = DiscountKind::StateDependent;
    d.rates_ = std::move(rates);
    return d;
}

Discount Discount::hybrid(double lambda, Discount d1, Discount d2) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("hybrid discount needs lambda in [0, 1]");
    const std::size_t depth = std::max(d1.depth_, d2.depth_) + 1;
    if (depth > kMaxDepth) throw InvalidArgument("discount nesting deeper than " + std::to_string(kMaxDepth));
    Discount d;
    d.kind_ = DiscountKind::Hybrid;
    d.a_ = lambda;
    d.depth_ = depth;
    d.d1_ = std::make_shared<const Discount>(std::move(d1));
    d.d2_ = std::make_shared<const Discount>(std::move(d2));
    return d;
}

const Eta& Discount::eta() const {
    if (!eta_) throw InvalidArgument("discount has no eta (not scale-dependent)");
    return *eta_;
}

const Discount& Discount::first() const {
    if (!d1_) throw InvalidArgument("discount has no components");
    return *d1_;
}

const Discount& Discount::second() const {
    if (!d2_) throw InvalidArgument("discount has no second component");
    return *d2_;
}

bool Discount::needs_reward() const {
    switch (kind_) {
    case DiscountKind::ScaleDependent: return true;
    case DiscountKind::Hybrid: return d1_->needs_reward() || d2_->needs_reward();
    default: return false;
    }
}

bool Discount::needs_state() const {
    switch (kind_) {
    case DiscountKind::StateDependent: return true;
    case DiscountKind::ScaleDependent: return d1_->needs_state();
    case DiscountKind::Hybrid: return d1_->needs_state() || d2_->needs_state();
    default: return false;
    }
}

double Discount::factor(double t, std::optional<double> reward, std::optional<std::string_view> state,
                        FactorRounding rounding) const {
    if (!(std::isfinite(t) && t >= 0.0)) throw DomainError("discount time must be finite and >= 0, got " + fmt_num(t));
    const bool rnd = rounding == FactorRounding::TwoDecimals;

    double f = 1.0;
    switch (kind_) {
    case DiscountKind::Exponential:
        f = std::exp(-a_ * t);
        break;
    case DiscountKind::Hyperbolic:
        f = 1.0 / (1.0 + a_ * t);
        break;
    case DiscountKind::QuasiHyperbolic:
        f = t == 0.0 ? 1.0 : a_ * std::pow(b_, t);
        break;
    case DiscountKind::GeneralizedHyperbolic:
        f = std::pow(1.0 + a_ * t, -b_);
        break;
    case DiscountKind::ScaleDependent: {
        if (!reward) throw MissingArgument("scale-dependent discount needs the reward amount");
        const double exponent = (*eta_)(*reward);
        f = std::pow(d1_->factor(t, reward, state, FactorRounding::Exact), exponent);
        break;
    }
    case DiscountKind::StateDependent: {
        if (!state) throw MissingArgument("state-dependent discount needs a state label");
        auto it = rates_.find(std::string(*state));
        if (it == rates_.end()) throw UnknownState("state '" + std::string(*state) + "' has no discount rate");
        f = std::exp(-it->second * t);
        break;
    }
    case DiscountKind::Hybrid:
        // Components carry their own rounding.
        return a_ * d1_->factor(t, reward, state, rounding) + (1.0 - a_) * d2_->factor(t, reward, state, rounding);
    }
    return rnd ? round2(f) : f;
}

std::string Discount::describe() const {
    switch (kind_) {
    case DiscountKind::Exponential: return "exponential(r=" + fmt_num(a_) + ")";
    case DiscountKind::Hyperbolic: return "hyperbolic(k=" + fmt_num(a_) + ")";
    case DiscountKind::QuasiHyperbolic: return "quasi_hyperbolic(beta=" + fmt_num(a_) + ", delta=" + fmt_num(b_) + ")";
    case DiscountKind::GeneralizedHyperbolic:
        return "generalized_hyperbolic(k=" + fmt_num(a_) + ", p=" + fmt_num(b_) + ")";
    case DiscountKind::ScaleDependent: return "scale_dependent(" + d1_->describe() + ", " + eta_->describe() + ")";
    case DiscountKind::StateDependent: {
        std::string s = "state_dependent(";
        bool first = true;
        for (const auto& [label, r] : rates_) {
            s += (first ? "" : ", ") + label + "=" + fmt_num(r);
            first = false;
        }
        return s + ")";
    }
    case DiscountKind::Hybrid:
        return "hybrid(lambda=" + fmt_num(a_) + ", " + d1_->describe() + ", " + d2_->describe() + ")";
    }
    return "?";
}

bool operator==(const Discount& a, const Discount& b) {
    if (a.kind_ != b.kind_ || a.a_ != b.a_ || a.b_ != b.b_ || a.rates_ != b.rates_) return false;
    if (static_cast<bool>(a.eta_) != static_cast<bool>(b.eta_)) return false;
    if (a.eta_ && !(*a.eta_ == *b.eta_)) return false;
    if (static_cast<bool>(a.d1_) != static_cast<bool>(b.d1_)) return false;
    if (a.d1_ && !(*a.d1_ == *b.d1_)) return false;
    if (static_cast<bool>(a.d2_) != static_cast<bool>(b.d2_)) return false;
    if (a.d2_ && !(*a.d2_ == *b.d2_)) return false;
    return true;
}

// ---------------------------------------------------------------------------

ConstraintReport check_scale_monotonicity(const Discount& d, const std::vector<double>& t_grid,
                                          const std::vector<double>& x_grid,
                                          std::optional<std::string_view> state) {
    if (d.kind() != DiscountKind::ScaleDependent)
        throw InvalidArgument("scale monotonicity check needs a scale-dependent discount");
    if (t_grid.empty() || x_grid.empty()) throw InvalidArgument("scale monotonicity check needs non-empty grids");

    const Eta& eta = d.eta();
    const Interval dom = eta.domain();
    for (double x : x_grid)
        if (!dom.contains(x)) throw DomainError("reward " + fmt_num(x) + " is outside the eta domain");

    ConstraintReport report;
    for (double t : t_grid) {
        for (double x : x_grid) {
            const double log_base_factor = std::log(d.first().factor(t, x, state));
            const double value = 1.0 + eta.derivative(x) * x * log_base_factor;
            ++report.points_checked;
            if (!(value > 0.0)) report.violations.push_back({t, x, value});
        }
    }
    report.pass = report.violations.empty();
    return report;
}

} // namespace fcg
