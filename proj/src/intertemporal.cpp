#include "fcg/intertemporal.hpp"

#include "fcg/errors.hpp"
#include "fcg/format.hpp"
#include "fcg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fcg {

PaymentSchedule::PaymentSchedule(std::string label, std::vector<DatedPayment> payments)
    : label_(std::move(label)), payments_(std::move(payments)) {
    if (payments_.empty()) throw InvalidArgument("schedule '" + label_ + "' has no payments");
    for (std::size_t i = 0; i < payments_.size(); ++i) {
        const auto& p = payments_[i];
        if (!std::isfinite(p.amount))
            throw InvalidArgument("schedule '" + label_ + "' payment #" + std::to_string(i) + " has a non-finite amount");
        if (!(std::isfinite(p.time) && p.time >= 0.0))
            throw InvalidArgument("schedule '" + label_ + "' payment #" + std::to_string(i) + " needs time >= 0");
    }
}

bool PaymentSchedule::has_states() const {
    return std::any_of(payments_.begin(), payments_.end(), [](const DatedPayment& p) { return p.state.has_value(); });
}

PaymentSchedule PaymentSchedule::shifted(double delta) const {
    if (!(std::isfinite(delta) && delta >= 0.0)) throw InvalidArgument("schedule shift must be >= 0");
    auto moved = payments_;
    for (auto& p : moved) p.time += delta;
    return PaymentSchedule(label_, std::move(moved));
}

const char* to_string(Preference p) noexcept {
    switch (p) {
    case Preference::A: return "A";
    case Preference::B: return "B";
    case Preference::Indifferent: return "indifferent";
    }
    return "?";
}

double effective_utility(const Utility& u, const Discount& d, double x, double t,
                         std::optional<std::string_view> state, FactorRounding rounding) {
    const std::optional<double> reward = d.needs_reward() ? std::optional<double>(x) : std::nullopt;
    return u.eval(d.factor(t, reward, state, rounding) * x);
}

double schedule_value(const Utility& u, const Discount& d, const PaymentSchedule& schedule, FactorRounding rounding) {
    const auto& pays = schedule.payments();
    std::vector<std::size_t> order(pays.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const auto& a = pays[i];
        const auto& b = pays[j];
        if (a.time != b.time) return a.time < b.time;
        if (a.amount != b.amount) return a.amount < b.amount;
        return a.state < b.state;
    });

    double total = 0.0;
    for (std::size_t i : order) {
        const auto& p = pays[i];
        const std::optional<std::string_view> state =
            p.state ? std::optional<std::string_view>(*p.state) : std::nullopt;
        try {
            total += effective_utility(u, d, p.amount, p.time, state, rounding);
        } catch (const Error& e) {
            const std::string where = "schedule '" + schedule.label() + "' payment #" + std::to_string(i) +
                                      " (amount=" + format_g(p.amount, 10) + ", t=" + format_g(p.time, 10) + "): ";
            if (dynamic_cast<const DomainError*>(&e)) throw DomainError(where + e.what());
            if (dynamic_cast<const MissingArgument*>(&e)) throw MissingArgument(where + e.what());
            if (dynamic_cast<const UnknownState*>(&e)) throw UnknownState(where + e.what());
            throw;
        }
    }
    return total;
}

namespace {

Preference decide(double va, double vb, double tol) {
    if (va > vb + tol) return Preference::A;
    if (vb > va + tol) return Preference::B;
    return Preference::Indifferent;
}

bool opposite(Preference a, Preference b) {
    return (a == Preference::A && b == Preference::B) || (a == Preference::B && b == Preference::A);
}

} // namespace

Preference compare(const Utility& u, const Discount& d, const PaymentSchedule& a, const PaymentSchedule& b,
                   double tol, FactorRounding rounding) {
    if (!(tol >= 0.0)) throw InvalidArgument("indifference tolerance must be >= 0");
    return decide(schedule_value(u, d, a, rounding), schedule_value(u, d, b, rounding), tol);
}

ScanResult reversal_scan(const Utility& u, const Discount& d, const PaymentSchedule& a0, const PaymentSchedule& b0,
                         std::vector<double> shifts, double tol, FactorRounding rounding, Exec exec) {
    if (!(tol >= 0.0)) throw InvalidArgument("indifference tolerance must be >= 0");
    for (double s : shifts)
        if (!(std::isfinite(s) && s >= 0.0)) throw InvalidArgument("scan shifts must be finite and >= 0");
    std::stable_sort(shifts.begin(), shifts.end());

    ScanResult result;
    result.baseline = compare(u, d, a0, b0, tol, rounding);

    const auto values = kernels::scan_values(u, d, a0, b0, shifts, rounding, exec);
    result.rows.reserve(shifts.size());
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        ScanRow row{shifts[i], values[i].first, values[i].second, decide(values[i].first, values[i].second, tol)};
        if (!result.first_flip && opposite(result.baseline, row.preference)) result.first_flip = row.delta;
        result.rows.push_back(row);
    }
    return result;
}

} // namespace fcg
